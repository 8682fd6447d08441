#include "epsdelta/format.hpp"

#include <charconv>

namespace epsdelta {

std::string render_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace epsdelta
