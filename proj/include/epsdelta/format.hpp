#pragma once

#include <string>

namespace epsdelta {

/// Shortest decimal rendering that parses back to the identical binary64
/// value. Used everywhere a real number crosses an external interface so
/// CSV, JSON and CLI output encode identical numerics.
std::string render_double(double v);

}  // namespace epsdelta
