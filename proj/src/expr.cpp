#include "epsdelta/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "epsdelta/finite_diff.hpp"
#include "epsdelta/format.hpp"

namespace epsdelta::expr {

namespace {

using NodePtr = std::unique_ptr<Node>;

NodePtr make_constant(double v, std::size_t off) {
  auto n = std::make_unique<Node>();
  n->kind = Node::Kind::constant;
  n->value = v;
  n->offset = off;
  return n;
}

NodePtr make_variable(std::size_t off) {
  auto n = std::make_unique<Node>();
  n->kind = Node::Kind::variable;
  n->offset = off;
  return n;
}

NodePtr make_unary(UnaryOp op, NodePtr child, std::size_t off) {
  auto n = std::make_unique<Node>();
  n->kind = Node::Kind::unary;
  n->uop = op;
  n->lhs = std::move(child);
  n->offset = off;
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr l, NodePtr r, std::size_t off) {
  auto n = std::make_unique<Node>();
  n->kind = Node::Kind::binary;
  n->bop = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  n->offset = off;
  return n;
}

struct Token {
  enum class Kind { number, ident, op, lparen, rparen, end };
  Kind kind;
  double value = 0.0;
  std::string text;
  char op = 0;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
    current_ = Token{};
    current_.offset = pos_;
    if (pos_ >= src_.size()) {
      current_.kind = Token::Kind::end;
      return;
    }
    const char c = src_[pos_];
    if ((c >= '0' && c <= '9') || c == '.') {
      lex_number();
      return;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             ((src_[end] >= 'a' && src_[end] <= 'z') || (src_[end] >= 'A' && src_[end] <= 'Z') ||
              (src_[end] >= '0' && src_[end] <= '9') || src_[end] == '_'))
        ++end;
      current_.kind = Token::Kind::ident;
      current_.text = std::string(src_.substr(pos_, end - pos_));
      pos_ = end;
      return;
    }
    if (c == '(') {
      current_.kind = Token::Kind::lparen;
      ++pos_;
      return;
    }
    if (c == ')') {
      current_.kind = Token::Kind::rparen;
      ++pos_;
      return;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      current_.kind = Token::Kind::op;
      current_.op = c;
      ++pos_;
      return;
    }
    throw Error(ErrorKind::parse, "unexpected character '" + std::string(1, c) + "'", pos_);
  }

  void lex_number() {
    std::size_t end = pos_;
    while (end < src_.size() && src_[end] >= '0' && src_[end] <= '9') ++end;
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      while (end < src_.size() && src_[end] >= '0' && src_[end] <= '9') ++end;
    }
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t exp_end = end + 1;
      if (exp_end < src_.size() && (src_[exp_end] == '+' || src_[exp_end] == '-')) ++exp_end;
      std::size_t digits = exp_end;
      while (digits < src_.size() && src_[digits] >= '0' && src_[digits] <= '9') ++digits;
      if (digits > exp_end) end = digits;
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + pos_, src_.data() + end, v);
    if (res.ec != std::errc{} || res.ptr != src_.data() + end)
      throw Error(ErrorKind::parse, "malformed number", pos_);
    current_.kind = Token::Kind::number;
    current_.value = v;
    pos_ = end;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_;
};

bool function_name(const std::string& s, UnaryOp& op) {
  if (s == "exp") op = UnaryOp::exp;
  else if (s == "ln") op = UnaryOp::ln;
  else if (s == "sin") op = UnaryOp::sin;
  else if (s == "cos") op = UnaryOp::cos;
  else if (s == "abs") op = UnaryOp::abs;
  else if (s == "sqrt") op = UnaryOp::sqrt;
  else return false;
  return true;
}

// Grammar (precedence low to high): additive, multiplicative, unary minus,
// power (right-assoc, binds tighter than unary minus), primary.
class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src), size_(src.size()) {}

  NodePtr run() {
    NodePtr e = parse_additive();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::end)
      throw Error(ErrorKind::parse, "unexpected trailing input", t.offset);
    return e;
  }

  std::string variable;
  std::size_t variable_offset = 0;

 private:
  NodePtr parse_additive() {
    NodePtr lhs = parse_multiplicative();
    while (lex_.peek().kind == Token::Kind::op &&
           (lex_.peek().op == '+' || lex_.peek().op == '-')) {
      Token t = lex_.next();
      NodePtr rhs = parse_multiplicative();
      lhs = make_binary(t.op == '+' ? BinaryOp::add : BinaryOp::sub, std::move(lhs),
                        std::move(rhs), t.offset);
    }
    return lhs;
  }

  NodePtr parse_multiplicative() {
    NodePtr lhs = parse_unary();
    while (lex_.peek().kind == Token::Kind::op &&
           (lex_.peek().op == '*' || lex_.peek().op == '/')) {
      Token t = lex_.next();
      NodePtr rhs = parse_unary();
      lhs = make_binary(t.op == '*' ? BinaryOp::mul : BinaryOp::div, std::move(lhs),
                        std::move(rhs), t.offset);
    }
    return lhs;
  }

  NodePtr parse_unary() {
    if (lex_.peek().kind == Token::Kind::op && lex_.peek().op == '-') {
      Token t = lex_.next();
      return make_unary(UnaryOp::neg, parse_unary(), t.offset);
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (lex_.peek().kind == Token::Kind::op && lex_.peek().op == '^') {
      Token t = lex_.next();
      NodePtr exponent = parse_unary();  // allows y^-2; ^ is right-associative
      return make_binary(BinaryOp::pow, std::move(base), std::move(exponent), t.offset);
    }
    return base;
  }

  NodePtr parse_primary() {
    Token t = lex_.next();
    switch (t.kind) {
      case Token::Kind::number:
        return make_constant(t.value, t.offset);
      case Token::Kind::ident: {
        if (lex_.peek().kind == Token::Kind::lparen) {
          UnaryOp op;
          if (!function_name(t.text, op))
            throw Error(ErrorKind::parse, "unknown function '" + t.text + "'", t.offset);
          lex_.next();  // '('
          NodePtr arg = parse_additive();
          expect_rparen();
          return make_unary(op, std::move(arg), t.offset);
        }
        UnaryOp op;
        if (function_name(t.text, op))
          throw Error(ErrorKind::parse, "expected '(' after function '" + t.text + "'",
                      t.offset);
        if (variable.empty()) {
          variable = t.text;
          variable_offset = t.offset;
        } else if (variable != t.text) {
          throw Error(ErrorKind::parse,
                      "multiple free variables: '" + variable + "' and '" + t.text + "'",
                      t.offset);
        }
        return make_variable(t.offset);
      }
      case Token::Kind::lparen: {
        NodePtr e = parse_additive();
        expect_rparen();
        return e;
      }
      case Token::Kind::end:
        throw Error(ErrorKind::parse, "unexpected end of expression", size_);
      default:
        throw Error(ErrorKind::parse, "unexpected token", t.offset);
    }
  }

  void expect_rparen() {
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::rparen)
      throw Error(ErrorKind::parse, "expected ')'",
                  t.kind == Token::Kind::end ? size_ : t.offset);
    lex_.next();
  }

  Lexer lex_;
  std::size_t size_;
};

[[noreturn]] void domain_error(const Node& n, const std::string& what) {
  throw Error(ErrorKind::domain, what, n.offset);
}

double eval_node(const Node& n, double y) {
  switch (n.kind) {
    case Node::Kind::constant:
      return n.value;
    case Node::Kind::variable:
      return y;
    case Node::Kind::unary: {
      const double v = eval_node(*n.lhs, y);
      double r = 0.0;
      switch (n.uop) {
        case UnaryOp::neg: r = -v; break;
        case UnaryOp::exp: r = std::exp(v); break;
        case UnaryOp::ln:
          if (v <= 0.0) domain_error(n, "ln of nonpositive value");
          r = std::log(v);
          break;
        case UnaryOp::sin: r = std::sin(v); break;
        case UnaryOp::cos: r = std::cos(v); break;
        case UnaryOp::abs: r = std::abs(v); break;
        case UnaryOp::sqrt:
          if (v < 0.0) domain_error(n, "sqrt of negative value");
          r = std::sqrt(v);
          break;
      }
      if (!std::isfinite(r)) domain_error(n, "non-finite result");
      return r;
    }
    case Node::Kind::binary: {
      const double l = eval_node(*n.lhs, y);
      const double r = eval_node(*n.rhs, y);
      double v = 0.0;
      switch (n.bop) {
        case BinaryOp::add: v = l + r; break;
        case BinaryOp::sub: v = l - r; break;
        case BinaryOp::mul: v = l * r; break;
        case BinaryOp::div:
          if (r == 0.0) domain_error(n, "division by zero");
          v = l / r;
          break;
        case BinaryOp::pow:
          if (l < 0.0 && r != std::floor(r)) domain_error(n, "negative base with non-integer exponent");
          if (l == 0.0 && r < 0.0) domain_error(n, "zero base with negative exponent");
          v = std::pow(l, r);
          break;
      }
      if (!std::isfinite(v)) domain_error(n, "non-finite result");
      return v;
    }
  }
  domain_error(n, "corrupt expression node");
}

int precedence(const Node& n) {
  if (n.kind == Node::Kind::constant || n.kind == Node::Kind::variable) return 5;
  if (n.kind == Node::Kind::unary) return n.uop == UnaryOp::neg ? 3 : 5;
  switch (n.bop) {
    case BinaryOp::add:
    case BinaryOp::sub: return 1;
    case BinaryOp::mul:
    case BinaryOp::div: return 2;
    case BinaryOp::pow: return 4;
  }
  return 5;
}

const char* function_spelling(UnaryOp op) {
  switch (op) {
    case UnaryOp::exp: return "exp";
    case UnaryOp::ln: return "ln";
    case UnaryOp::sin: return "sin";
    case UnaryOp::cos: return "cos";
    case UnaryOp::abs: return "abs";
    case UnaryOp::sqrt: return "sqrt";
    case UnaryOp::neg: break;
  }
  return "";
}

void print_node(const Node& n, const std::string& var, std::string& out) {
  auto child = [&](const Node& c, bool parens) {
    if (parens) out += '(';
    print_node(c, var, out);
    if (parens) out += ')';
  };
  switch (n.kind) {
    case Node::Kind::constant:
      out += render_double(n.value);
      return;
    case Node::Kind::variable:
      out += var;
      return;
    case Node::Kind::unary:
      if (n.uop == UnaryOp::neg) {
        out += '-';
        child(*n.lhs, precedence(*n.lhs) < 3);
      } else {
        out += function_spelling(n.uop);
        out += '(';
        print_node(*n.lhs, var, out);
        out += ')';
      }
      return;
    case Node::Kind::binary: {
      const int p = precedence(n);
      const char* sym = n.bop == BinaryOp::add   ? "+"
                        : n.bop == BinaryOp::sub ? "-"
                        : n.bop == BinaryOp::mul ? "*"
                        : n.bop == BinaryOp::div ? "/"
                                                 : "^";
      if (n.bop == BinaryOp::pow) {
        // right-associative: parenthesize an lhs of equal precedence
        child(*n.lhs, precedence(*n.lhs) <= p);
        out += sym;
        child(*n.rhs, precedence(*n.rhs) < p);
      } else {
        child(*n.lhs, precedence(*n.lhs) < p);
        out += sym;
        child(*n.rhs, precedence(*n.rhs) <= p);
      }
      return;
    }
  }
}

}  // namespace

Expression parse(std::string_view source) {
  Parser parser(source);
  NodePtr root = parser.run();
  if (parser.variable.empty())
    throw Error(ErrorKind::parse, "expression contains no free variable", 0);
  Expression e;
  e.root = std::shared_ptr<const Node>(root.release());
  e.source_text = std::string(source);
  e.variable = parser.variable;
  return e;
}

double evaluate(const Expression& e, double y) {
  return eval_node(*e.root, y);
}

double differentiate_numeric(const Expression& e, double y, int order) {
  auto f = [&e](double t) { return evaluate(e, t); };
  if (order == 1) return fd::central_first(f, y);
  if (order == 2) return fd::central_second(f, y);
  throw Error(ErrorKind::config, "derivative order must be 1 or 2");
}

std::string to_string(const Expression& e) {
  std::string out;
  print_node(*e.root, e.variable, out);
  return out;
}

}  // namespace epsdelta::expr
