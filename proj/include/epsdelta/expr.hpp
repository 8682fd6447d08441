#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "epsdelta/errors.hpp"

namespace epsdelta::expr {

enum class UnaryOp { neg, exp, ln, sin, cos, abs, sqrt };
enum class BinaryOp { add, sub, mul, div, pow };

struct Node {
  enum class Kind { constant, variable, unary, binary };

  Kind kind;
  double value = 0.0;  // constant
  UnaryOp uop = UnaryOp::neg;
  BinaryOp bop = BinaryOp::add;
  std::unique_ptr<Node> lhs;  // unary operand lives here
  std::unique_ptr<Node> rhs;
  std::size_t offset = 0;  // byte offset into the source text
};

/// Immutable after parse; cheap to copy and safe to evaluate concurrently.
struct Expression {
  std::shared_ptr<const Node> root;
  std::string source_text;
  std::string variable;  // the single free variable symbol (conventionally "y")
};

/// Parse an infix expression over +, -, *, /, ^ (right-assoc), unary minus
/// and the functions exp, ln, sin, cos, abs, sqrt. Exactly one free
/// variable symbol must appear. Throws Error{parse} with a byte offset.
Expression parse(std::string_view source);

/// IEEE binary64 evaluation. Throws Error{domain} naming the offending
/// node's offset for ln of nonpositive, division by zero, sqrt of negative,
/// invalid powers, or any non-finite intermediate.
double evaluate(const Expression& e, double y);

/// Central finite difference of the given order (1 or 2).
double differentiate_numeric(const Expression& e, double y, int order);

/// Minimal-parenthesis rendering; parse(to_string(e)) reproduces the AST.
std::string to_string(const Expression& e);

}  // namespace epsdelta::expr
