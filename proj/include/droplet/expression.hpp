#pragma once

#include <memory>
#include <string>

namespace droplet {

// Scalar expression of one variable `x`: arithmetic (+ - * / and parentheses),
// numbers, `pi`, and the functions sin, cos, exp, abs, sqrt, step.
// step(z) = 1 for z >= 0, else 0, so step(a-x) switches at x = a.
class Expr {
 public:
  struct Node;  // expression tree node, defined in expression.cpp

  Expr() = default;

  // Throws InvalidParameterError with a character position on bad input.
  static Expr parse(const std::string& text);

  double operator()(double x) const;

  // True when the expression contains no reference to x.
  bool is_constant() const;

  bool empty() const { return !root_; }

  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace droplet
