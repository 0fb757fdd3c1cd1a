#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "hhc/error.hpp"

namespace hhc {

enum class Op { constant, variable, add, sub, mul, div, pow, neg, exp, ln, abs };

// Immutable expression tree in one real variable. Copies share structure.
class Expression {
 public:
  struct Node;

  // The constant 0.
  Expression();

  static Expression constant(double value);
  static Expression variable();

  Op op() const noexcept;
  // Only meaningful for Op::constant.
  double value() const noexcept;
  // Operands; `right()` is only valid for binary nodes.
  Expression left() const;
  Expression right() const;

  bool is_constant() const noexcept { return op() == Op::constant; }

  // Throws DomainError outside the natural domain. Never returns NaN or inf.
  double operator()(double x) const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Expression make_node(Op op, double value, const Expression& a, const Expression& b);

  std::shared_ptr<const Node> node_;
};

struct Expression::Node {
  Op op = Op::constant;
  double value = 0.0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

// Builders. All of them fold constant subtrees whose value is finite and
// in-domain; nothing else is simplified.
Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);
Expression operator-(const Expression& a);
Expression pow(const Expression& base, const Expression& exponent);
Expression exp(const Expression& a);
Expression ln(const Expression& a);
Expression abs(const Expression& a);

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' factor)?
//   base   := number | VAR | '(' expr ')' | func '(' expr ')'
//   func   := 'exp' | 'ln' | 'abs'
// `variable` names the free variable (usually "x"; "t" for weight functions).
Expression parse(std::string_view text, std::string_view variable = "x");

// Fully parenthesised; parse(to_string(e)) == e.
std::string to_string(const Expression& e, std::string_view variable = "x");

double evaluate(const Expression& e, double x);

// Exact symbolic derivative of order 1 or 2. The derivative of abs(u) is
// (u/abs(u))*u', so evaluating it at a kink raises a DomainError.
Expression differentiate(const Expression& e, int order = 1);

}  // namespace hhc
