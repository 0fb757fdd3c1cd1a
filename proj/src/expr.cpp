#include "hhc/expr.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>

namespace hhc {

namespace {

bool is_nonneg_integer(double v) { return v >= 0.0 && std::floor(v) == v; }

double checked(double r, const char* what) {
  if (!std::isfinite(r)) throw DomainError(std::string("non-finite result in ") + what);
  return r;
}

double apply_pow(double base, double e) {
  if (is_nonneg_integer(e)) return checked(std::pow(base, e), "power");
  if (base > 0.0) return checked(std::pow(base, e), "power");
  if (base == 0.0) {
    if (e > 0.0) return 0.0;
    throw DomainError("0 raised to a negative power");
  }
  throw DomainError("negative base requires a non-negative integer exponent");
}

double eval_node(const Expression::Node& n, double x) {
  switch (n.op) {
    case Op::constant:
      return n.value;
    case Op::variable:
      return x;
    case Op::add:
      return checked(eval_node(*n.a, x) + eval_node(*n.b, x), "addition");
    case Op::sub:
      return checked(eval_node(*n.a, x) - eval_node(*n.b, x), "subtraction");
    case Op::mul:
      return checked(eval_node(*n.a, x) * eval_node(*n.b, x), "multiplication");
    case Op::div: {
      const double num = eval_node(*n.a, x);
      const double den = eval_node(*n.b, x);
      if (den == 0.0) throw DomainError("division by zero");
      return checked(num / den, "division");
    }
    case Op::pow:
      return apply_pow(eval_node(*n.a, x), eval_node(*n.b, x));
    case Op::neg:
      return -eval_node(*n.a, x);
    case Op::exp:
      return checked(std::exp(eval_node(*n.a, x)), "exp");
    case Op::ln: {
      const double v = eval_node(*n.a, x);
      if (!(v > 0.0)) throw DomainError("ln of a non-positive value");
      return std::log(v);
    }
    case Op::abs:
      return std::fabs(eval_node(*n.a, x));
  }
  throw DomainError("corrupt expression node");
}

bool nodes_equal(const Expression::Node* a, const Expression::Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op) return false;
  if (a->op == Op::constant) return a->value == b->value;
  return nodes_equal(a->a.get(), b->a.get()) && nodes_equal(a->b.get(), b->b.get());
}

}  // namespace

Expression make_node(Op op, double value, const Expression& a, const Expression& b) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->value = value;
  const bool unary = op == Op::neg || op == Op::exp || op == Op::ln || op == Op::abs;
  const bool binary = op == Op::add || op == Op::sub || op == Op::mul || op == Op::div || op == Op::pow;
  if (unary || binary) n->a = a.node_;
  if (binary) n->b = b.node_;
  return Expression(std::move(n));
}

namespace {

// Folds when every operand is a constant and the value is finite.
Expression build(Op op, const Expression& a, const Expression& b = Expression::constant(0.0)) {
  Expression e = make_node(op, 0.0, a, b);
  const bool unary = op == Op::neg || op == Op::exp || op == Op::ln || op == Op::abs;
  if (a.is_constant() && (unary || b.is_constant())) {
    try {
      return Expression::constant(e(0.0));
    } catch (const DomainError&) {
      return e;
    }
  }
  return e;
}

}  // namespace

Expression::Expression() : node_(nullptr) {
  static const auto zero = [] {
    auto n = std::make_shared<Node>();
    n->op = Op::constant;
    n->value = 0.0;
    return std::shared_ptr<const Node>(std::move(n));
  }();
  node_ = zero;
}

Expression Expression::constant(double value) { return make_node(Op::constant, value, {}, {}); }
Expression Expression::variable() { return make_node(Op::variable, 0.0, {}, {}); }

Op Expression::op() const noexcept { return node_->op; }
double Expression::value() const noexcept { return node_->value; }

Expression Expression::left() const {
  if (!node_->a) throw Error("expression node has no operand");
  return Expression(node_->a);
}

Expression Expression::right() const {
  if (!node_->b) throw Error("expression node has no second operand");
  return Expression(node_->b);
}

double Expression::operator()(double x) const { return eval_node(*node_, x); }

bool operator==(const Expression& a, const Expression& b) { return nodes_equal(a.node_.get(), b.node_.get()); }

Expression operator+(const Expression& a, const Expression& b) { return build(Op::add, a, b); }
Expression operator-(const Expression& a, const Expression& b) { return build(Op::sub, a, b); }
Expression operator*(const Expression& a, const Expression& b) { return build(Op::mul, a, b); }
Expression operator/(const Expression& a, const Expression& b) { return build(Op::div, a, b); }
Expression operator-(const Expression& a) { return build(Op::neg, a); }
Expression pow(const Expression& base, const Expression& exponent) { return build(Op::pow, base, exponent); }
Expression exp(const Expression& a) { return build(Op::exp, a); }
Expression ln(const Expression& a) { return build(Op::ln, a); }
Expression abs(const Expression& a) { return build(Op::abs, a); }

double evaluate(const Expression& e, double x) { return e(x); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string_view variable) : text_(text), variable_(variable) {}

  Expression run() {
    Expression e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ParseError::Kind::syntax, pos_, what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expression expr() {
    Expression lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  Expression term() {
    Expression lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * factor();
      } else if (accept('/')) {
        lhs = lhs / factor();
      } else {
        return lhs;
      }
    }
  }

  Expression factor() {
    if (accept('-')) return -factor();
    Expression b = base();
    if (accept('^')) return pow(b, factor());
    return b;
  }

  Expression base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected an expression but reached end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Expression e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == variable_) return Expression::variable();
      if (name == "exp" || name == "ln" || name == "abs") {
        expect('(');
        Expression arg = expr();
        expect(')');
        if (name == "exp") return exp(arg);
        if (name == "ln") return ln(arg);
        return abs(arg);
      }
      throw ParseError(ParseError::Kind::unknown_identifier, start,
                       "unknown identifier '" + std::string(name) + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Expression number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return Expression::constant(v);
  }

  std::string_view text_;
  std::string_view variable_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void print(const Expression& e, std::string_view var, std::string& out) {
  auto bin = [&](const char* op) {
    out += '(';
    print(e.left(), var, out);
    out += op;
    print(e.right(), var, out);
    out += ')';
  };
  auto fn = [&](const char* name) {
    out += name;
    out += '(';
    print(e.left(), var, out);
    out += ')';
  };
  switch (e.op()) {
    case Op::constant:
      if (std::signbit(e.value())) {
        out += "(-" + format_number(-e.value()) + ")";
      } else {
        out += format_number(e.value());
      }
      return;
    case Op::variable:
      out += var;
      return;
    case Op::add: return bin(" + ");
    case Op::sub: return bin(" - ");
    case Op::mul: return bin("*");
    case Op::div: return bin("/");
    case Op::pow: return bin("^");
    case Op::neg:
      out += "(-";
      print(e.left(), var, out);
      out += ')';
      return;
    case Op::exp: return fn("exp");
    case Op::ln: return fn("ln");
    case Op::abs: return fn("abs");
  }
}

// Derivative builders that additionally drop exact zeros and ones.
bool is_value(const Expression& e, double v) { return e.is_constant() && e.value() == v; }

Expression d_add(const Expression& a, const Expression& b) {
  if (is_value(a, 0.0)) return b;
  if (is_value(b, 0.0)) return a;
  return a + b;
}

Expression d_sub(const Expression& a, const Expression& b) {
  if (is_value(b, 0.0)) return a;
  if (is_value(a, 0.0)) return -b;
  return a - b;
}

Expression d_mul(const Expression& a, const Expression& b) {
  if (is_value(a, 0.0) || is_value(b, 0.0)) return Expression::constant(0.0);
  if (is_value(a, 1.0)) return b;
  if (is_value(b, 1.0)) return a;
  return a * b;
}

Expression d_div(const Expression& a, const Expression& b) {
  if (is_value(a, 0.0)) return Expression::constant(0.0);
  if (is_value(b, 1.0)) return a;
  return a / b;
}

Expression d_pow(const Expression& base, double e) {
  if (e == 1.0) return base;
  return pow(base, Expression::constant(e));
}

Expression derive(const Expression& e) {
  const Expression zero = Expression::constant(0.0);
  switch (e.op()) {
    case Op::constant:
      return zero;
    case Op::variable:
      return Expression::constant(1.0);
    case Op::add:
      return d_add(derive(e.left()), derive(e.right()));
    case Op::sub:
      return d_sub(derive(e.left()), derive(e.right()));
    case Op::mul: {
      const Expression u = e.left(), v = e.right();
      return d_add(d_mul(derive(u), v), d_mul(u, derive(v)));
    }
    case Op::div: {
      const Expression u = e.left(), v = e.right();
      const Expression num = d_sub(d_mul(derive(u), v), d_mul(u, derive(v)));
      return d_div(num, d_pow(v, 2.0));
    }
    case Op::pow: {
      const Expression u = e.left(), v = e.right();
      if (v.is_constant()) {
        const double c = v.value();
        if (c == 0.0) return zero;
        return d_mul(d_mul(Expression::constant(c), d_pow(u, c - 1.0)), derive(u));
      }
      if (u.is_constant()) return d_mul(d_mul(e, ln(u)), derive(v));
      // u^v * (v' ln u + v u'/u)
      return d_mul(e, d_add(d_mul(derive(v), ln(u)), d_div(d_mul(v, derive(u)), u)));
    }
    case Op::neg: {
      const Expression d = derive(e.left());
      return is_value(d, 0.0) ? zero : -d;
    }
    case Op::exp:
      return d_mul(e, derive(e.left()));
    case Op::ln:
      return d_div(derive(e.left()), e.left());
    case Op::abs: {
      const Expression u = e.left();
      return d_mul(u / abs(u), derive(u));
    }
  }
  throw Error("unsupported node for differentiation");
}

}  // namespace

Expression parse(std::string_view text, std::string_view variable) { return Parser(text, variable).run(); }

std::string to_string(const Expression& e, std::string_view variable) {
  std::string out;
  print(e, variable, out);
  return out;
}

Expression differentiate(const Expression& e, int order) {
  if (order != 1 && order != 2) throw UsageError("derivative order must be 1 or 2");
  Expression d = derive(e);
  return order == 1 ? d : derive(d);
}

}  // namespace hhc
