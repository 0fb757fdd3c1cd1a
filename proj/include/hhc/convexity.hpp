#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "hhc/expr.hpp"

namespace hhc {

// Interval on which an expression is (claimed to be) evaluated.
struct DomainInterval {
  double lo = 0.0;
  double hi = 1.0;
  bool open_lo = false;
  bool open_hi = false;

  DomainInterval() = default;
  DomainInterval(double lo_, double hi_, bool open_lo_ = false, bool open_hi_ = false);

  bool contains(double x) const noexcept;
  double width() const noexcept { return hi - lo; }
};

// Weight function h used by the h-convex families.
class HFunction {
 public:
  enum class Kind { identity, power, one, reciprocal, custom };

  static HFunction identity();
  // h(t) = t^s, s in (0, 1].
  static HFunction power(double s);
  static HFunction one();
  static HFunction reciprocal();
  // Custom h given as an expression in t; checked to be non-negative
  // and not identically zero on (0, 1).
  static HFunction custom(Expression h);
  // "t", "1", "1/t", "t^s" (power with the given s), "t^<number>" or "expr:<text in t>".
  static HFunction from_spec(const std::string& spec, double s = 1.0);

  Kind kind() const noexcept { return kind_; }
  double s() const noexcept { return s_; }
  const Expression& expression() const noexcept { return expr_; }

  // h(t); throws DomainError if the result is negative.
  double operator()(double t) const;

  std::string describe() const;

 private:
  HFunction(Kind kind, double s, Expression e) : kind_(kind), s_(s), expr_(std::move(e)) {}

  Kind kind_ = Kind::identity;
  double s_ = 1.0;
  Expression expr_;
};

// h(t)^alpha for t in (0, 1); alpha = 0 gives 1.
double evaluate_h(const HFunction& h, double t, double alpha);

enum class Sense {
  h_alpha_m,         // f(l x + m(1-l) y) <= h^a(l) f(x) + m(1 - h^a(l)) f(y)
  h_plain,           // f(u x + v y) <= h(u) f(x) + h(v) f(y), u + v = 1
  alpha_m,           // f(t x + m(1-t) y) <= t^a f(x) + m(1 - t^a) f(y)
  s_first,           // f(u x + v y) <= u^s f(x) + v^s f(y), u^s + v^s = 1
  s_second,          // same, u + v = 1
  s_alpha_m_first,   // f(u x + (1-u) y) <= u^(a s) f(x) + m(1 - u^(a s)) f(y/m)
  s_alpha_m_second,  // f(u x + (1-u) y) <= u^(a s) f(x) + m(1 - u^a)^s f(y/m)
  plain_convex,
};

std::string to_string(Sense sense);
Sense sense_from_string(const std::string& name);

struct ConvexityClass {
  HFunction h = HFunction::identity();
  double alpha = 1.0;
  double m = 1.0;
  double s = 1.0;
  Sense sense = Sense::plain_convex;

  // Parameters not used by `sense` are reset to 1 (h to identity).
  static ConvexityClass make(Sense sense, HFunction h = HFunction::identity(), double alpha = 1.0,
                             double m = 1.0, double s = 1.0);

  // Throws UsageError when (alpha, m, s) are out of range.
  void validate() const;
  std::string describe() const;
};

struct Witness {
  double x = 0.0;
  double y = 0.0;
  double lambda = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct MembershipReport {
  enum class Verdict { no_counterexample_found, counterexample };

  Verdict verdict = Verdict::no_counterexample_found;
  std::size_t samples_used = 0;
  std::optional<Witness> witness;
  std::uint64_t seed = 0;
  // Reading of the first-sense s-(alpha,m) exponent that was used.
  std::string exponent_reading;

  bool found_counterexample() const noexcept { return verdict == Verdict::counterexample; }
};

// Randomised falsification of "g belongs to cls on dom". A deterministic
// 21x21x9 grid over (x, y, lambda) runs first, then the closed-interval
// endpoints lambda in {0, 1} for senses that admit them, then `samples`
// seeded random triples. Stops at the first violation larger than
// tol * max(1, |rhs|).
//
// Throws PreconditionError if g is negative where the class requires a
// non-negative function, and DomainError if the m-scaled arguments leave
// `dom` or g cannot be evaluated.
MembershipReport check_membership(const Expression& g, const ConvexityClass& cls, const DomainInterval& dom,
                                  std::size_t samples = 1000, std::uint64_t seed = 42, double tol = 1e-9);

}  // namespace hhc
