#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hhc/convexity.hpp"
#include "hhc/expr.hpp"
#include "hhc/kernels.hpp"

namespace hhc {

// Midpoint-type rules (T1, T2, C1, T3, C2) bound |f((a+b)/2) - mean(f)| via
// |f'|; trapezoid-type rules (T4, T5, C3, T6, C4) bound
// |(f(a)+f(b))/2 - mean(f)| via |f''|.
enum class Rule { T1, T2, C1, T3, C2, T4, T5, C3, T6, C4 };

std::string to_string(Rule rule);
Rule rule_from_string(const std::string& name);
bool is_holder_rule(Rule rule);
bool is_first_derivative_rule(Rule rule);
inline constexpr Rule kAllRules[] = {Rule::T1, Rule::T2, Rule::C1, Rule::T3, Rule::C2,
                                     Rule::T4, Rule::T5, Rule::C3, Rule::T6, Rule::C4};

// T1 can be evaluated exactly as stated, or in the sharper form that falls
// out of the intermediate estimate before the final regrouping.
enum class T1Variant { printed, derived_tight };

struct BoundInstance {
  Rule rule = Rule::T1;
  Expression f;
  double a = 0.0;
  double b = 1.0;
  ConvexityClass cls = ConvexityClass::make(Sense::h_alpha_m);
  std::optional<HolderPair> hp;
  T1Variant t1_variant = T1Variant::printed;

  // a < b, hp present iff the rule is a Hölder rule.
  void validate() const;
};

enum class HypothesisStatus { declared, verified, unverified };

std::string to_string(HypothesisStatus s);

using Components = std::vector<std::pair<std::string, double>>;

struct BoundReport {
  Rule rule = Rule::T1;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = false;
  Components components;
  std::string parameters;
  HypothesisStatus hypothesis = HypothesisStatus::declared;
  std::optional<MembershipReport> membership;
  std::vector<std::string> notes;

  // Named component value; throws if absent.
  double component(const std::string& name) const;
};

struct HHChain {
  double left;   // f((a+b)/2)
  double mid;    // mean of f over [a, b]
  double right;  // (f(a)+f(b))/2
};

HHChain hh_chain(const Expression& f, double a, double b);

// |LHS - RHS| of the midpoint identity
//   f((a+b)/2) - mean(f) = (b-a)/4 int_0^1 (1-t)[f'(ta+(1-t)c) - f'(tb+(1-t)c)] dt,  c = (a+b)/2.
double lemma1_residual(const Expression& f, double a, double b);
// |LHS - RHS| of the trapezoid identity
//   (f(a)+f(b))/2 - mean(f) = (b-a)^2/2 int_0^1 t(1-t) f''(ta+(1-t)b) dt.
double lemma2_residual(const Expression& f, double a, double b);

double midpoint_deviation(const Expression& f, double a, double b);
double trapezoid_deviation(const Expression& f, double a, double b);

BoundReport bound_first_derivative(const BoundInstance& inst, double tol = 1e-9);
BoundReport bound_second_derivative(const BoundInstance& inst, double tol = 1e-9);
// Dispatches on the rule family.
BoundReport evaluate_bound(const BoundInstance& inst, double tol = 1e-9);

// The function whose membership the rule assumes: |f'|, |f'|^q, |f''| or |f''|^q.
Expression hypothesis_function(const BoundInstance& inst);

// Domain on which the hypothesis is checked: [a, b] when m = 1, otherwise
// [min(0, a), max(b, (a+b)/(2m), b/m)].
DomainInterval hypothesis_domain(const BoundInstance& inst);

struct VerifyOptions {
  double tol = 1e-9;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
};

// Membership check of the hypothesis function, then the bound.
BoundReport verify(const BoundInstance& inst, const VerifyOptions& opts = {});

}  // namespace hhc
