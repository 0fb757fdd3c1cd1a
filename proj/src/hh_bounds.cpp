#include "hhc/hh_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hhc {

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::T1: return "T1";
    case Rule::T2: return "T2";
    case Rule::C1: return "C1";
    case Rule::T3: return "T3";
    case Rule::C2: return "C2";
    case Rule::T4: return "T4";
    case Rule::T5: return "T5";
    case Rule::C3: return "C3";
    case Rule::T6: return "T6";
    case Rule::C4: return "C4";
  }
  return "?";
}

Rule rule_from_string(const std::string& name) {
  for (Rule r : kAllRules) {
    if (to_string(r) == name) return r;
  }
  throw UsageError("unknown rule '" + name + "'");
}

bool is_holder_rule(Rule rule) { return rule != Rule::T1 && rule != Rule::T4; }

bool is_first_derivative_rule(Rule rule) {
  return rule == Rule::T1 || rule == Rule::T2 || rule == Rule::C1 || rule == Rule::T3 || rule == Rule::C2;
}

std::string to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::declared: return "declared";
    case HypothesisStatus::verified: return "verified";
    case HypothesisStatus::unverified: return "unverified";
  }
  return "?";
}

void BoundInstance::validate() const {
  if (!(a < b)) throw UsageError("bound instance requires a < b");
  cls.validate();
  if (is_holder_rule(rule) && !hp) throw UsageError("rule " + to_string(rule) + " requires a Hölder exponent p > 1");
  if (!is_holder_rule(rule) && hp) throw UsageError("rule " + to_string(rule) + " takes no Hölder exponent");
}

double BoundReport::component(const std::string& name) const {
  for (const auto& [k, v] : components) {
    if (k == name) return v;
  }
  throw Error("bound report has no component '" + name + "'");
}

// ---------------------------------------------------------------------------
// Deviations and identities

namespace {

constexpr double kReferenceTol = 1e-12;

double mean_value(const Expression& f, double a, double b) {
  if (!(a < b)) throw UsageError("interval requires a < b");
  return reference_integral(f, a, b, kReferenceTol) / (b - a);
}

std::string describe_parameters(const BoundInstance& inst) {
  std::ostringstream os;
  os.precision(17);
  os << "a=" << inst.a << ";b=" << inst.b << ";h=" << inst.cls.h.describe() << ";alpha=" << inst.cls.alpha
     << ";m=" << inst.cls.m;
  if (inst.hp) os << ";p=" << inst.hp->p();
  if (inst.rule == Rule::T1 && inst.t1_variant == T1Variant::derived_tight) os << ";variant=derived_tight";
  return os.str();
}

double root(double base, double q, const char* where) {
  if (base < 0.0) {
    if (base > -1e-15) return 0.0;
    throw DomainError(std::string("negative bracket under the 1/q root in ") + where);
  }
  return std::pow(base, 1.0 / q);
}

BoundReport finish(const BoundInstance& inst, double lhs, double rhs, Components comps, double tol) {
  BoundReport r;
  r.rule = inst.rule;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.holds = r.margin >= -tol;
  r.components = std::move(comps);
  r.parameters = describe_parameters(inst);
  return r;
}

}  // namespace

HHChain hh_chain(const Expression& f, double a, double b) {
  return HHChain{f(0.5 * (a + b)), mean_value(f, a, b), 0.5 * (f(a) + f(b))};
}

double lemma1_residual(const Expression& f, double a, double b) {
  const Expression df = differentiate(f, 1);
  const double c = 0.5 * (a + b);
  const double lhs = f(c) - mean_value(f, a, b);
  const double integral = reference_integral(
      [&](double t) { return (1.0 - t) * (df(t * a + (1.0 - t) * c) - df(t * b + (1.0 - t) * c)); }, 0.0, 1.0,
      kReferenceTol);
  return std::fabs(lhs - 0.25 * (b - a) * integral);
}

double lemma2_residual(const Expression& f, double a, double b) {
  const Expression d2f = differentiate(f, 2);
  const double lhs = 0.5 * (f(a) + f(b)) - mean_value(f, a, b);
  const double integral =
      reference_integral([&](double t) { return t * (1.0 - t) * d2f(t * a + (1.0 - t) * b); }, 0.0, 1.0,
                         kReferenceTol);
  return std::fabs(lhs - 0.5 * (b - a) * (b - a) * integral);
}

double midpoint_deviation(const Expression& f, double a, double b) {
  return std::fabs(f(0.5 * (a + b)) - mean_value(f, a, b));
}

double trapezoid_deviation(const Expression& f, double a, double b) {
  return std::fabs(0.5 * (f(a) + f(b)) - mean_value(f, a, b));
}

// ---------------------------------------------------------------------------
// Bounds

BoundReport bound_first_derivative(const BoundInstance& inst, double tol) {
  inst.validate();
  if (!is_first_derivative_rule(inst.rule)) throw UsageError("rule " + to_string(inst.rule) + " is not a midpoint rule");
  const Expression df = differentiate(inst.f, 1);
  const double a = inst.a, b = inst.b, m = inst.cls.m, alpha = inst.cls.alpha;
  const HFunction& h = inst.cls.h;
  const double len = b - a;
  const double fa = std::fabs(df(a));
  const double fb = std::fabs(df(b));
  const double fc = std::fabs(df((a + b) / (2.0 * m)));

  Components comps = {{"b-a", len}, {"m", m}, {"|f'(a)|", fa}, {"|f'(b)|", fb}, {"|f'((a+b)/(2m))|", fc}};
  double rhs = 0.0;
  switch (inst.rule) {
    case Rule::T1: {
      const double m1 = kernel_moment(MomentKind::M1, h, alpha).value;
      comps.emplace_back("M1", m1);
      if (inst.t1_variant == T1Variant::printed) {
        rhs = len / 4.0 * ((fa + fb + 2.0 * m * fc) * m1 + m / 2.0 * fc);
      } else {
        rhs = len / 4.0 * ((fa + fb - 2.0 * m * fc) * m1 + m * fc);
      }
      break;
    }
    case Rule::T2: {
      const double p = inst.hp->p(), q = inst.hp->q();
      const double m0 = kernel_moment(MomentKind::M0, h, alpha).value;
      const double pref = len / (4.0 * std::pow(p + 1.0, 1.0 / p));
      const double cq = std::pow(fc, q);
      const double left = root((std::pow(fa, q) - m * cq) * m0 + m * cq, q, "T2");
      const double right = root((std::pow(fb, q) - m * cq) * m0 + m * cq, q, "T2");
      comps.insert(comps.end(), {{"p", p}, {"q", q}, {"M0", m0}, {"prefactor", pref}});
      rhs = pref * (left + right);
      break;
    }
    case Rule::C1: {
      const double p = inst.hp->p(), q = inst.hp->q();
      const double m0q = kernel_moment(MomentKind::M0, h, alpha / q).value;
      const double pref = len / (4.0 * std::pow(p + 1.0, 1.0 / p));
      comps.insert(comps.end(), {{"p", p}, {"q", q}, {"M0(alpha/q)", m0q}, {"prefactor", pref}});
      rhs = pref * ((fa + fb - 2.0 * m * fc) * m0q + 2.0 * m * fc);
      break;
    }
    case Rule::T3: {
      const double p = inst.hp->p(), q = inst.hp->q();
      const double m1 = kernel_moment(MomentKind::M1, h, alpha).value;
      const double pref = len / std::pow(2.0, (2.0 * p + 1.0) / p);
      const double cq = std::pow(fc, q);
      const double left = root((std::pow(fa, q) - m * cq) * m1 + m / 2.0 * cq, q, "T3");
      const double right = root((std::pow(fb, q) - m * cq) * m1 + m / 2.0 * cq, q, "T3");
      comps.insert(comps.end(), {{"p", p}, {"q", q}, {"M1", m1}, {"prefactor", pref}});
      rhs = pref * (left + right);
      break;
    }
    case Rule::C2: {
      const double p = inst.hp->p(), q = inst.hp->q();
      const double c2 = kernel_moment(MomentKind::C2, h, alpha, inst.hp).value;
      const double pref = len / std::pow(2.0, (2.0 * p + 1.0) / p);
      comps.insert(comps.end(), {{"p", p}, {"q", q}, {"C2", c2}, {"prefactor", pref}});
      rhs = pref * ((fa + fb - 2.0 * m * fc) * c2 + m * fc);
      break;
    }
    default:
      break;
  }
  return finish(inst, midpoint_deviation(inst.f, a, b), rhs, std::move(comps), tol);
}

BoundReport bound_second_derivative(const BoundInstance& inst, double tol) {
  inst.validate();
  if (is_first_derivative_rule(inst.rule)) throw UsageError("rule " + to_string(inst.rule) + " is not a trapezoid rule");
  const Expression d2f = differentiate(inst.f, 2);
  const double a = inst.a, b = inst.b, m = inst.cls.m, alpha = inst.cls.alpha;
  const HFunction& h = inst.cls.h;
  const double len = b - a;
  const double fa = std::fabs(d2f(a));
  const double fd = std::fabs(d2f(b / m));

  Components comps = {{"b-a", len}, {"m", m}, {"|f''(a)|", fa}, {"|f''(b/m)|", fd}};
  double rhs = 0.0;
  switch (inst.rule) {
    case Rule::T4: {
      const double m2 = kernel_moment(MomentKind::M2, h, alpha).value;
      comps.emplace_back("M2", m2);
      rhs = len * len / 2.0 * ((fa - m * fd) * m2 + m / 6.0 * fd);
      break;
    }
    case Rule::T5: {
      const double p = inst.hp->p(), q = inst.hp->q();
      const double m0 = kernel_moment(MomentKind::M0, h, alpha).value;
      const double bp = std::pow(beta(p + 1.0, p + 1.0), 1.0 / p);
      const double dq = std::pow(fd, q);
      comps.insert(comps.end(), {{"p", p}, {"q", q}, {"M0", m0}, {"beta(p+1,p+1)^(1/p)", bp}});
      rhs = len * len / 2.0 * bp * root((std::pow(fa, q) - m * dq) * m0 + m * dq, q, "T5");
      break;
    }
    case Rule::C3: {
      const double p = inst.hp->p(), q = inst.hp->q();
      const double m0q = kernel_moment(MomentKind::M0, h, alpha / q).value;
      const double bp = std::pow(beta(p + 1.0, p + 1.0), 1.0 / p);
      comps.insert(comps.end(), {{"p", p}, {"q", q}, {"M0(alpha/q)", m0q}, {"beta(p+1,p+1)^(1/p)", bp}});
      rhs = len * len / 2.0 * bp * ((fa - m * fd) * m0q + m * fd);
      break;
    }
    case Rule::T6: {
      const double p = inst.hp->p(), q = inst.hp->q();
      const double m2 = kernel_moment(MomentKind::M2, h, alpha).value;
      const double pref = len * len / (2.0 * std::pow(6.0, 1.0 / p));
      const double dq = std::pow(fd, q);
      comps.insert(comps.end(), {{"p", p}, {"q", q}, {"M2", m2}, {"prefactor", pref}});
      rhs = pref * root((std::pow(fa, q) - m * dq) * m2 + m / 6.0 * dq, q, "T6");
      break;
    }
    case Rule::C4: {
      const double p = inst.hp->p(), q = inst.hp->q();
      const double c4 = kernel_moment(MomentKind::C4, h, alpha, inst.hp).value;
      const double pref = len * len / (2.0 * std::pow(6.0, 1.0 / p));
      comps.insert(comps.end(), {{"p", p}, {"q", q}, {"C4", c4}, {"prefactor", pref}});
      rhs = pref * ((fa - m * fd) * c4 + m / 6.0 * fd);
      break;
    }
    default:
      break;
  }
  BoundReport r = finish(inst, trapezoid_deviation(inst.f, a, b), rhs, std::move(comps), tol);
  r.notes.emplace_back("requires f twice differentiable on the interval");
  return r;
}

BoundReport evaluate_bound(const BoundInstance& inst, double tol) {
  return is_first_derivative_rule(inst.rule) ? bound_first_derivative(inst, tol) : bound_second_derivative(inst, tol);
}

Expression hypothesis_function(const BoundInstance& inst) {
  const int order = is_first_derivative_rule(inst.rule) ? 1 : 2;
  const Expression g = abs(differentiate(inst.f, order));
  if (!is_holder_rule(inst.rule)) return g;
  if (!inst.hp) throw UsageError("rule " + to_string(inst.rule) + " requires a Hölder exponent p > 1");
  return pow(g, Expression::constant(inst.hp->q()));
}

DomainInterval hypothesis_domain(const BoundInstance& inst) {
  if (inst.cls.m == 1.0) return DomainInterval(inst.a, inst.b);
  const double m = inst.cls.m;
  const double hi = std::max({inst.b, (inst.a + inst.b) / (2.0 * m), inst.b / m});
  return DomainInterval(std::min(0.0, inst.a), hi);
}

BoundReport verify(const BoundInstance& inst, const VerifyOptions& opts) {
  inst.validate();
  std::optional<MembershipReport> membership;
  std::string failure;
  try {
    membership = check_membership(hypothesis_function(inst), inst.cls, hypothesis_domain(inst), opts.samples,
                                  opts.seed, opts.tol);
  } catch (const PreconditionError& e) {
    failure = std::string("hypothesis precondition failed: ") + e.what();
  } catch (const DomainError& e) {
    failure = std::string("hypothesis check not evaluable: ") + e.what();
  }

  BoundReport r = evaluate_bound(inst, opts.tol);
  r.membership = membership;
  if (membership && !membership->found_counterexample()) {
    r.hypothesis = HypothesisStatus::verified;
  } else {
    r.hypothesis = HypothesisStatus::unverified;
    if (membership) {
      const Witness& w = *membership->witness;
      std::ostringstream os;
      os.precision(17);
      os << "hypothesis counterexample at x=" << w.x << " y=" << w.y << " lambda=" << w.lambda;
      r.notes.push_back(os.str());
    } else {
      r.notes.push_back(failure);
    }
  }
  return r;
}

}  // namespace hhc
