#include "hhc/convexity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "hhc/rng.hpp"

namespace hhc {

DomainInterval::DomainInterval(double lo_, double hi_, bool open_lo_, bool open_hi_)
    : lo(lo_), hi(hi_), open_lo(open_lo_), open_hi(open_hi_) {
  if (!(lo < hi)) throw UsageError("domain interval requires lo < hi");
}

bool DomainInterval::contains(double x) const noexcept {
  const bool above = open_lo ? x > lo : x >= lo;
  const bool below = open_hi ? x < hi : x <= hi;
  return above && below;
}

// ---------------------------------------------------------------------------
// HFunction

HFunction HFunction::identity() { return HFunction(Kind::identity, 1.0, Expression::variable()); }

HFunction HFunction::power(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw UsageError("power weight h(t)=t^s requires s in (0, 1]");
  return HFunction(Kind::power, s, hhc::pow(Expression::variable(), Expression::constant(s)));
}

HFunction HFunction::one() { return HFunction(Kind::one, 1.0, Expression::constant(1.0)); }

HFunction HFunction::reciprocal() {
  return HFunction(Kind::reciprocal, 1.0, Expression::constant(1.0) / Expression::variable());
}

HFunction HFunction::from_spec(const std::string& spec, double s) {
  if (spec == "t") return identity();
  if (spec == "1") return one();
  if (spec == "1/t") return reciprocal();
  if (spec == "t^s") return power(s);
  if (spec.rfind("t^", 0) == 0) {
    double v = 0.0;
    const char* last = spec.data() + spec.size();
    const auto res = std::from_chars(spec.data() + 2, last, v);
    if (res.ec == std::errc() && res.ptr == last) return power(v);
  }
  if (spec.rfind("expr:", 0) == 0) return custom(parse(spec.substr(5), "t"));
  throw UsageError("weight h must be one of t, t^s, 1, expr:<text>; got '" + spec + "'");
}

HFunction HFunction::custom(Expression h) {
  // h must be non-negative and not identically zero on (0, 1). Probe a grid.
  bool nonzero = false;
  for (int i = 1; i < 64; ++i) {
    const double t = i / 64.0;
    const double v = h(t);
    if (v < 0.0) throw PreconditionError("weight function h is negative at t=" + std::to_string(t));
    if (v > 0.0) nonzero = true;
  }
  if (!nonzero) throw PreconditionError("weight function h vanishes on (0, 1)");
  return HFunction(Kind::custom, 1.0, std::move(h));
}

double HFunction::operator()(double t) const {
  double v = 0.0;
  switch (kind_) {
    case Kind::identity: v = t; break;
    case Kind::power: v = std::pow(t, s_); break;
    case Kind::one: v = 1.0; break;
    case Kind::reciprocal:
      if (t == 0.0) throw DomainError("h(t)=1/t at t=0");
      v = 1.0 / t;
      break;
    case Kind::custom: v = expr_(t); break;
  }
  if (v < 0.0) throw DomainError("weight function h is negative at t=" + std::to_string(t));
  return v;
}

std::string HFunction::describe() const {
  switch (kind_) {
    case Kind::identity: return "t";
    case Kind::power: {
      std::ostringstream os;
      os << "t^" << s_;
      return os.str();
    }
    case Kind::one: return "1";
    case Kind::reciprocal: return "1/t";
    case Kind::custom: return "expr:" + to_string(expr_, "t");
  }
  return "?";
}

double evaluate_h(const HFunction& h, double t, double alpha) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("weight function argument must lie in (0, 1)");
  const double v = h(t);
  if (alpha == 0.0) return 1.0;
  if (alpha == 1.0) return v;
  return std::pow(v, alpha);
}

// ---------------------------------------------------------------------------
// ConvexityClass

std::string to_string(Sense sense) {
  switch (sense) {
    case Sense::h_alpha_m: return "h_alpha_m";
    case Sense::h_plain: return "h_plain";
    case Sense::alpha_m: return "alpha_m";
    case Sense::s_first: return "s_first";
    case Sense::s_second: return "s_second";
    case Sense::s_alpha_m_first: return "s_alpha_m_first";
    case Sense::s_alpha_m_second: return "s_alpha_m_second";
    case Sense::plain_convex: return "plain_convex";
  }
  return "?";
}

Sense sense_from_string(const std::string& name) {
  if (name == "convex" || name == "plain_convex") return Sense::plain_convex;
  for (Sense s : {Sense::h_alpha_m, Sense::h_plain, Sense::alpha_m, Sense::s_first, Sense::s_second,
                  Sense::s_alpha_m_first, Sense::s_alpha_m_second}) {
    if (to_string(s) == name) return s;
  }
  throw UsageError("unknown convexity sense '" + name + "'");
}

ConvexityClass ConvexityClass::make(Sense sense, HFunction h, double alpha, double m, double s) {
  ConvexityClass c;
  c.sense = sense;
  const bool uses_h = sense == Sense::h_alpha_m || sense == Sense::h_plain;
  const bool uses_alpha_m = sense == Sense::h_alpha_m || sense == Sense::alpha_m ||
                            sense == Sense::s_alpha_m_first || sense == Sense::s_alpha_m_second;
  const bool uses_s = sense == Sense::s_first || sense == Sense::s_second || sense == Sense::s_alpha_m_first ||
                      sense == Sense::s_alpha_m_second;
  c.h = uses_h ? std::move(h) : HFunction::identity();
  c.alpha = uses_alpha_m ? alpha : 1.0;
  c.m = uses_alpha_m ? m : 1.0;
  c.s = uses_s ? s : 1.0;
  c.validate();
  return c;
}

void ConvexityClass::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
  if (!(m > 0.0 && m <= 1.0)) throw UsageError("m must lie in (0, 1]");
  if (!(s > 0.0 && s <= 1.0)) throw UsageError("s must lie in (0, 1]");
}

std::string ConvexityClass::describe() const {
  std::ostringstream os;
  os << "sense=" << to_string(sense) << ";h=" << h.describe() << ";alpha=" << alpha << ";m=" << m << ";s=" << s;
  return os.str();
}

// ---------------------------------------------------------------------------
// Membership

namespace {

struct Sides {
  double lhs;
  double rhs;
};

bool requires_nonnegative(Sense s) {
  return s == Sense::h_alpha_m || s == Sense::h_plain || s == Sense::s_alpha_m_first ||
         s == Sense::s_alpha_m_second;
}

bool closed_lambda(Sense s) { return s != Sense::h_alpha_m && s != Sense::h_plain; }

bool uses_y_over_m(Sense s) { return s == Sense::s_alpha_m_first || s == Sense::s_alpha_m_second; }

class Evaluator {
 public:
  Evaluator(const Expression& g, const ConvexityClass& cls, double tol) : g_(g), cls_(cls), tol_(tol) {}

  Sides operator()(double x, double y, double lam) const {
    const double m = cls_.m;
    switch (cls_.sense) {
      case Sense::plain_convex:
        return {g(lam * x + (1.0 - lam) * y), lam * g(x) + (1.0 - lam) * g(y)};
      case Sense::s_second: {
        const double u = std::pow(lam, cls_.s), v = std::pow(1.0 - lam, cls_.s);
        return {g(lam * x + (1.0 - lam) * y), u * g(x) + v * g(y)};
      }
      case Sense::s_first: {
        const double us = std::pow(lam, cls_.s);
        const double nu = std::pow(1.0 - us, 1.0 / cls_.s);
        return {g(lam * x + nu * y), us * g(x) + (1.0 - us) * g(y)};
      }
      case Sense::alpha_m: {
        const double w = std::pow(lam, cls_.alpha);
        return {g(lam * x + m * (1.0 - lam) * y), w * g(x) + m * (1.0 - w) * g(y)};
      }
      case Sense::h_alpha_m: {
        const double w = evaluate_h(cls_.h, lam, cls_.alpha);
        return {g(lam * x + m * (1.0 - lam) * y), w * g(x) + m * (1.0 - w) * g(y)};
      }
      case Sense::h_plain:
        return {g(lam * x + (1.0 - lam) * y), cls_.h(lam) * g(x) + cls_.h(1.0 - lam) * g(y)};
      case Sense::s_alpha_m_first: {
        const double w = std::pow(lam, cls_.alpha * cls_.s);
        return {g(lam * x + (1.0 - lam) * y), w * g(x) + m * (1.0 - w) * g(y / m)};
      }
      case Sense::s_alpha_m_second: {
        const double ua = std::pow(lam, cls_.alpha);
        const double w = std::pow(ua, cls_.s);
        return {g(lam * x + (1.0 - lam) * y), w * g(x) + m * std::pow(1.0 - ua, cls_.s) * g(y / m)};
      }
    }
    throw Error("unknown sense");
  }

 private:
  double g(double x) const {
    const double v = g_(x);
    if (requires_nonnegative(cls_.sense) && v < -tol_) {
      throw PreconditionError("function must be non-negative for sense " + to_string(cls_.sense) +
                              " but g(" + std::to_string(x) + ") = " + std::to_string(v));
    }
    return v;
  }

  const Expression& g_;
  const ConvexityClass& cls_;
  double tol_;
};

// Range of w1 x + w2 y over x, y in [lo, hi] when w1 + w2 ranges over
// [sigma_lo, sigma_hi] with non-negative weights.
void require_hull(const DomainInterval& dom, double sigma_lo, double sigma_hi) {
  const double lo = std::min(sigma_lo * dom.lo, sigma_hi * dom.lo);
  const double hi = std::max(sigma_lo * dom.hi, sigma_hi * dom.hi);
  const double slack = 1e-12 * std::max(1.0, std::max(std::fabs(dom.lo), std::fabs(dom.hi)));
  if (lo < dom.lo - slack || hi > dom.hi + slack) {
    std::ostringstream os;
    os << "domain too narrow for the m-scaled argument: arguments span [" << lo << ", " << hi
       << "] but the domain is [" << dom.lo << ", " << dom.hi << "]";
    throw DomainError(os.str());
  }
}

double grid_point(double lo, double hi, int k, int last, bool open_lo, bool open_hi) {
  const double w = hi - lo;
  if (k == 0 && open_lo) return lo + 1e-6 * w;
  if (k == last && open_hi) return hi - 1e-6 * w;
  if (k == last) return hi;
  return lo + w * k / last;
}

}  // namespace

MembershipReport check_membership(const Expression& g, const ConvexityClass& cls, const DomainInterval& dom,
                                  std::size_t samples, std::uint64_t seed, double tol) {
  cls.validate();
  MembershipReport report;
  report.seed = seed;
  if (cls.sense == Sense::s_alpha_m_first) report.exponent_reading = "mu^(alpha*s)";

  switch (cls.sense) {
    case Sense::s_first: require_hull(dom, std::pow(2.0, 1.0 - 1.0 / cls.s), 1.0); break;
    case Sense::alpha_m:
    case Sense::h_alpha_m: require_hull(dom, cls.m, 1.0); break;
    default: break;
  }

  // x ranges over dom; y is restricted so that y/m stays inside dom.
  double y_lo = dom.lo, y_hi = dom.hi;
  bool y_open_lo = dom.open_lo, y_open_hi = dom.open_hi;
  if (uses_y_over_m(cls.sense) && cls.m != 1.0) {
    y_lo = std::max(dom.lo, cls.m * dom.lo);
    y_hi = std::min(dom.hi, cls.m * dom.hi);
    if (y_lo != dom.lo) y_open_lo = false;
    if (y_hi != dom.hi) y_open_hi = false;
    if (!(y_lo < y_hi)) throw DomainError("domain too narrow for the y/m argument");
  }

  const Evaluator eval(g, cls, tol);
  auto probe = [&](double x, double y, double lam) {
    ++report.samples_used;
    const Sides s = eval(x, y, lam);
    // Scaled so rounding in large values is not mistaken for a violation.
    if (s.lhs > s.rhs + tol * std::max(1.0, std::fabs(s.rhs))) {
      report.verdict = MembershipReport::Verdict::counterexample;
      report.witness = Witness{x, y, lam, s.lhs, s.rhs};
      return true;
    }
    return false;
  };

  constexpr int kGrid = 20;  // 21 points per axis
  for (int i = 0; i <= kGrid; ++i) {
    const double x = grid_point(dom.lo, dom.hi, i, kGrid, dom.open_lo, dom.open_hi);
    for (int j = 0; j <= kGrid; ++j) {
      const double y = grid_point(y_lo, y_hi, j, kGrid, y_open_lo, y_open_hi);
      for (int k = 1; k <= 9; ++k) {
        if (probe(x, y, k / 10.0)) return report;
      }
    }
  }

  if (closed_lambda(cls.sense)) {
    for (int i = 0; i <= kGrid; ++i) {
      const double x = grid_point(dom.lo, dom.hi, i, kGrid, dom.open_lo, dom.open_hi);
      for (int j = 0; j <= kGrid; ++j) {
        const double y = grid_point(y_lo, y_hi, j, kGrid, y_open_lo, y_open_hi);
        if (probe(x, y, 0.0) || probe(x, y, 1.0)) return report;
      }
    }
  }

  const CounterRng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    double x = rng.uniform(3 * i, dom.lo, dom.hi);
    double y = rng.uniform(3 * i + 1, y_lo, y_hi);
    if (dom.open_lo && x == dom.lo) x = grid_point(dom.lo, dom.hi, 0, 1, true, false);
    if (y_open_lo && y == y_lo) y = grid_point(y_lo, y_hi, 0, 1, true, false);
    if (probe(x, y, rng.uniform_open(3 * i + 2))) return report;
  }
  return report;
}

}  // namespace hhc
