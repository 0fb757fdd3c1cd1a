#include "hhc/means.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hhc/error.hpp"
#include "hhc/kernels.hpp"

namespace hhc {

MeanKind MeanKind::p_logarithmic(double p) {
  if (p == -1.0 || p == 0.0) throw UsageError("L_p is defined for p not in {-1, 0}; use L or I");
  return {Tag::Lp, p};
}

MeanKind MeanKind::p_logarithmic_extended(double p) {
  if (p == -1.0) return logarithmic();
  if (p == 0.0) return identric();
  return p_logarithmic(p);
}

std::string MeanKind::name() const {
  switch (tag) {
    case Tag::A: return "A";
    case Tag::G: return "G";
    case Tag::H: return "H";
    case Tag::L: return "L";
    case Tag::I: return "I";
    case Tag::Lp: {
      std::ostringstream os;
      os << "L_" << p;
      return os.str();
    }
  }
  return "?";
}

namespace {

// All non-trivial means are written as lo * F(d) with d = (hi - lo) / lo,
// which keeps them accurate as hi -> lo and exactly symmetric.
double log_ratio_over(double d) { return std::log1p(d) / d; }

double lp_power(double d, double p) {
  // ((1+d)^(p+1) - 1) / ((p+1) d) = L_p^p / lo^p
  return std::expm1((p + 1.0) * std::log1p(d)) / ((p + 1.0) * d);
}

}  // namespace

double mean(const MeanKind& kind, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("means require positive finite arguments");
  }
  const double lo = std::min(a, b), hi = std::max(a, b);
  switch (kind.tag) {
    case MeanKind::Tag::A: return 0.5 * (lo + hi);
    case MeanKind::Tag::G: return std::sqrt(lo * hi);
    case MeanKind::Tag::H: return 2.0 * lo * hi / (lo + hi);
    default: break;
  }
  if (lo == hi) return lo;
  const double d = (hi - lo) / lo;
  switch (kind.tag) {
    case MeanKind::Tag::L: return lo / log_ratio_over(d);
    case MeanKind::Tag::I: return lo * std::exp((1.0 + d) * log_ratio_over(d) - 1.0);
    case MeanKind::Tag::Lp: {
      if (kind.p == -1.0 || kind.p == 0.0) throw UsageError("L_p is defined for p not in {-1, 0}");
      const double v = lo * std::pow(lp_power(d, kind.p), 1.0 / kind.p);
      if (!std::isfinite(v)) throw DomainError("L_p overflow");
      return v;
    }
    default: break;
  }
  throw Error("unknown mean kind");
}

MeanChain check_mean_chain(double a, double b) {
  constexpr double slack = 1e-12;
  MeanChain c{};
  c.H = mean(MeanKind::harmonic(), a, b);
  c.G = mean(MeanKind::geometric(), a, b);
  c.L = mean(MeanKind::logarithmic(), a, b);
  c.I = mean(MeanKind::identric(), a, b);
  c.A = mean(MeanKind::arithmetic(), a, b);
  c.holds = c.H <= c.G + slack && c.G <= c.L + slack && c.L <= c.I + slack && c.I <= c.A + slack;
  return c;
}

bool lp_monotonicity_check(double a, double b, std::span<const double> p_grid) {
  std::vector<double> grid(p_grid.begin(), p_grid.end());
  std::sort(grid.begin(), grid.end());
  double prev = -INFINITY;
  for (double p : grid) {
    const double v = mean(MeanKind::p_logarithmic_extended(p), a, b);
    if (v + 1e-12 < prev) return false;
    prev = v;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Propositions

std::string to_string(PropositionId id) {
  switch (id) {
    case PropositionId::P1: return "P1";
    case PropositionId::P2: return "P2";
    case PropositionId::P3: return "P3";
    case PropositionId::P4: return "P4";
  }
  return "?";
}

PropositionId proposition_from_string(const std::string& name) {
  for (PropositionId id : {PropositionId::P1, PropositionId::P2, PropositionId::P3, PropositionId::P4}) {
    if (to_string(id) == name) return id;
  }
  throw UsageError("unknown proposition '" + name + "'");
}

void PropositionInstance::validate() const {
  if (!(a > 0.0 && a < b) || !std::isfinite(b)) throw DomainError("propositions require 0 < a < b");
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("propositions require p > 1");
}

VerificationOutcome proposition_check(const PropositionInstance& inst, double tol) {
  inst.validate();
  const double a = inst.a, b = inst.b, p = inst.p;
  const double A = mean(MeanKind::arithmetic(), a, b);
  const double G = mean(MeanKind::geometric(), a, b);
  const double H = mean(MeanKind::harmonic(), a, b);
  const double L = mean(MeanKind::logarithmic(), a, b);

  VerificationOutcome out;
  out.id = inst.id;
  std::string discrepancy;
  try {
    switch (inst.id) {
      case PropositionId::P1:
        out.lhs = std::fabs(G - L);
        out.rhs = (std::log(b) - std::log(a)) / (4.0 * std::pow(p + 1.0, 1.0 / p)) * (A + G);
        discrepancy = "|G - L| exceeds the stated bound";
        break;
      case PropositionId::P2: {
        const double I = mean(MeanKind::identric(), a, b);
        const double e = (2.0 * p + 1.0) / p;
        const double s = 1.0 / H + 2.0 / A;
        out.lhs = std::fabs(A / I);
        out.rhs = std::exp((b - a) / (3.0 * std::pow(2.0, e)) * s);
        out.alternate_rhs = std::exp((b - a) / std::pow(3.2, e) * s);
        discrepancy = "A/I exceeds the stated bound (constant read as 3*2^((2p+1)/p))";
        break;
      }
      case PropositionId::P3: {
        const double h3 = mean(MeanKind::harmonic(), a * a * a, b * b * b);
        out.lhs = std::fabs(1.0 / H - 1.0 / L);
        out.rhs = (b - a) * (b - a) * std::pow(beta(p + 1.0, p + 1.0), 1.0 / p) / h3;
        discrepancy = "|1/H - 1/L| exceeds the stated bound";
        break;
      }
      case PropositionId::P4: {
        const double n = inst.n;
        const double an = mean(MeanKind::arithmetic(), std::pow(a, n), std::pow(b, n));
        const double d = (b - a) / a;
        const double lpp = std::pow(a, p) * lp_power(d, p);
        out.lhs = std::fabs(an - lpp);
        out.rhs = std::fabs(n * (n - 1.0)) * (b - a) * (b - a) / (2.0 * std::pow(6.0, (p + 1.0) / p)) *
                  mean(MeanKind::arithmetic(), std::pow(a, p - 2.0), std::pow(b, p - 2.0));
        discrepancy =
            "bound fails; the exponent n of A(a^n, b^n) is not tied to the p of L_p^p and A(a^(p-2), b^(p-2))";
        break;
      }
    }
  } catch (const DomainError& e) {
    out.holds = false;
    out.flagged_discrepancy = std::string("evaluation left the domain: ") + e.what();
    return out;
  }
  if (!std::isfinite(out.lhs) || !std::isfinite(out.rhs)) {
    out.holds = false;
    out.flagged_discrepancy = "non-finite side in evaluation";
    return out;
  }
  out.holds = out.lhs <= out.rhs + tol;
  if (!out.holds) out.flagged_discrepancy = discrepancy;
  return out;
}

}  // namespace hhc
