#include "hhc/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace hhc {

HolderPair HolderPair::from_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw UsageError("Hölder exponent p must be finite and > 1");
  return HolderPair(p, p / (p - 1.0));
}

double beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("beta requires positive arguments");
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int depth;
};

struct ByError {
  bool operator()(const Panel& l, const Panel& r) const { return l.error < r.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = kWgk[7] * f(center);
  double gauss = kWg[3] * (kronrod / kWgk[7]);
  double resabs = std::fabs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  resabs *= std::fabs(half);
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  return Panel{a, b, kronrod, std::max(std::fabs(kronrod - gauss), roundoff), depth};
}

IntegralResult integrate_plain(const std::function<double(double)>& f, double a, double b,
                               const IntegrationOptions& opts) {
  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  std::vector<Panel> settled;
  active.push(gk15(f, a, b, 0));
  IntegralResult result;

  auto totals = [&] {
    double v = 0.0, e = 0.0;
    std::vector<Panel> all(settled);
    auto copy = active;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    for (const Panel& p : all) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  double value = active.top().value;
  double error = active.top().error;
  double settled_error = 0.0;
  while (!active.empty()) {
    if (error <= opts.tol * std::max(1.0, std::fabs(value))) {
      result.converged = true;
      break;
    }
    if (result.subdivisions >= opts.max_subdivisions) break;
    Panel worst = active.top();
    active.pop();
    if (worst.depth >= opts.max_depth) {
      settled.push_back(worst);
      settled_error += worst.error;
      // Unsplittable panels alone exceed the budget; no further progress possible.
      if (settled_error > opts.tol * std::max(1.0, std::fabs(value))) break;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(f, worst.a, mid, worst.depth + 1);
    const Panel right = gk15(f, mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
    ++result.subdivisions;
  }
  const auto [v, e] = totals();
  result.value = v;
  result.abs_error_estimate = e;
  result.converged = result.converged && e <= opts.tol * std::max(1.0, std::fabs(v));
  return result;
}

}  // namespace

IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const IntegrationOptions& opts) {
  if (!(a < b)) throw UsageError("integration requires a < b");
  if (!opts.endpoint_transform) return integrate_plain(f, a, b, opts);
  const double w = b - a;
  auto g = [&](double u) {
    const double t = a + w * u * u * (3.0 - 2.0 * u);
    return f(t) * w * 6.0 * u * (1.0 - u);
  };
  return integrate_plain(g, 0.0, 1.0, opts);
}

IntegralResult integrate_adaptive(const Expression& f, double a, double b, const IntegrationOptions& opts) {
  return integrate_adaptive(std::function<double(double)>([&f](double x) { return f(x); }), a, b, opts);
}

double reference_integral(const std::function<double(double)>& f, double a, double b, double tol) {
  IntegrationOptions opts;
  opts.tol = tol;
  const IntegralResult r = integrate_adaptive(f, a, b, opts);
  if (!r.converged) {
    throw ConvergenceError("integral did not converge (error estimate " + std::to_string(r.abs_error_estimate) +
                           ")");
  }
  return r.value;
}

double reference_integral(const Expression& f, double a, double b, double tol) {
  return reference_integral(std::function<double(double)>([&f](double x) { return f(x); }), a, b, tol);
}

// ---------------------------------------------------------------------------
// Kernel moments

std::string to_string(MomentKind kind) {
  switch (kind) {
    case MomentKind::M0: return "M0";
    case MomentKind::M1: return "M1";
    case MomentKind::M2: return "M2";
    case MomentKind::C2: return "C2";
    case MomentKind::C4: return "C4";
  }
  return "?";
}

KernelMoment kernel_moment(MomentKind kind, const HFunction& h, double alpha, const std::optional<HolderPair>& hp,
                           double tol) {
  const bool needs_q = kind == MomentKind::C2 || kind == MomentKind::C4;
  if (needs_q && !hp) throw UsageError("moment " + to_string(kind) + " requires a Hölder pair");
  const double q = needs_q ? hp->q() : 1.0;

  KernelMoment km;
  km.kind = kind;

  // h^alpha(t) = t^r for the power family.
  std::optional<double> r;
  switch (h.kind()) {
    case HFunction::Kind::identity: r = alpha; break;
    case HFunction::Kind::power: r = h.s() * alpha; break;
    case HFunction::Kind::one: r = 0.0; break;
    default: break;
  }
  if (r) {
    km.method = KernelMoment::Method::closed_form;
    switch (kind) {
      case MomentKind::M0: km.value = 1.0 / (*r + 1.0); break;
      case MomentKind::M1: km.value = 1.0 / ((*r + 1.0) * (*r + 2.0)); break;
      case MomentKind::M2: km.value = 1.0 / ((*r + 2.0) * (*r + 3.0)); break;
      case MomentKind::C2: {
        const double e = *r / q;
        km.value = 1.0 / (e + 1.0) - (1.0 / q) / (e + 2.0);
        break;
      }
      case MomentKind::C4: {
        const double e = (*r + 1.0) / q;
        km.value = 1.0 / (e + 1.0) - (1.0 / q) / (e + 2.0);
        break;
      }
    }
    return km;
  }

  std::function<double(double)> integrand;
  switch (kind) {
    case MomentKind::M0: integrand = [&](double t) { return evaluate_h(h, t, alpha); }; break;
    case MomentKind::M1: integrand = [&](double t) { return (1.0 - t) * evaluate_h(h, t, alpha); }; break;
    case MomentKind::M2: integrand = [&](double t) { return t * (1.0 - t) * evaluate_h(h, t, alpha); }; break;
    case MomentKind::C2: integrand = [&](double t) { return (1.0 - t / q) * evaluate_h(h, t, alpha / q); }; break;
    case MomentKind::C4:
      integrand = [&](double t) { return std::pow(t, 1.0 / q) * (1.0 - t / q) * evaluate_h(h, t, alpha / q); };
      break;
  }
  IntegrationOptions opts;
  opts.tol = tol;
  opts.endpoint_transform = true;
  const IntegralResult res = integrate_adaptive(integrand, 0.0, 1.0, opts);
  if (!res.converged) {
    throw ConvergenceError("kernel moment " + to_string(kind) + " for h=" + h.describe() +
                           " did not converge (divergent or too singular)");
  }
  km.method = KernelMoment::Method::adaptive;
  km.value = res.value;
  km.abs_error_estimate = res.abs_error_estimate;
  return km;
}

}  // namespace hhc
