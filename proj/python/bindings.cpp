#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hhc/cli.hpp"
#include "hhc/convexity.hpp"
#include "hhc/error.hpp"
#include "hhc/expr.hpp"
#include "hhc/hh_bounds.hpp"
#include "hhc/kernels.hpp"
#include "hhc/means.hpp"
#include "hhc/quadrature.hpp"
#include "hhc/report.hpp"

namespace py = pybind11;
using namespace hhc;

namespace {

ConvexityClass baseline_class(const std::string& h, double alpha, double m, double s) {
  ConvexityClass cls = ConvexityClass::make(Sense::h_alpha_m, HFunction::from_spec(h, s), alpha, m);
  cls.validate();
  return cls;
}

MeanKind mean_kind(const std::string& name, std::optional<double> p) {
  if (name == "A") return MeanKind::arithmetic();
  if (name == "G") return MeanKind::geometric();
  if (name == "H") return MeanKind::harmonic();
  if (name == "L") return MeanKind::logarithmic();
  if (name == "I") return MeanKind::identric();
  if (name == "Lp") {
    if (!p) throw UsageError("the Lp mean needs p");
    return MeanKind::p_logarithmic_extended(*p);
  }
  throw UsageError("unknown mean '" + name + "'");
}

py::dict bound_dict(const BoundReport& r) {
  py::dict d;
  d["rule"] = to_string(r.rule);
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["margin"] = r.margin;
  d["holds"] = r.holds;
  d["hypothesis"] = to_string(r.hypothesis);
  py::dict comps;
  for (const auto& [k, v] : r.components) comps[py::str(k)] = v;
  d["components"] = comps;
  d["parameters"] = r.parameters;
  d["notes"] = r.notes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hhc, m) {
  m.doc() = "Hermite-Hadamard inequality checks for (h-(alpha,m))-convex functions";
  m.attr("__version__") = kToolVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<UsageError>(m, "UsageError", base.ptr());

  py::class_<Expression>(m, "Expression")
      .def(py::init([](const std::string& text, const std::string& var) { return parse(text, var); }),
           py::arg("text"), py::arg("variable") = "x")
      .def("__call__", &Expression::operator(), py::arg("x"))
      .def("derivative", &differentiate, py::arg("order") = 1)
      .def("__str__", [](const Expression& e) { return to_string(e); })
      .def("__repr__", [](const Expression& e) { return "Expression('" + to_string(e) + "')"; })
      .def("__eq__", [](const Expression& a, const Expression& b) { return a == b; });

  m.def("beta", &beta, py::arg("x"), py::arg("y"));

  m.def(
      "kernel_moment",
      [](const std::string& kind, const std::string& h, double alpha, std::optional<double> p, double s) {
        std::optional<HolderPair> hp;
        if (p) hp = HolderPair::from_p(*p);
        MomentKind k;
        if (kind == "M0") k = MomentKind::M0;
        else if (kind == "M1") k = MomentKind::M1;
        else if (kind == "M2") k = MomentKind::M2;
        else if (kind == "C2") k = MomentKind::C2;
        else if (kind == "C4") k = MomentKind::C4;
        else throw UsageError("unknown moment '" + kind + "'");
        return kernel_moment(k, HFunction::from_spec(h, s), alpha, hp).value;
      },
      py::arg("kind"), py::arg("h") = "t", py::arg("alpha") = 1.0, py::arg("p") = py::none(), py::arg("s") = 1.0);

  m.def(
      "integrate",
      [](const std::string& f, double a, double b, double tol) { return reference_integral(parse(f), a, b, tol); },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-12);

  m.def(
      "check_membership",
      [](const std::string& g, const std::string& sense, double lo, double hi, const std::string& h, double alpha,
         double mm, double s, std::size_t samples, std::uint64_t seed, double tol) {
        const ConvexityClass cls =
            ConvexityClass::make(sense_from_string(sense), HFunction::from_spec(h, s), alpha, mm, s);
        const MembershipReport r = check_membership(parse(g), cls, DomainInterval(lo, hi), samples, seed, tol);
        py::dict d;
        d["counterexample"] = r.found_counterexample();
        d["samples_used"] = r.samples_used;
        if (r.witness) {
          d["witness"] = py::make_tuple(r.witness->x, r.witness->y, r.witness->lambda);
        } else {
          d["witness"] = py::none();
        }
        return d;
      },
      py::arg("g"), py::arg("sense"), py::arg("lo"), py::arg("hi"), py::arg("h") = "t", py::arg("alpha") = 1.0,
      py::arg("m") = 1.0, py::arg("s") = 1.0, py::arg("samples") = 1000, py::arg("seed") = 42,
      py::arg("tol") = 1e-9);

  m.def(
      "bound",
      [](const std::string& rule, const std::string& f, double a, double b, std::optional<double> p,
         const std::string& h, double alpha, double mm, bool check_hypothesis, double tol) {
        BoundInstance inst;
        inst.rule = rule_from_string(rule);
        inst.f = parse(f);
        inst.a = a;
        inst.b = b;
        inst.cls = baseline_class(h, alpha, mm, 1.0);
        if (p) inst.hp = HolderPair::from_p(*p);
        const BoundReport r =
            check_hypothesis ? verify(inst, VerifyOptions{tol, 1000, 42}) : evaluate_bound(inst, tol);
        return bound_dict(r);
      },
      py::arg("rule"), py::arg("f"), py::arg("a"), py::arg("b"), py::arg("p") = py::none(), py::arg("h") = "t",
      py::arg("alpha") = 1.0, py::arg("m") = 1.0, py::arg("check_hypothesis") = true, py::arg("tol") = 1e-9);

  m.def(
      "mean", [](const std::string& kind, double a, double b, std::optional<double> p) {
        return mean(mean_kind(kind, p), a, b);
      },
      py::arg("kind"), py::arg("a"), py::arg("b"), py::arg("p") = py::none());

  m.def(
      "mean_chain",
      [](double a, double b) {
        const MeanChain c = check_mean_chain(a, b);
        py::dict d;
        d["H"] = c.H;
        d["G"] = c.G;
        d["L"] = c.L;
        d["I"] = c.I;
        d["A"] = c.A;
        d["holds"] = c.holds;
        return d;
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "proposition",
      [](const std::string& id, double a, double b, double p, int n, double tol) {
        const VerificationOutcome o = proposition_check({proposition_from_string(id), a, b, p, n}, tol);
        py::dict d;
        d["lhs"] = o.lhs;
        d["rhs"] = o.rhs;
        d["holds"] = o.holds;
        d["alternate_rhs"] = o.alternate_rhs ? py::cast(*o.alternate_rhs) : py::none();
        d["flagged_discrepancy"] = o.flagged_discrepancy ? py::cast(*o.flagged_discrepancy) : py::none();
        return d;
      },
      py::arg("id"), py::arg("a"), py::arg("b"), py::arg("p"), py::arg("n") = 2, py::arg("tol") = 1e-9);

  m.def(
      "quad",
      [](const std::string& rule, const std::string& f, std::vector<double> points, double p,
         const std::string& variant, double alpha, double mm) {
        QuadratureParams qp;
        qp.p = p;
        qp.alpha = alpha;
        qp.m = mm;
        if (variant == "proofline") {
          qp.variant = MidpointVariant::proofline;
        } else if (variant != "statement") {
          throw UsageError("variant must be statement or proofline");
        }
        QuadratureRule r;
        if (rule == "midpoint") r = QuadratureRule::midpoint;
        else if (rule == "trapezoid") r = QuadratureRule::trapezoid;
        else throw UsageError("rule must be midpoint or trapezoid");
        const QuadratureReport q = certified_integrate(parse(f), Partition(std::move(points)), r, qp);
        py::dict d;
        d["value"] = q.value;
        d["reference"] = q.reference;
        d["true_error"] = q.true_error;
        d["apriori_bound"] = q.apriori_bound;
        d["bound_source"] = q.bound_source;
        d["holds"] = q.holds;
        d["hypothesis_verified"] = q.hypothesis_verified ? py::cast(*q.hypothesis_verified) : py::none();
        return d;
      },
      py::arg("rule"), py::arg("f"), py::arg("points"), py::arg("p") = 2.0, py::arg("variant") = "statement",
      py::arg("alpha") = 1.0, py::arg("m") = 1.0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
