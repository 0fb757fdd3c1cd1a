#include "hhc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hhc/convexity.hpp"
#include "hhc/error.hpp"
#include "hhc/expr.hpp"
#include "hhc/hh_bounds.hpp"
#include "hhc/means.hpp"
#include "hhc/quadrature.hpp"
#include "hhc/report.hpp"
#include "hhc/suite.hpp"

namespace hhc::cli {

namespace {

struct RunConfig {
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::string format = "table";

  std::string f;
  double a = 0.0;
  double b = 1.0;
  std::string h = "t";
  double alpha = 1.0;
  double m = 1.0;
  double s = 1.0;
  std::optional<double> p;
  std::size_t samples = 1000;

  std::string sense = "convex";
  std::string target = "f";

  std::string rule;
  std::string variant;
  bool skip_hypothesis = false;

  std::string prop_id = "all";
  int n_exp = 2;

  std::size_t n = 0;
  std::vector<double> points;

  std::vector<std::string> sections;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Expression require_f(const RunConfig& cfg) {
  if (cfg.f.empty()) throw UsageError("--f is required");
  return parse(cfg.f);
}

Verdict verdict_of(bool holds) { return holds ? Verdict::holds : Verdict::flagged; }

SuiteReport run_check_class(const RunConfig& cfg) {
  Expression g = require_f(cfg);
  if (cfg.target == "abs-d1") {
    g = abs(differentiate(g, 1));
  } else if (cfg.target == "abs-d2") {
    g = abs(differentiate(g, 2));
  } else if (cfg.target != "f") {
    throw UsageError("--target must be f, abs-d1 or abs-d2");
  }
  const Sense sense = sense_from_string(cfg.sense);
  const ConvexityClass cls = ConvexityClass::make(sense, HFunction::from_spec(cfg.h, cfg.s), cfg.alpha, cfg.m, cfg.s);
  cls.validate();
  const MembershipReport mr = check_membership(g, cls, DomainInterval(cfg.a, cfg.b), cfg.samples, cfg.seed, cfg.tol);

  CaseRecord c;
  c.case_id = "check-class";
  c.rule = to_string(sense);
  c.params = "g=" + to_string(g) + ";a=" + num(cfg.a) + ";b=" + num(cfg.b) + ";class=" + cls.describe();
  if (!mr.exponent_reading.empty()) c.params += ";exponent=" + mr.exponent_reading;
  if (mr.witness) {
    c.lhs = mr.witness->lhs;
    c.rhs = mr.witness->rhs;
    c.margin = c.rhs - c.lhs;
    c.note = "counterexample x=" + num(mr.witness->x) + " y=" + num(mr.witness->y) +
             " lambda=" + num(mr.witness->lambda);
  } else {
    c.note = "no counterexample in " + std::to_string(mr.samples_used) + " samples";
  }
  c.verdict = verdict_of(!mr.found_counterexample());
  SuiteReport rep;
  rep.add(std::move(c));
  return rep;
}

SuiteReport run_bound(const RunConfig& cfg) {
  const Expression f = require_f(cfg);
  if (cfg.rule.empty()) throw UsageError("--rule is required");
  std::vector<Rule> rules;
  if (cfg.rule == "all") {
    rules.assign(std::begin(kAllRules), std::end(kAllRules));
  } else {
    rules.push_back(rule_from_string(cfg.rule));
  }
  const ConvexityClass cls = ConvexityClass::make(Sense::h_alpha_m, HFunction::from_spec(cfg.h, cfg.s), cfg.alpha, cfg.m);
  cls.validate();
  T1Variant variant = T1Variant::printed;
  if (cfg.variant == "derived_tight" || cfg.variant == "derived-tight") {
    variant = T1Variant::derived_tight;
  } else if (!cfg.variant.empty() && cfg.variant != "printed") {
    throw UsageError("--variant for bound must be printed or derived_tight");
  }

  SuiteReport rep;
  for (Rule rule : rules) {
    BoundInstance inst;
    inst.rule = rule;
    inst.f = f;
    inst.a = cfg.a;
    inst.b = cfg.b;
    inst.cls = cls;
    inst.t1_variant = variant;
    if (is_holder_rule(rule)) {
      if (!cfg.p) throw UsageError("rule " + to_string(rule) + " requires --p");
      inst.hp = HolderPair::from_p(*cfg.p);
    }
    inst.validate();
    BoundReport br;
    if (cfg.skip_hypothesis) {
      br = evaluate_bound(inst, cfg.tol);
    } else {
      br = verify(inst, VerifyOptions{cfg.tol, cfg.samples, cfg.seed});
    }
    CaseRecord c;
    c.case_id = "bound/" + to_string(rule);
    c.rule = to_string(rule);
    c.params = "f=" + cfg.f + ";" + br.parameters;
    c.lhs = br.lhs;
    c.rhs = br.rhs;
    c.margin = br.margin;
    if (br.hypothesis == HypothesisStatus::unverified) {
      c.verdict = Verdict::hypothesis_unverified;
    } else {
      c.verdict = verdict_of(br.holds);
    }
    std::ostringstream note;
    note.precision(10);
    for (std::size_t i = 0; i < br.components.size(); ++i) {
      note << (i ? " " : "") << br.components[i].first << "=" << br.components[i].second;
    }
    for (const std::string& n : br.notes) note << "; " << n;
    c.note = note.str();
    rep.add(std::move(c));
  }
  return rep;
}

SuiteReport run_means(const RunConfig& cfg) {
  const MeanChain ch = check_mean_chain(cfg.a, cfg.b);
  const std::string params = "a=" + num(cfg.a) + ";b=" + num(cfg.b);
  SuiteReport rep;
  const std::pair<const char*, std::pair<double, double>> steps[] = {
      {"H<=G", {ch.H, ch.G}}, {"G<=L", {ch.G, ch.L}}, {"L<=I", {ch.L, ch.I}}, {"I<=A", {ch.I, ch.A}}};
  for (const auto& [name, sides] : steps) {
    CaseRecord c;
    c.case_id = std::string("means/") + name;
    c.rule = "chain";
    c.params = params;
    c.lhs = sides.first;
    c.rhs = sides.second;
    c.margin = c.rhs - c.lhs;
    c.verdict = verdict_of(c.lhs <= c.rhs + 1e-12);
    rep.add(std::move(c));
  }
  const std::vector<double> grid = {-1.0, 0.0, 0.5, 1.0, 2.0, 5.0};
  CaseRecord c;
  c.case_id = "means/lp_monotone";
  c.rule = "Lp-monotone";
  c.params = params;
  std::ostringstream note;
  note.precision(10);
  for (double p : grid) note << "L_" << p << "=" << mean(MeanKind::p_logarithmic_extended(p), cfg.a, cfg.b) << " ";
  c.lhs = mean(MeanKind::p_logarithmic_extended(grid.front()), cfg.a, cfg.b);
  c.rhs = mean(MeanKind::p_logarithmic_extended(grid.back()), cfg.a, cfg.b);
  c.margin = c.rhs - c.lhs;
  c.verdict = verdict_of(lp_monotonicity_check(cfg.a, cfg.b, grid));
  c.note = note.str();
  rep.add(std::move(c));
  return rep;
}

SuiteReport run_prop(const RunConfig& cfg) {
  if (!cfg.p) throw UsageError("prop requires --p");
  std::vector<PropositionId> ids;
  if (cfg.prop_id == "all") {
    ids = {PropositionId::P1, PropositionId::P2, PropositionId::P3, PropositionId::P4};
  } else {
    ids.push_back(proposition_from_string(cfg.prop_id));
  }
  SuiteReport rep;
  for (PropositionId id : ids) {
    PropositionInstance inst{id, cfg.a, cfg.b, *cfg.p, cfg.n_exp};
    const VerificationOutcome out = proposition_check(inst, cfg.tol);
    CaseRecord c;
    c.case_id = "prop/" + to_string(id);
    c.rule = to_string(id);
    c.params = "a=" + num(cfg.a) + ";b=" + num(cfg.b) + ";p=" + num(*cfg.p);
    if (id == PropositionId::P4) c.params += ";n=" + std::to_string(cfg.n_exp);
    c.lhs = out.lhs;
    c.rhs = out.rhs;
    c.margin = out.rhs - out.lhs;
    c.verdict = verdict_of(out.holds);
    if (out.alternate_rhs) c.note = "alternate rhs " + num(*out.alternate_rhs);
    if (out.flagged_discrepancy) c.note += (c.note.empty() ? "" : "; ") + *out.flagged_discrepancy;
    rep.add(std::move(c));
  }
  return rep;
}

SuiteReport run_quad(const RunConfig& cfg) {
  const Expression f = require_f(cfg);
  QuadratureRule rule;
  if (cfg.rule == "midpoint") {
    rule = QuadratureRule::midpoint;
  } else if (cfg.rule == "trapezoid") {
    rule = QuadratureRule::trapezoid;
  } else {
    throw UsageError("--rule for quad must be midpoint or trapezoid");
  }
  QuadratureParams qp;
  qp.p = cfg.p.value_or(2.0);
  qp.alpha = cfg.alpha;
  qp.m = cfg.m;
  qp.tol = cfg.tol;
  qp.samples = cfg.samples;
  qp.seed = cfg.seed;
  if (cfg.variant == "proofline") {
    qp.variant = MidpointVariant::proofline;
  } else if (!cfg.variant.empty() && cfg.variant != "statement") {
    throw UsageError("--variant for quad must be statement or proofline");
  }
  if (!cfg.points.empty() && cfg.n != 0) throw UsageError("give either --n or --points, not both");
  const Partition k = !cfg.points.empty() ? Partition(cfg.points)
                                          : uniform_partition(cfg.a, cfg.b, cfg.n == 0 ? 1 : cfg.n);
  const QuadratureReport r = certified_integrate(f, k, rule, qp);

  CaseRecord c;
  c.case_id = "quad/" + to_string(rule);
  c.rule = r.bound_source;
  c.params = "f=" + cfg.f + ";a=" + num(k.a()) + ";b=" + num(k.b()) + ";n=" + std::to_string(k.intervals()) +
             ";p=" + num(qp.p) + ";value=" + num(r.value) + ";reference=" + num(r.reference);
  if (rule == QuadratureRule::trapezoid) c.params += ";alpha=" + num(qp.alpha) + ";m=" + num(qp.m);
  c.lhs = r.true_error;
  c.rhs = r.apriori_bound;
  c.margin = r.apriori_bound - r.true_error;
  c.verdict = !r.hypothesis_verified.value_or(true) ? Verdict::hypothesis_unverified : verdict_of(r.holds);
  for (const std::string& n : r.notes) c.note += (c.note.empty() ? "" : "; ") + n;
  SuiteReport rep;
  rep.add(std::move(c));
  return rep;
}

SuiteReport run_verify(const RunConfig& cfg) {
  SuiteOptions opts;
  opts.seed = cfg.seed;
  opts.tol = cfg.tol;
  opts.membership_samples = cfg.samples;
  SuiteReport rep;
  rep.seed = cfg.seed;
  std::vector<std::string> sections = cfg.sections;
  if (sections.empty() || std::find(sections.begin(), sections.end(), "all") != sections.end()) {
    sections = {"lemma", "bounds", "means", "props", "quad"};
  }
  for (const std::string& s : sections) {
    if (s == "lemma") {
      add_lemma_cases(rep, opts);
    } else if (s == "bounds") {
      add_bound_cases(rep, opts);
    } else if (s == "means") {
      add_mean_cases(rep, opts);
    } else if (s == "props") {
      add_proposition_cases(rep, opts);
    } else if (s == "quad") {
      add_quadrature_cases(rep, opts);
    } else {
      throw UsageError("unknown section '" + s + "'");
    }
  }
  return rep;
}

void add_interval(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--a", cfg.a, "Left endpoint");
  sub->add_option("--b", cfg.b, "Right endpoint");
}

void add_class(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--h", cfg.h, "Weight h: t, t^s, 1, expr:<text>");
  sub->add_option("--alpha", cfg.alpha, "alpha in [0, 1]");
  sub->add_option("--m", cfg.m, "m in (0, 1]");
  sub->add_option("--s", cfg.s, "s in (0, 1]");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Hermite-Hadamard inequality checker for (h-(alpha,m))-convex functions", "hhc"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "Seed (HHC_SEED overrides)");
  app.add_option("--tol", cfg.tol, "Comparison tolerance");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));

  auto* check = app.add_subcommand("check-class", "Search for a convexity counterexample");
  auto* bound = app.add_subcommand("bound", "Evaluate a Hermite-Hadamard-type bound");
  auto* means = app.add_subcommand("means", "Mean chain and L_p monotonicity for a pair");
  auto* prop = app.add_subcommand("prop", "Check a special-means proposition");
  auto* quad = app.add_subcommand("quad", "Composite rule with an a priori error bound");
  auto* verify_cmd = app.add_subcommand("verify", "Run the full deterministic suite");

  for (CLI::App* sub : {check, bound, means, prop, quad, verify_cmd}) {
    // --h names the weight function, so help is long-form only.
    sub->set_help_flag("--help", "Print this help message and exit");
    // Global flags are also accepted after the subcommand name.
    sub->add_option("--seed", cfg.seed, "Seed (HHC_SEED overrides)");
    sub->add_option("--tol", cfg.tol, "Comparison tolerance");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--samples", cfg.samples, "Random membership samples");
  }

  check->add_option("--f", cfg.f, "Function of x")->required();
  check->add_option("--sense", cfg.sense, "Convexity sense");
  check->add_option("--target", cfg.target, "Check f, |f'| (abs-d1) or |f''| (abs-d2)");
  add_interval(check, cfg);
  add_class(check, cfg);

  bound->add_option("--rule", cfg.rule, "T1..T6, C1..C4 or all")->required();
  bound->add_option("--f", cfg.f, "Function of x")->required();
  bound->add_option("--p", cfg.p, "Hölder exponent p > 1");
  bound->add_option("--variant", cfg.variant, "T1 variant: printed or derived_tight");
  bound->add_flag("--skip-hypothesis", cfg.skip_hypothesis, "Do not check hypothesis membership");
  add_interval(bound, cfg);
  add_class(bound, cfg);

  add_interval(means, cfg);

  prop->add_option("--id", cfg.prop_id, "P1..P4 or all");
  prop->add_option("--p", cfg.p, "p > 1")->required();
  prop->add_option("--n", cfg.n_exp, "Exponent n for P4");
  add_interval(prop, cfg);

  quad->add_option("--rule", cfg.rule, "midpoint or trapezoid")->required();
  quad->add_option("--f", cfg.f, "Function of x")->required();
  quad->add_option("--n", cfg.n, "Uniform subintervals");
  quad->add_option("--points", cfg.points, "Explicit partition nodes")->delimiter(',');
  quad->add_option("--variant", cfg.variant, "Midpoint bound: statement or proofline");
  quad->add_option("--p", cfg.p, "Hölder exponent p > 1");
  quad->add_option("--alpha", cfg.alpha, "alpha in [0, 1]");
  quad->add_option("--m", cfg.m, "m in (0, 1]");
  add_interval(quad, cfg);

  verify_cmd->add_option("--sections", cfg.sections, "lemma, bounds, means, props, quad or all")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitHolds : kExitError;
  }

  try {
    if (const char* env = std::getenv("HHC_SEED"); env != nullptr && *env != '\0') {
      const std::string text(env);
      std::uint64_t v = 0;
      const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
      if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw UsageError("HHC_SEED must be a non-negative integer");
      }
      cfg.seed = v;
    }
    const Format format = format_from_string(cfg.format);

    SuiteReport rep;
    if (check->parsed()) {
      rep = run_check_class(cfg);
    } else if (bound->parsed()) {
      rep = run_bound(cfg);
    } else if (means->parsed()) {
      rep = run_means(cfg);
    } else if (prop->parsed()) {
      rep = run_prop(cfg);
    } else if (quad->parsed()) {
      rep = run_quad(cfg);
    } else {
      rep = run_verify(cfg);
    }
    rep.seed = cfg.seed;
    out << emit_report(rep, format);
    return rep.summary().flagged > 0 ? kExitFlagged : kExitHolds;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace hhc::cli
