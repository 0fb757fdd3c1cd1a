#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hhc/cli.hpp"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hhc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check-class") {
  const Result r = run({"check-class", "--f", "x^2", "--sense", "convex", "--a", "0", "--b", "10"});
  CHECK(r.code == 0);
  const Result bad = run({"check-class", "--f", "x^0.5", "--sense", "convex", "--a", "0", "--b", "4"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("counterexample") != std::string::npos);
  const Result d1 = run({"check-class", "--f", "exp(x)", "--sense", "h_alpha_m", "--target", "abs-d1", "--a", "0",
                         "--b", "2", "--format", "json"});
  CHECK(d1.code == 0);
}

TEST_CASE("bound T4 equality case") {
  const Result r =
      run({"bound", "--rule", "T4", "--f", "x^2", "--a", "0", "--b", "1", "--h", "t", "--alpha", "1", "--m", "1",
           "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["cases"][0]["margin"].get<double>()) <= 1e-12);
  CHECK(j["cases"][0]["verdict"] == "holds");
}

TEST_CASE("quad midpoint fixture") {
  const Result r =
      run({"quad", "--rule", "midpoint", "--f", "x^2", "--a", "0", "--b", "1", "--n", "1", "--p", "2", "--format",
           "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["cases"][0]["lhs"].get<double>() == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(j["cases"][0]["rhs"].get<double>() == doctest::Approx(0.1767766952966369).epsilon(1e-14));
  const Result pts = run({"quad", "--rule", "trapezoid", "--f", "exp(x)", "--points", "0,0.25,1"});
  CHECK(pts.code == 0);
}

TEST_CASE("means and propositions") {
  CHECK(run({"means", "--a", "1", "--b", "2"}).code == 0);
  CHECK(run({"prop", "--id", "P3", "--a", "1", "--b", "2", "--p", "2"}).code == 0);
  CHECK(run({"prop", "--id", "P4", "--a", "1", "--b", "2", "--p", "2"}).code == 1);
}

TEST_CASE("usage and domain errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"bound", "--rule", "T2", "--f", "x^2"}).code == 2);  // missing --p
  CHECK(run({"bound", "--rule", "T1", "--f", "ln(", "--a", "1", "--b", "2"}).code == 2);
  CHECK(run({"bound", "--rule", "T1", "--f", "ln(x)", "--a", "0", "--b", "1"}).code == 2);
  CHECK(run({"means", "--a", "-1", "--b", "2"}).code == 2);
  CHECK(run({"verify", "--sections", "nope"}).code == 2);
  CHECK(run({"--format", "xml", "means"}).code == 2);
  CHECK(run({"quad", "--rule", "simpson", "--f", "x"}).code == 2);
}

TEST_CASE("help exits 0") {
  const Result r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
  CHECK(run({"bound", "--help"}).code == 0);
}

TEST_CASE("HHC_SEED overrides --seed") {
  setenv("HHC_SEED", "7", 1);
  const Result r = run({"means", "--a", "1", "--b", "2", "--seed", "3", "--format", "json"});
  unsetenv("HHC_SEED");
  CHECK(nlohmann::json::parse(r.out)["seed"] == 7);
  const Result s = run({"means", "--a", "1", "--b", "2", "--seed", "3", "--format", "json"});
  CHECK(nlohmann::json::parse(s.out)["seed"] == 3);
  setenv("HHC_SEED", "abc", 1);
  CHECK(run({"means", "--a", "1", "--b", "2"}).code == 2);
  unsetenv("HHC_SEED");
}

TEST_CASE("verify sections are deterministic") {
  const Result a = run({"verify", "--sections", "lemma,means", "--format", "csv"});
  const Result b = run({"verify", "--sections", "lemma,means", "--format", "csv"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("case_id,rule,params,lhs,rhs,margin,verdict\n", 0) == 0);
}
