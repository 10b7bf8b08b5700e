#include <algorithm>
#include <cstdint>
#include "doctest.h"
#include "qre/error.hpp"
#include "qre/verify.hpp"

using namespace qre;

namespace {

const CheckResult* check(const SuiteReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("suite names") {
  const auto& names = suite_names();
  for (const char* s : {"ring", "fr", "rform", "braided", "twist", "theorem", "examples", "counts"})
    CHECK(std::find(names.begin(), names.end(), s) != names.end());
  CHECK_THROWS_AS(run_suite("nope", {}), Error);
}

TEST_CASE("theorem cell n = 2, ell = 3") {
  SuiteParams p;
  p.n = {2};
  p.ell = {3};
  const auto r = run_suite("theorem", p);
  CHECK(r.passed());
  CHECK_FALSE(r.checks.empty());
}

TEST_CASE("examples: the five-term display differs only term-wise") {
  const auto r = run_suite("examples", {});
  const auto* basis = check(r, "examples/ell5-gl2-display/basis");
  const auto* terms = check(r, "examples/ell5-gl2-display/terms");
  REQUIRE(basis);
  REQUIRE(terms);
  CHECK(basis->passed);
  CHECK_FALSE(terms->passed);
  CHECK(terms->detail.find("4") != std::string::npos);
}

TEST_CASE("infeasible grids are refused") {
  SuiteParams p;
  p.n = {3};
  p.ell = {7};
  try {
    run_suite("theorem", p);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasible);
  }
  p.n = {2};
  p.ell = {9};
  p.budget = 1024;
  CHECK_THROWS_AS(run_suite("theorem", p), Error);
}

TEST_CASE("expansion cost saturates") {
  CHECK(expansion_cost(2, 3) == 64);
  CHECK(expansion_cost(3, 2) == 81);
  CHECK(expansion_cost(8, 100) == UINT64_MAX);
}

TEST_CASE("reports are deterministic across runs and worker counts") {
  SuiteParams p;
  p.n = {2};
  const auto a = run_suite("braided", p).to_json().dump();
  p.workers = 3;
  const auto b = run_suite("braided", p).to_json();
  CHECK(a == b.dump());
  CHECK(b.contains("wall_seconds") == false);
}

TEST_CASE("counts suite") {
  SuiteParams p;
  p.ell = {3};
  const auto r = run_suite("counts", p);
  CHECK(r.checks.size() > 0);
}
