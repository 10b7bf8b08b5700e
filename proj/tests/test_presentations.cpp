#include <algorithm>

#include "doctest.h"
#include "qre/context.hpp"
#include "qre/error.hpp"
#include "qre/presentations.hpp"

using namespace qre;

namespace {

const FormalRelation* find(const PresentationDoc& doc, const std::string& tag, std::vector<int> idx = {}) {
  for (const auto& r : doc.relations)
    if (r.tag == tag && (idx.empty() || r.indices == idx)) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("relation counts per family") {
  for (int n = 1; n <= 4; ++n) {
    for (Family f : {Family::kMn, Family::kGLn, Family::kSLn}) CHECK(present(f, n).relations.size() == expected_relation_count(f, n));
    for (Family f : {Family::kSmallGLn, Family::kSmallSLn})
      for (int ell : {3, 5}) CHECK(present(f, n, ell).relations.size() == expected_relation_count(f, n));
  }
  CHECK(expected_relation_count(Family::kMn, 2) == 6);
  CHECK(expected_relation_count(Family::kMn, 3) == 36);
  CHECK(expected_relation_count(Family::kSmallSLn, 3) == 46);
}

TEST_CASE("tag counts") {
  const auto doc = present(Family::kSmallGLn, 3, 3);
  CHECK(doc.count_tag("nilpotent") == 6);
  CHECK(doc.count_tag("unipotent") == 3);
  CHECK(doc.count_tag("quadratic") == 36);
  CHECK(present(Family::kGLn, 2).count_tag("inverse") == 2);
  CHECK(present(Family::kGLn, 2).has_inverse_generator());
  CHECK_FALSE(present(Family::kSLn, 2).has_inverse_generator());
}

TEST_CASE("every relation holds in the braided algebra") {
  for (int n = 1; n <= 3; ++n) {
    Context ctx(n);
    for (const auto& r : present(Family::kSLn, n).relations) {
      if (r.tag == "determinant") continue;
      CHECK_MESSAGE(ctx.braided().residual(r).is_zero(), r.tag);
    }
  }
}

TEST_CASE("unipotent relations at n = 2, ell = 3") {
  const auto doc = present(Family::kSmallGLn, 2, 3);
  const auto* r1 = find(doc, "unipotent", {1});
  REQUIRE(r1);
  REQUIRE(r1->lhs.size() == 1);
  CHECK(r1->lhs[0].word == std::vector<int>{0, 0, 0});
  const auto* r2 = find(doc, "unipotent", {2});
  REQUIRE(r2);
  CHECK(r2->lhs.size() == 4);
  const CyclotomicCtx cyc(3, 2);
  // d^3 - 1 specialised: every term coefficient is nonzero mod the cyclotomic polynomial.
  for (const auto& t : r2->lhs) CHECK_FALSE(cyc.is_zero(t.coeff));
}

TEST_CASE("n = 1 small algebra") {
  const auto doc = present(Family::kSmallGLn, 1, 3);
  REQUIRE(doc.relations.size() == 1);
  CHECK(doc.relations[0].tag == "unipotent");
  CHECK(to_text(doc).find("u[1,1]^3 = 1") != std::string::npos);
}

TEST_CASE("the determinant relation uses the corrected exponents") {
  const auto doc = present(Family::kSmallSLn, 3, 3);
  const auto* det = find(doc, "determinant");
  REQUIRE(det);
  CHECK(det->lhs.size() == 6);
  Context ctx(3);
  CHECK(ctx.braided().evaluate(det->lhs) == ctx.twister().twist(ctx.algebra().qdet()));
}

TEST_CASE("json round trip is exact and deterministic") {
  for (Family f : {Family::kMn, Family::kGLn, Family::kSLn}) {
    const auto doc = present(f, 3);
    const auto j = to_json(doc);
    CHECK(to_json(presentation_from_json(j)) == j);
    CHECK(j.dump() == to_json(present(f, 3)).dump());
  }
  const auto small = present(Family::kSmallSLn, 2, 5);
  CHECK(to_json(presentation_from_json(to_json(small))) == to_json(small));
  CHECK(to_json(small)["ring"]["base"] == "Z[eps]");
}

TEST_CASE("renderings") {
  const auto doc = present(Family::kMn, 2);
  const std::string text = to_text(doc);
  CHECK(text.find("u[1,2]·u[1,1] - q^2·u[1,1]·u[1,2] = 0") != std::string::npos);
  const std::string tex = to_latex(doc);
  CHECK(tex.find("u^{1}_{2}") != std::string::npos);
  CHECK(to_text(present(Family::kSmallGLn, 2, 3)).find("ε^2") != std::string::npos);
}

TEST_CASE("term counts of the unipotent relation") {
  auto tc = count_terms(2, 3, 2);
  CHECK(tc.enumerated == 4);
  CHECK(tc.formula == 4);
  tc = count_terms(2, 3, 1);
  CHECK(tc.enumerated == 1);
  CHECK(tc.agrees());
  tc = count_terms(3, 5, 3);
  CHECK(tc.enumerated == 81);
  CHECK(tc.formula == 31);
  for (int ell : {3, 5, 7})
    for (int k = 1; k <= 3; ++k) {
      std::uint64_t pw = 1;
      for (int i = 1; i < ell; ++i) pw *= static_cast<std::uint64_t>(k);
      CHECK(count_terms(3, ell, k).enumerated == pw);
    }
  for (int ell : {3, 5}) {
    const auto doc = present(Family::kSmallGLn, 3, ell);
    for (int k = 1; k <= 3; ++k) CHECK(find(doc, "unipotent", {k})->lhs.size() == count_terms(3, ell, k).enumerated);
  }
}

TEST_CASE("invalid requests") {
  CHECK_THROWS_AS(present(Family::kSmallGLn, 2), Error);
  CHECK_THROWS_AS(present(Family::kSmallGLn, 2, 4), Error);
  CHECK_THROWS_AS(present(Family::kMn, 2, 3), Error);
  CHECK_THROWS_AS(present(Family::kMn, 9), Error);
  CHECK_THROWS_AS(parse_family("nope"), Error);
  CHECK(parse_family("small-sln") == Family::kSmallSLn);
  CHECK_THROWS_AS(count_terms(3, 4, 1), Error);
  CHECK_THROWS_AS(count_terms(3, 3, 4), Error);
  CHECK_THROWS_AS(presentation_from_json(nlohmann::json::parse(R"({"algebra":"mn"})")), Error);
}
