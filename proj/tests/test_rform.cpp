#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qre/r_form.hpp"

using qre::FrAlgebra;
using qre::LaurentInt;
using qre::RForm;
using qre::RVariant;
using qre::Word;

namespace {

LaurentInt q(int e, int n) { return LaurentInt::v_power(e * n); }

Word random_word(const FrAlgebra& alg, int len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, alg.num_letters() - 1);
  Word out;
  for (int i = 0; i < len; ++i) out.push_back(static_cast<qre::Letter>(pick(rng)));
  return out;
}

}  // namespace

TEST_CASE("generator tables follow the closed formulas") {
  for (int n = 1; n <= 4; ++n) {
    const FrAlgebra alg(n);
    const RForm rf(alg);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            CHECK(rf.entry(RVariant::kR, i, j, k, l) == oracle::r_entry(i, j, k, l, n));
            CHECK(rf.entry(RVariant::kInverse, i, j, k, l) == oracle::rinv_entry(i, j, k, l, n));
          }
    CHECK(rf.entry(RVariant::kR, 1, 1, 1, 1) == LaurentInt::v_power(n - 1));
    if (n >= 2) CHECK(rf.entry(RVariant::kR, 1, 2, 2, 1) == LaurentInt::v_power(-1) * (q(1, n) - q(-1, n)));
  }
}

TEST_CASE("the tilde table inverts R with opposite legs") {
  for (int n = 2; n <= 3; ++n) {
    const FrAlgebra alg(n);
    const RForm rf(alg);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            LaurentInt s;
            for (int m = 1; m <= n; ++m)
              for (int p = 1; p <= n; ++p) s += rf.entry(RVariant::kTilde, i, m, p, l) * oracle::r_entry(m, j, k, p, n);
            CHECK(s == LaurentInt(i == j && k == l ? 1 : 0));
          }
  }
}

TEST_CASE("the same-legs table solves its own identity") {
  // Only the table; this convention is not used for products.
  for (int n = 2; n <= 3; ++n) {
    const FrAlgebra alg(n);
    const RForm rf(alg, qre::TildeConvention::kSameLegs);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            LaurentInt s;
            for (int m = 1; m <= n; ++m)
              for (int p = 1; p <= n; ++p) s += rf.entry(RVariant::kTilde, i, m, k, p) * oracle::r_entry(m, j, p, l, n);
            CHECK(s == LaurentInt(i == j && k == l ? 1 : 0));
          }
  }
}

TEST_CASE("pairings on words match the grid state sum") {
  std::mt19937_64 rng(19);
  for (int n = 2; n <= 3; ++n) {
    const FrAlgebra alg(n);
    const RForm rf(alg);
    std::uniform_int_distribution<int> len(0, n == 2 ? 3 : 2);
    for (int t = 0; t < 40; ++t) {
      const Word a = random_word(alg, len(rng), rng), b = random_word(alg, len(rng), rng);
      for (auto v : {RVariant::kR, RVariant::kInverse, RVariant::kTilde})
        CHECK(rf.eval(v, a, b) == oracle::grid_pairing(rf, v, oracle::from_word(a, n), oracle::from_word(b, n), n));
    }
  }
}

TEST_CASE("pairing values on short words") {
  for (int n = 1; n <= 3; ++n) {
    const FrAlgebra alg(n);
    const RForm rf(alg);
    CHECK(rf.eval(RVariant::kR, qre::parse_word("x[1,1]^2", n), qre::parse_word("x[1,1]", n)) ==
          LaurentInt::v_power(2 * (n - 1)));
    const Word b = qre::parse_word(n >= 2 ? "x[1,2]*x[2,1]" : "x[1,1]^2", n);
    CHECK(rf.eval(RVariant::kR, Word(), b) == alg.counit(b));
  }
  const FrAlgebra alg(2);
  const RForm rf(alg);
  LaurentInt s;
  for (int x = 1; x <= 2; ++x)
    for (int y = 1; y <= 2; ++y)
      s += rf.entry(RVariant::kInverse, 1, x, 2, y) * rf.entry(RVariant::kR, x, 2, y, 1);
  CHECK(s.is_zero());
}

TEST_CASE("pairings are multiplicative-compatible with the algebra") {
  // Equal elements must pair equally: pairing a word and its normal form.
  std::mt19937_64 rng(23);
  const FrAlgebra alg(2);
  const RForm rf(alg);
  for (int t = 0; t < 30; ++t) {
    const Word a = random_word(alg, 2, rng), b = random_word(alg, 2, rng);
    LaurentInt via_normal;
    const qre::Element normal = alg.normal_form(a);
    for (const auto& [u, c] : normal.terms()) via_normal += c * rf.eval(RVariant::kR, u, b);
    CHECK(rf.eval(RVariant::kR, a, b) == via_normal);
  }
}

TEST_CASE("R tables dump as JSON") {
  const FrAlgebra alg(2);
  const RForm rf(alg);
  const auto j = rf.to_json();
  CHECK(j.at("R").size() == 4);
  CHECK(j.at("Rtilde").at(0).size() == 4);
  CHECK(j.at("convention") == "opposite-legs");
}
