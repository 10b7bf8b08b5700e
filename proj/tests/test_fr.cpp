#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qre/error.hpp"
#include "qre/fr_algebra.hpp"

using qre::Element;
using qre::FrAlgebra;
using qre::LaurentInt;
using qre::Word;

namespace {

LaurentInt q(int e, int n) { return LaurentInt::v_power(e * n); }

Word w(const FrAlgebra& alg, std::string_view text) { return qre::parse_word(text, alg.n()); }

Element el(const FrAlgebra& alg, std::string_view text, const LaurentInt& c = 1) {
  return Element::monomial(alg.n(), w(alg, text), c);
}

Word random_word(const FrAlgebra& alg, int len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, alg.num_letters() - 1);
  Word out;
  for (int i = 0; i < len; ++i) out.push_back(static_cast<qre::Letter>(pick(rng)));
  return out;
}

Element random_element(const FrAlgebra& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 3), c(-3, 3), e(-2, 2);
  Element out(alg.n());
  for (int t = 0; t < 3; ++t) out += alg.normal_form(random_word(alg, len(rng), rng), LaurentInt::monomial(c(rng), e(rng)));
  return out;
}

}  // namespace

TEST_CASE("two-letter normal forms") {
  const FrAlgebra alg(2);
  const int n = 2;
  CHECK(alg.normal_form(w(alg, "x[2,1]*x[1,2]")) == el(alg, "x[1,2]*x[2,1]"));
  CHECK(alg.normal_form(w(alg, "x[2,2]*x[1,1]")) ==
        el(alg, "x[1,1]*x[2,2]") + el(alg, "x[1,2]*x[2,1]", q(1, n) - q(-1, n)));
  CHECK(alg.multiply(el(alg, "x[1,1]"), el(alg, "x[1,2]")) == el(alg, "x[1,1]*x[1,2]"));
  CHECK(alg.multiply(el(alg, "x[1,2]"), el(alg, "x[1,1]")) == el(alg, "x[1,1]*x[1,2]", q(1, n)));
  CHECK(alg.multiply(Element::one(n), el(alg, "x[2,1]")) == el(alg, "x[2,1]"));
}

TEST_CASE("three-letter reduction in a row") {
  // Both reorderings move x[1,2] past x[1,1] exactly once.
  const FrAlgebra alg(2);
  const Element got = alg.normal_form(w(alg, "x[1,2]*x[1,1]*x[1,2]"));
  CHECK(got == el(alg, "x[1,1]*x[1,2]^2", q(1, 2)));
  CHECK(got == oracle::to_element(oracle::normal_form(oracle::from_word(w(alg, "x[1,2]*x[1,1]*x[1,2]"), 2), 2), 2));
}

TEST_CASE("swap rules agree with the defining relations") {
  for (int n = 1; n <= 4; ++n) {
    const FrAlgebra alg(n);
    for (int y = 0; y < alg.num_letters(); ++y)
      for (int x = 0; x < y; ++x) {
        Element lib(n), ref(n);
        for (const auto& t : alg.swap_rule(static_cast<qre::Letter>(y), static_cast<qre::Letter>(x))) {
          Word pair;
          pair.push_back(t.first);
          pair.push_back(t.second);
          lib.add_term(pair, t.coeff);
        }
        Word yx;
        yx.push_back(static_cast<qre::Letter>(y));
        yx.push_back(static_cast<qre::Letter>(x));
        ref = oracle::to_element(oracle::normal_form(oracle::from_word(yx, n), n), n);
        CHECK(lib == ref);
      }
  }
}

TEST_CASE("normal form matches a leftmost-first rewriter") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 3; ++n) {
    const FrAlgebra alg(n);
    std::uniform_int_distribution<int> len(0, n == 3 ? 5 : 7);
    for (int t = 0; t < 80; ++t) {
      const Word word = random_word(alg, len(rng), rng);
      const Element lib = alg.normal_form(word);
      CHECK(lib == oracle::to_element(oracle::normal_form(oracle::from_word(word, n), n), n));
      for (const auto& [u, c] : lib.terms()) CHECK(alg.is_normal(u));
    }
  }
}

TEST_CASE("product agrees with the rewriter and is associative") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 3; ++n) {
    const FrAlgebra alg(n);
    for (int t = 0; t < 15; ++t) {
      const Element a = random_element(alg, rng), b = random_element(alg, rng), c = random_element(alg, rng);
      const Element ab = alg.multiply(a, b);
      CHECK(ab == oracle::to_element(oracle::multiply(oracle::from_element(a), oracle::from_element(b), n), n));
      CHECK(alg.multiply(ab, c) == alg.multiply(a, alg.multiply(b, c)));
    }
  }
}

TEST_CASE("coproduct and counit on generators") {
  const FrAlgebra alg(2);
  qre::TensorElement expect;
  expect.n = 2;
  expect.add(w(alg, "x[1,1]"), w(alg, "x[1,2]"), 1);
  expect.add(w(alg, "x[1,2]"), w(alg, "x[2,2]"), 1);
  CHECK(alg.coproduct(el(alg, "x[1,2]")) == expect);
  qre::TensorElement unit;
  unit.n = 2;
  unit.add(Word(), Word(), 1);
  CHECK(alg.coproduct(Element::one(2)) == unit);
  CHECK(alg.counit(w(alg, "x[1,1]*x[2,2]")) == LaurentInt(1));
  CHECK(alg.counit(w(alg, "x[1,2]")).is_zero());
}

TEST_CASE("quantum determinants") {
  const FrAlgebra a1(1);
  CHECK(a1.qdet() == el(a1, "x[1,1]"));
  const FrAlgebra a2(2);
  CHECK(a2.qdet() == el(a2, "x[1,1]*x[2,2]") - el(a2, "x[1,2]*x[2,1]", q(-1, 2)));
  for (int n = 1; n <= 3; ++n) CHECK(FrAlgebra(n).counit(FrAlgebra(n).qdet()) == LaurentInt(1));
}

TEST_CASE("word text and JSON round trips") {
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 4; ++n) {
    const FrAlgebra alg(n);
    for (int t = 0; t < 30; ++t) {
      const Word word = random_word(alg, t % 6, rng);
      CHECK(qre::parse_word(qre::word_to_string(word, n), n) == word);
      CHECK(qre::word_from_json(qre::word_to_json(word, n), n) == word);
    }
    const Element e = alg.qdet();
    CHECK(Element::from_json(e.to_json()) == e);
  }
  CHECK(qre::parse_word("x[1,1]^3*x[1,2]", 2).size() == 4);
  CHECK(qre::parse_word("x[1,1]·x[1,2]", 2).size() == 2);
  CHECK(qre::parse_word("1", 2).empty());
  CHECK_THROWS_AS(qre::parse_word("x[3,1]", 2), qre::Error);
  CHECK_THROWS_AS(qre::parse_word("x[1,1] x[1,2]", 2), qre::Error);
  CHECK_THROWS_AS(qre::parse_word("y[1,1]", 2), qre::Error);
  CHECK_THROWS_AS(FrAlgebra(9), qre::Error);
}

TEST_CASE("memo cap keeps results unchanged") {
  const FrAlgebra capped(3);
  capped.set_cache_cap(4);
  const FrAlgebra free(3);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const Element a = random_element(free, rng), b = random_element(free, rng);
    CHECK(capped.multiply(a, b) == free.multiply(a, b));
  }
  CHECK(capped.cache_size() <= 4);
}
