#include "doctest.h"
#include "qre/context.hpp"
#include "qre/presentations.hpp"
#include "qre/qscalar.hpp"

using qre::BraidedElement;
using qre::Context;
using qre::Element;
using qre::LaurentInt;

namespace {

LaurentInt q(int e, int n) { return LaurentInt::v_power(e * n); }

const Context& ctx(int n) {
  static const Context c1(1), c2(2), c3(3), c4(4);
  const Context* all[] = {&c1, &c2, &c3, &c4};
  return *all[n - 1];
}

Element power(int n, int k, int l, int N) { return ctx(n).algebra().power(ctx(n).algebra().letter(k, l), N); }

}  // namespace

TEST_CASE("twisting fixes the unit and generators") {
  for (int n = 1; n <= 3; ++n) {
    const auto& tw = ctx(n).twister();
    CHECK(tw.twist(Element::one(n)).body == Element::one(n));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) CHECK(tw.twist(ctx(n).algebra().generator(i, j)).body == ctx(n).algebra().generator(i, j));
  }
}

TEST_CASE("twisting the two-by-two determinant") {
  const auto& c = ctx(2);
  const auto& br = c.braided();
  const BraidedElement expect = br.multiply(br.generator(2, 2), br.generator(1, 1)) -
                                br.multiply(br.generator(2, 1), br.generator(1, 2)).scaled(q(2, 2));
  CHECK(c.twister().twist(c.algebra().qdet()) == expect);
}

TEST_CASE("twisted determinants equal the closed braided formula") {
  for (int n = 1; n <= 3; ++n) CHECK(ctx(n).twister().twist(ctx(n).algebra().qdet()) == ctx(n).braided().det());
}

TEST_CASE("twist of quadratic monomials") {
  for (int n = 2; n <= 3; ++n) {
    const auto& c = ctx(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            const Element w = c.algebra().normal_form(c.algebra().make_word({{i, j}, {k, l}}));
            CHECK(c.twister().twist(w) == c.braided().evaluate(qre::twist_quadratic_expr(n, i, j, k, l)));
          }
  }
}

TEST_CASE("off-diagonal powers twist to scaled braided powers") {
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= n; ++k)
      for (int l = 1; l <= n; ++l) {
        if (k == l) continue;
        auto [s1, e1] = ctx(n).twister().offdiag_power(k, l, 1);
        CHECK(s1 == LaurentInt(1));
        CHECK(e1 == ctx(n).braided().generator(k, l));
        auto [s3, e3] = ctx(n).twister().offdiag_power(k, l, 3);
        CHECK(s3 == q(-3, n));
        for (int N = 0; N <= 6; ++N) {
          auto [s, e] = ctx(n).twister().offdiag_power(k, l, N);
          CHECK(ctx(n).twister().twist(power(n, k, l, N)) == e.scaled(s));
        }
      }
}

TEST_CASE("diagonal powers") {
  for (int n = 1; n <= 3; ++n)
    for (int N = 2; N <= (n == 3 ? 4 : 5); ++N) {
      const auto& c = ctx(n);
      CHECK(c.twister().twist(power(n, 1, 1, N)) == c.braided().power(c.braided().generator(1, 1), N));
      for (int k = 1; k <= n; ++k) {
        const BraidedElement direct = c.twister().twist(power(n, k, k, N));
        CHECK(direct == c.twister().diag_power_closed(k, N));
        CHECK(direct == c.braided().evaluate(qre::diag_power_expr(n, k, N)));
      }
    }
  const auto& c = ctx(2);
  for (int N = 2; N <= 7; ++N) {
    const BraidedElement direct = c.twister().twist(power(2, 2, 2, N));
    CHECK(direct == c.braided().evaluate(qre::reversed_block_expr(N)));
    CHECK(direct == c.twister().diag_power_closed(2, N));
  }
}

TEST_CASE("the cube of the last diagonal generator at n = 2") {
  const auto& c = ctx(2);
  const auto& br = c.braided();
  const auto a = br.generator(1, 1), b = br.generator(1, 2), cc = br.generator(2, 1), d = br.generator(2, 2);
  auto chain = [&](std::initializer_list<BraidedElement> xs) {
    BraidedElement acc = br.unit();
    for (const auto& x : xs) acc = br.multiply(acc, x);
    return acc;
  };
  const LaurentInt f2 = LaurentInt(1) - q(-2, 2), f4 = LaurentInt(1) - q(-4, 2);
  const BraidedElement expect =
      chain({d, d, d}) + chain({d, cc, b}).scaled(f2) + chain({cc, b, d}).scaled(f4) + chain({cc, a, b}).scaled(f2 * f4);
  CHECK(c.twister().twist(power(2, 2, 2, 3)) == expect);
}

TEST_CASE("mixed powers: closed sum and recursion") {
  for (int n = 2; n <= 3; ++n) {
    const auto& tw = ctx(n).twister();
    for (int k = 1; k <= n; ++k)
      for (int l = 1; l <= n; ++l) {
        const Element w1 = ctx(n).algebra().multiply_letter(power(n, k, k, 1), ctx(n).algebra().letter(k, l));
        CHECK(tw.mixed_closed(k, l, 1) == ctx(n).braided().evaluate(qre::twist_quadratic_expr(n, k, k, k, l)));
        for (int N = 1; N <= 4; ++N) {
          const Element w = ctx(n).algebra().multiply_letter(power(n, k, k, N), ctx(n).algebra().letter(k, l));
          const BraidedElement direct = tw.twist(w);
          CHECK(direct == tw.mixed_closed(k, l, N));
          CHECK(direct == tw.mixed_recursion(k, l, N));
        }
        (void)w1;
      }
  }
}

TEST_CASE("twisting respects the relations of the source algebra") {
  for (int n = 2; n <= 3; ++n) {
    const auto& c = ctx(n);
    for (const auto& w : qre::normal_words(c.algebra(), 2))
      for (int x = 0; x < c.algebra().num_letters(); ++x) {
        qre::Word raw;
        raw.push_back(static_cast<qre::Letter>(x));
        raw = raw + w;
        CHECK(c.twister().twist_unnormalized(raw) == c.twister().twist(c.algebra().normal_form(raw)));
      }
  }
}

TEST_CASE("twisting is injective in low degree") {
  constexpr std::uint64_t p = 2147483647;
  for (int d = 1; d <= 4; ++d) CHECK(ctx(2).twister().degree_determinant_mod(d, p, 3) != 0);
  for (int d = 1; d <= 3; ++d) CHECK(ctx(3).twister().degree_determinant_mod(d, p, 3) != 0);
}

TEST_CASE("normal words are counted by multisets") {
  CHECK(qre::normal_words(ctx(2).algebra(), 3).size() == 20);
  CHECK(qre::normal_words(ctx(3).algebra(), 2).size() == 45);
}
