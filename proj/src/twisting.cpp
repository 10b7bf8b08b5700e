#include "qre/twisting.hpp"

#include <algorithm>
#include <map>

#include "index_walk.hpp"
#include "qre/error.hpp"
#include "qre/memo.hpp"
#include "qre/qscalar.hpp"

namespace qre {

namespace {

int code(int n, int i, int j) { return (i - 1) * n + (j - 1); }

std::vector<int> chain_word(int n, const std::vector<int>& beta) {
  std::vector<int> w;
  for (std::size_t i = 0; i + 1 < beta.size(); ++i) w.push_back(code(n, beta[i], beta[i + 1]));
  return w;
}

LaurentInt product_of(const std::vector<int>& factors, int n) {
  LaurentInt c = 1;
  for (int e : factors) c *= one_minus_q_power(e, n);
  return c;
}

}  // namespace

FormalExpr diag_power_expr(int n, int k, int N) {
  require(N >= 1, "power must be positive");
  require(k >= 1 && k <= n, "diagonal index out of range");
  FormalExpr out;
  CompositionStream comps(N);
  while (auto lambda = comps.next()) {
    const auto factors = sigma_q_factors(lambda->parts());
    const LaurentInt c = product_of(factors, n);
    VSetStream tuples(k, *lambda);
    while (auto beta = tuples.next()) out.push_back({c, chain_word(n, *beta), factors});
  }
  return out;
}

FormalExpr reversed_block_expr(int N) {
  require(N >= 1, "power must be positive");
  const int n = 2;
  FormalExpr out;
  CompositionStream comps(N);
  while (auto lambda = comps.next()) {
    const auto factors = sigma_q_factors(lambda->parts());
    std::vector<int> word;
    const auto& parts = lambda->parts();
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      if (*it == 1) {
        word.push_back(code(n, 2, 2));
        continue;
      }
      word.push_back(code(n, 2, 1));
      for (int r = 0; r < *it - 2; ++r) word.push_back(code(n, 1, 1));
      word.push_back(code(n, 1, 2));
    }
    out.push_back({product_of(factors, n), std::move(word), factors});
  }
  return out;
}

FormalExpr twist_quadratic_expr(int n, int i, int j, int k, int l) {
  for (int x : {i, j, k, l}) require(x >= 1 && x <= n, "index out of range");
  const LaurentInt step = q_power(1, n) - q_power(-1, n);
  auto dl = [](int a, int b) { return a == b ? 1 : 0; };
  FormalExpr e;
  auto add = [&](const LaurentInt& c, int a, int b, int x, int y) {
    if (!c.is_zero()) e.push_back({c, {code(n, a, b), code(n, x, y)}, {}});
  };
  add(q_power(dl(j, k) - dl(i, k), n), i, j, k, l);
  if (k == j)
    for (int d = 1; d < j; ++d) add(step * q_power(-dl(i, k), n), i, d, d, l);
  if (k > i) {
    add(-step * q_power(dl(i, j), n), k, j, i, l);
    if (i == j)
      for (int b = 1; b < j; ++b) add(-(step * step), k, b, b, l);
  }
  return canonicalize(e);
}

std::vector<Word> normal_words(const FrAlgebra& alg, int degree) {
  require(degree >= 0, "degree must be nonnegative");
  std::vector<Word> out;
  Word current;
  const int letters = alg.num_letters();
  auto rec = [&](auto& self, int from, int left) -> void {
    if (left == 0) {
      out.push_back(current);
      return;
    }
    for (int x = from; x < letters; ++x) {
      current.push_back(static_cast<Letter>(x));
      self(self, x, left - 1);
      current.codes.pop_back();
    }
  };
  rec(rec, 0, degree);
  return out;
}

Twister::Twister(const BraidedAlgebra& braided)
    : br_(braided), alg_(braided.algebra()), rform_(braided.rform()) {}

template <class Recurse>
BraidedElement Twister::peel(const Word& w, Recurse&& twist_prefix) const {
  const int n = alg_.n();
  if (w.size() <= 1) return BraidedElement(Element::monomial(n, w));
  const std::size_t m = w.size() - 1;
  const Letter last = w.back();
  const int s = alg_.row(last);
  const int t = alg_.col(last);
  // R^-1(a1 ⊗ x^s_lambda): the last letter of a1 meets the first coproduct leg.
  std::vector<detail::Path> inverse_side;
  detail::walk(m, true, s,
               [&](std::size_t pos, int state) -> const std::vector<RForm::Link>& {
                 return rform_.by_rows(RVariant::kInverse, alg_.row(w[pos]), state);
               },
               inverse_side);
  std::map<int, std::map<Word, LaurentInt>> by_end;
  std::vector<detail::Path> r_side;
  for (int lambda = 1; lambda <= n; ++lambda) {
    if (std::none_of(inverse_side.begin(), inverse_side.end(),
                     [lambda](const detail::Path& p) { return p.end == lambda; }))
      continue;
    r_side.clear();
    detail::walk(m, false, lambda,
                 [&](std::size_t pos, int state) -> const std::vector<RForm::Link>& {
                   return rform_.by_col_row(RVariant::kR, alg_.col(w[pos]), state);
                 },
                 r_side);
    for (const auto& a : inverse_side) {
      if (a.end != lambda) continue;
      for (const auto& b : r_side) {
        Word middle;
        for (std::size_t i = 0; i < m; ++i) middle.push_back(alg_.letter(a.labels[i], b.labels[i]));
        auto& slot = by_end[b.end];
        auto [it, inserted] = slot.try_emplace(std::move(middle), a.coeff * b.coeff);
        if (!inserted) it->second += a.coeff * b.coeff;
      }
    }
  }
  Element result(n);
  for (const auto& [mu, words] : by_end) {
    Element head(n);
    for (const auto& [word, c] : words) {
      if (c.is_zero()) continue;
      head.add_scaled(twist_prefix(word).body, c);
    }
    if (head.is_zero()) continue;
    result += br_.multiply_generator(BraidedElement(std::move(head)), alg_.letter(mu, t)).body;
  }
  return BraidedElement(std::move(result));
}

BraidedElement Twister::twist_word(const Word& normal) const {
  if (normal.size() <= 1) return BraidedElement(Element::monomial(n(), normal));
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(normal.codes); it != cache_.end()) return BraidedElement(*it->second);
  }
  BraidedElement result = peel(normal, [this](const Word& prefix) { return twist(alg_.normal_form(prefix)); });
  auto ptr = std::make_shared<const Element>(result.body);
  std::lock_guard lock(mu_);
  make_room(cache_, cache_cap_);
  cache_.try_emplace(normal.codes, ptr);
  return result;
}

BraidedElement Twister::twist(const Element& a) const {
  if (a.n() != n()) fail(ErrorCode::kContextMismatch, "element belongs to a different matrix size");
  Element out(n());
  for (const auto& [w, c] : a.terms()) out.add_scaled(twist_word(w).body, c);
  return BraidedElement(std::move(out));
}

BraidedElement Twister::twist_unnormalized(const Word& raw) const {
  return peel(raw, [this](const Word& prefix) { return twist_unnormalized(prefix); });
}

BraidedElement Twister::diag_power_closed(int k, int N) const {
  require(N >= 2, "the closed formula needs N >= 2");
  return br_.evaluate(diag_power_expr(n(), k, N));
}

std::pair<LaurentInt, BraidedElement> Twister::offdiag_power(int k, int l, int N) const {
  require(k != l, "off-diagonal power needs k != l");
  require(N >= 0, "power must be nonnegative");
  require(k >= 1 && k <= n() && l >= 1 && l <= n(), "index out of range");
  const std::vector<Letter> letters(static_cast<std::size_t>(N), alg_.letter(k, l));
  return {q_power(-N * (N - 1) / 2, n()), br_.chain(letters)};
}

BraidedElement Twister::mixed_closed(int k, int l, int N) const {
  require(N >= 1, "power must be positive");
  require(k >= 1 && k <= n() && l >= 1 && l <= n(), "index out of range");
  Element out(n());
  for (int i = 0; i <= N; ++i) {
    if (i > 0 && k == 1) continue;
    LaurentInt c = 1;
    for (int j = 1; j <= i; ++j) c *= one_minus_q_power(-2 * (N + 1 - j), n());
    const BraidedElement head = twist(alg_.power(alg_.letter(k, k), N - i));
    // beta_1 = k, beta_2 .. beta_{i+1} < k
    std::vector<int> beta(static_cast<std::size_t>(i) + 1, 1);
    beta[0] = k;
    while (true) {
      BraidedElement acc = head;
      for (int j = 0; j < i; ++j) acc = br_.multiply_generator(acc, alg_.letter(beta[j], beta[j + 1]));
      acc = br_.multiply_generator(acc, alg_.letter(beta[i], l));
      out.add_scaled(acc.body, c);
      int pos = i;
      while (pos >= 1 && beta[pos] == k - 1) beta[pos--] = 1;
      if (pos < 1) break;
      ++beta[pos];
    }
  }
  return BraidedElement(std::move(out));
}

BraidedElement Twister::mixed_recursion(int k, int l, int N) const {
  require(N >= 1, "power must be positive");
  const Letter diag = alg_.letter(k, k);
  BraidedElement out = br_.multiply_generator(twist(alg_.power(diag, N)), alg_.letter(k, l));
  const LaurentInt c = one_minus_q_power(-2 * N, n());
  for (int b = 1; b < k; ++b) {
    const Element lower = alg_.multiply_letter(alg_.power(diag, N - 1), alg_.letter(k, b));
    out += br_.multiply_generator(twist(lower), alg_.letter(b, l)).scaled(c);
  }
  return out;
}

std::uint64_t Twister::degree_determinant_mod(int degree, std::uint64_t p, std::uint64_t v0) const {
  const auto words = normal_words(alg_, degree);
  const std::size_t dim = words.size();
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < dim; ++i) index.emplace(words[i], i);
  std::vector<std::vector<std::uint64_t>> mat(dim, std::vector<std::uint64_t>(dim, 0));
  for (std::size_t c = 0; c < dim; ++c) {
    const BraidedElement image = twist_word(words[c]);
    for (const auto& [w, coeff] : image.body.terms()) {
      mat[index.at(w)][c] = coeff.eval_mod(p, v0);
    }
  }
  auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
      if (e & 1) r = mulmod(r, a);
    return r;
  };
  std::uint64_t det = 1;
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t piv = col;
    while (piv < dim && mat[piv][col] == 0) ++piv;
    if (piv == dim) return 0;
    if (piv != col) {
      std::swap(mat[piv], mat[col]);
      det = (p - det) % p;
    }
    det = mulmod(det, mat[col][col]);
    const std::uint64_t inv = powmod(mat[col][col], p - 2);
    for (std::size_t r = col + 1; r < dim; ++r) {
      if (mat[r][col] == 0) continue;
      const std::uint64_t f = mulmod(mat[r][col], inv);
      for (std::size_t c = col; c < dim; ++c) mat[r][c] = (mat[r][c] + p - mulmod(f, mat[col][c])) % p;
    }
  }
  return det;
}

std::size_t Twister::cache_size() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

}  // namespace qre
