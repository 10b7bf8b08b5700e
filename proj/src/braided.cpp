#include "qre/braided.hpp"

#include <map>

#include "qre/combinatorics.hpp"
#include "qre/error.hpp"
#include "qre/memo.hpp"
#include "index_walk.hpp"

namespace qre {

nlohmann::json BraidedElement::to_json() const {
  nlohmann::json j = body.to_json();
  j["algebra"] = "braided";
  return j;
}

FormalExpr canonicalize(const FormalExpr& e) {
  FormalExpr out;
  std::map<std::vector<int>, std::size_t> seen;
  for (const auto& t : e) {
    if (t.coeff.is_zero()) continue;
    auto [it, inserted] = seen.try_emplace(t.word, out.size());
    if (inserted) {
      out.push_back(t);
    } else {
      auto& slot = out[it->second];
      slot.coeff += t.coeff;
      slot.factors.clear();
    }
  }
  FormalExpr nonzero;
  for (auto& t : out)
    if (!t.coeff.is_zero()) nonzero.push_back(std::move(t));
  return nonzero;
}

FormalExpr negate(const FormalExpr& e) {
  FormalExpr out = e;
  for (auto& t : out) {
    t.coeff = -t.coeff;
    t.factors.clear();
  }
  return out;
}

namespace {

int delta(int a, int b) { return a == b ? 1 : 0; }

int code(int n, int i, int j) { return (i - 1) * n + (j - 1); }

struct ExprBuilder {
  int n;
  FormalExpr expr;

  void pair(const LaurentInt& c, int a, int b, int x, int y) {
    if (c.is_zero()) return;
    expr.push_back({c, {code(n, a, b), code(n, x, y)}, {}});
  }
};

}  // namespace

std::vector<std::vector<int>> quadratic_indices(int n, int family) {
  std::vector<std::vector<int>> out;
  switch (family) {
    case 1:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int l = j + 1; l <= n; ++l) out.push_back({i, j, l});
      break;
    case 2:
      for (int i = 1; i <= n; ++i)
        for (int k = i + 1; k <= n; ++k)
          for (int j = 1; j <= n; ++j) out.push_back({i, k, j});
      break;
    case 3:
    case 4:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = i + 1; k <= n; ++k)
            for (int l = j + 1; l <= n; ++l) out.push_back({i, j, k, l});
      break;
    default:
      fail(ErrorCode::kInvalidArgument, "relation family must be 1..4");
  }
  return out;
}

FormalRelation quadratic_relation(int n, int family, const std::vector<int>& idx, bool as_printed) {
  const LaurentInt q = q_power(1, n);
  const LaurentInt step = q_power(1, n) - q_power(-1, n);
  const LaurentInt one_minus = one_minus_q_power(-2, n);
  auto qp = [n](int e) { return q_power(e, n); };
  ExprBuilder lhs{n, {}}, rhs{n, {}};
  FormalRelation rel;
  rel.tag = "quadratic-" + std::to_string(family);
  rel.indices = idx;
  auto in_range = [n](int x) { return x >= 1 && x <= n; };
  for (int x : idx) require(in_range(x), "relation index out of range");
  switch (family) {
    case 1: {
      require(idx.size() == 3 && idx[1] < idx[2], "family 1 needs (i, j, l) with j < l");
      const int i = idx[0], j = idx[1], l = idx[2];
      lhs.pair(1, i, l, i, j);
      lhs.pair(-qp(delta(i, j) - delta(i, l) + 1), i, j, i, l);
      for (int d = 1; d < j; ++d) rhs.pair(delta(i, j) * (qp(2) - 1), i, d, d, l);
      for (int d = 1; d < l; ++d) rhs.pair(-delta(i, l) * one_minus, i, d, d, j);
      break;
    }
    case 2: {
      require(idx.size() == 3 && idx[0] < idx[1], "family 2 needs (i, k, j) with i < k");
      const int i = idx[0], k = idx[1], j = idx[2];
      lhs.pair(1, k, j, i, j);
      lhs.pair(-qp(delta(j, k) - delta(i, j) - 1), i, j, k, j);
      for (int d = 1; d < j; ++d) rhs.pair(delta(k, j) * one_minus, i, d, d, j);
      for (int b = 1; b < j; ++b) rhs.pair(-delta(i, j) * one_minus, k, b, b, j);
      break;
    }
    case 3: {
      require(idx.size() == 4 && idx[0] < idx[2] && idx[1] < idx[3], "family 3 needs i < k and j < l");
      const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
      lhs.pair(1, k, j, i, l);
      lhs.pair(-qp(delta(k, l) - delta(i, j)), i, l, k, j);
      rhs.pair(-step * qp(delta(i, l) - delta(i, j)), k, l, i, j);
      const LaurentInt sq = as_printed ? step * step * qp(-1) : step * step;
      for (int b = 1; b < l; ++b) rhs.pair(-delta(i, l) * sq, k, b, b, j);
      for (int d = 1; d < l; ++d) rhs.pair(delta(k, l) * step * qp(-delta(i, j)), i, d, d, j);
      for (int d = 1; d < j; ++d) rhs.pair(-delta(i, j) * one_minus, k, d, d, l);
      break;
    }
    case 4: {
      require(idx.size() == 4 && idx[0] < idx[2] && idx[1] < idx[3], "family 4 needs i < k and j < l");
      const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
      lhs.pair(1, k, l, i, j);
      lhs.pair(-qp(delta(j, k) - delta(i, l)), i, j, k, l);
      for (int b = 1; b < j; ++b) rhs.pair(delta(k, j) * step * qp(-delta(i, l)), i, b, b, l);
      for (int d = 1; d < l; ++d) rhs.pair(-delta(i, l) * one_minus, k, d, d, j);
      break;
    }
    default:
      fail(ErrorCode::kInvalidArgument, "relation family must be 1..4");
  }
  rel.lhs = canonicalize(lhs.expr);
  rel.rhs = canonicalize(rhs.expr);
  return rel;
}

FormalExpr braided_det_formula(int n, bool as_printed) {
  require(n >= 1, "matrix size must be positive");
  FormalExpr out;
  for (const auto& perm : permutations(n)) {
    const int inv = inversion_count(perm);
    const int exc = as_printed ? exceedance_count(perm) : deficiency_count(perm);
    FormalTerm t;
    t.coeff = (inv % 2 ? LaurentInt(-1) : LaurentInt(1)) * q_power(inv + exc, n);
    for (int r = n; r >= 1; --r) t.word.push_back(code(n, r, perm[r - 1]));
    out.push_back(std::move(t));
  }
  return out;
}

std::string formal_word_to_string(const std::vector<int>& word, int n, std::string_view sep) {
  if (word.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += sep;
    if (word[i] == kAdjoinedInverse) {
      out += "t";
    } else {
      out += "u[" + std::to_string(word[i] / n + 1) + "," + std::to_string(word[i] % n + 1) + "]";
    }
  }
  return out;
}

namespace {

template <class F>
void for_each_split(const FrAlgebra& alg, const Word& w, int legs, F&& f) {
  const int n = alg.n();
  const std::size_t m = w.size();
  const std::size_t inner = m * static_cast<std::size_t>(legs - 1);
  std::vector<int> idx(inner, 1);
  std::vector<Word> parts(static_cast<std::size_t>(legs));
  while (true) {
    for (auto& p : parts) p.codes.clear();
    for (std::size_t t = 0; t < m; ++t) {
      int prev = alg.row(w[t]);
      for (int leg = 0; leg < legs; ++leg) {
        const int next = leg + 1 < legs ? idx[t * (legs - 1) + leg] : alg.col(w[t]);
        parts[leg].push_back(alg.letter(prev, next));
        prev = next;
      }
    }
    f(parts);
    std::size_t pos = inner;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (idx[pos] < n) {
        ++idx[pos];
        done = false;
        break;
      }
      idx[pos] = 1;
    }
    if (done) return;
  }
}

}  // namespace

BraidedAlgebra::BraidedAlgebra(const FrAlgebra& alg, const RForm& rform) : alg_(alg), rform_(rform) {
  if (&rform.algebra() != &alg) fail(ErrorCode::kContextMismatch, "R-form built over a different algebra");
}

BraidedElement BraidedAlgebra::generator(int row, int col) const {
  return BraidedElement(alg_.generator(row, col));
}

std::shared_ptr<const Element> BraidedAlgebra::word_times_generator(const Word& w, Letter x) const {
  std::string key = w.codes;
  key.push_back(static_cast<char>(x));
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const int n = alg_.n();
  const std::size_t m = w.size();
  const int s = alg_.row(x);
  const int t = alg_.col(x);
  // R~(a3 ⊗ x^s_lambda): the last letter of a3 meets the first coproduct leg.
  std::vector<detail::Path> third;
  detail::walk(m, true, s,
       [&](std::size_t pos, int state) -> const std::vector<RForm::Link>& {
         return rform_.by_col_row(RVariant::kTilde, alg_.col(w[pos]), state);
       },
       third);
  std::unordered_map<Word, LaurentInt, WordHash> raw;
  std::vector<detail::Path> first;
  for (int lambda = 1; lambda <= n; ++lambda) {
    bool any = false;
    for (const auto& p : third) any = any || p.end == lambda;
    if (!any) continue;
    first.clear();
    // R(a1 ⊗ x^lambda_mu), walked left to right.
    detail::walk(m, false, lambda,
         [&](std::size_t pos, int state) -> const std::vector<RForm::Link>& {
           return rform_.by_rows(RVariant::kR, alg_.row(w[pos]), state);
         },
         first);
    for (const auto& b : third) {
      if (b.end != lambda) continue;
      for (const auto& a : first) {
        Word middle;
        for (std::size_t i = 0; i < m; ++i) middle.push_back(alg_.letter(a.labels[i], b.labels[i]));
        middle.push_back(alg_.letter(a.end, t));
        auto [it, inserted] = raw.try_emplace(std::move(middle), a.coeff * b.coeff);
        if (!inserted) it->second += a.coeff * b.coeff;
      }
    }
  }
  std::map<Word, LaurentInt> ordered(raw.begin(), raw.end());
  Element result(n);
  for (const auto& [word, c] : ordered) {
    if (c.is_zero()) continue;
    result += alg_.normal_form(word, c);
  }
  auto ptr = std::make_shared<const Element>(std::move(result));
  std::lock_guard lock(mu_);
  make_room(cache_, cache_cap_);
  return cache_.try_emplace(std::move(key), ptr).first->second;
}

BraidedElement BraidedAlgebra::multiply_generator(const BraidedElement& a, Letter x) const {
  if (a.n() != n()) fail(ErrorCode::kContextMismatch, "element belongs to a different matrix size");
  Element r(n());
  for (const auto& [w, c] : a.body.terms()) r.add_scaled(*word_times_generator(w, x), c);
  return BraidedElement(std::move(r));
}

Element BraidedAlgebra::word_times_word(const Word& a, const Word& b) const {
  std::string key = a.codes;
  key.push_back('|');
  key += b.codes;
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
  }
  std::map<Word, LaurentInt> raw;
  for_each_split(alg_, b, 3, [&](const std::vector<Word>& bl) {
    for_each_split(alg_, a, 3, [&](const std::vector<Word>& al) {
      const LaurentInt f = rform_.eval(RVariant::kTilde, al[2], bl[0]);
      if (f.is_zero()) return;
      const LaurentInt g = rform_.eval(RVariant::kR, al[0], bl[1]);
      if (g.is_zero()) return;
      auto [it, inserted] = raw.try_emplace(al[1] + bl[2], f * g);
      if (!inserted) it->second += f * g;
    });
  });
  Element result(n());
  for (const auto& [word, c] : raw)
    if (!c.is_zero()) result += alg_.normal_form(word, c);
  auto ptr = std::make_shared<const Element>(result);
  std::lock_guard lock(mu_);
  make_room(cache_, cache_cap_);
  cache_.try_emplace(std::move(key), ptr);
  return result;
}

BraidedElement BraidedAlgebra::multiply_general(const BraidedElement& a, const BraidedElement& b) const {
  if (a.n() != n() || b.n() != n()) fail(ErrorCode::kContextMismatch, "element belongs to a different matrix size");
  Element r(n());
  for (const auto& [wa, ca] : a.body.terms())
    for (const auto& [wb, cb] : b.body.terms()) r.add_scaled(word_times_word(wa, wb), ca * cb);
  return BraidedElement(std::move(r));
}

BraidedElement BraidedAlgebra::multiply(const BraidedElement& a, const BraidedElement& b) const {
  if (a.n() != n() || b.n() != n()) fail(ErrorCode::kContextMismatch, "element belongs to a different matrix size");
  bool linear = true;
  for (const auto& [w, c] : b.body.terms()) linear = linear && w.size() <= 1;
  if (!linear) return multiply_general(a, b);
  Element r(n());
  for (const auto& [w, c] : b.body.terms()) {
    if (w.empty()) {
      r.add_scaled(a.body, c);
    } else {
      r.add_scaled(multiply_generator(a, w[0]).body, c);
    }
  }
  return BraidedElement(std::move(r));
}

BraidedElement BraidedAlgebra::power(const BraidedElement& a, int exponent) const {
  require(exponent >= 0, "braided power needs a nonnegative exponent");
  BraidedElement r = unit();
  for (int i = 0; i < exponent; ++i) r = multiply(r, a);
  return r;
}

BraidedElement BraidedAlgebra::chain(const std::vector<Letter>& letters) const {
  std::string key(letters.begin(), letters.end());
  {
    std::lock_guard lock(mu_);
    if (auto it = chain_cache_.find(key); it != chain_cache_.end()) return BraidedElement(*it->second);
  }
  BraidedElement result;
  if (letters.empty()) {
    result = unit();
  } else {
    std::vector<Letter> head(letters.begin(), letters.end() - 1);
    result = multiply_generator(chain(head), letters.back());
  }
  auto ptr = std::make_shared<const Element>(result.body);
  std::lock_guard lock(mu_);
  make_room(chain_cache_, cache_cap_);
  chain_cache_.try_emplace(std::move(key), ptr);
  return result;
}

BraidedElement BraidedAlgebra::evaluate(const FormalExpr& e) const {
  Element r(n());
  for (const auto& t : e) {
    std::vector<Letter> letters;
    for (int c : t.word) {
      if (c == kAdjoinedInverse) fail(ErrorCode::kInvalidArgument, "the adjoined inverse t cannot be evaluated");
      if (c < 0 || c >= alg_.num_letters()) fail(ErrorCode::kInvalidArgument, "generator out of range");
      letters.push_back(static_cast<Letter>(c));
    }
    r.add_scaled(chain(letters).body, t.coeff);
  }
  return BraidedElement(std::move(r));
}

BraidedElement BraidedAlgebra::residual(const FormalRelation& r) const {
  return evaluate(r.lhs) - evaluate(r.rhs);
}

Element BraidedAlgebra::recovered_product(const Element& a, const Element& b) const {
  if (a.n() != n() || b.n() != n()) fail(ErrorCode::kContextMismatch, "element belongs to a different matrix size");
  Element out(n());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      std::map<std::pair<Word, Word>, LaurentInt> pieces;
      for_each_split(alg_, wb, 3, [&](const std::vector<Word>& bl) {
        for_each_split(alg_, wa, 3, [&](const std::vector<Word>& al) {
          const LaurentInt f = rform_.eval(RVariant::kInverse, al[0], bl[0]);
          if (f.is_zero()) return;
          const LaurentInt g = rform_.eval(RVariant::kR, al[2], bl[1]);
          if (g.is_zero()) return;
          auto [it, inserted] = pieces.try_emplace({al[1], bl[2]}, f * g);
          if (!inserted) it->second += f * g;
        });
      });
      for (const auto& [key, c] : pieces) {
        if (c.is_zero()) continue;
        const BraidedElement left(alg_.normal_form(key.first));
        const BraidedElement right(alg_.normal_form(key.second));
        out.add_scaled(multiply(left, right).body, c * ca * cb);
      }
    }
  }
  return out;
}

std::size_t BraidedAlgebra::cache_size() const {
  std::lock_guard lock(mu_);
  return cache_.size() + chain_cache_.size();
}

}  // namespace qre
