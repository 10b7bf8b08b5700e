#include "qre/r_form.hpp"

#include "qre/error.hpp"
#include "qre/memo.hpp"

namespace qre {

const char* variant_name(RVariant v) {
  switch (v) {
    case RVariant::kR: return "R";
    case RVariant::kInverse: return "Rinv";
    case RVariant::kTilde: return "Rtilde";
  }
  return "?";
}

const char* convention_name(TildeConvention c) {
  return c == TildeConvention::kOppositeLegs ? "opposite-legs" : "same-legs";
}

std::optional<std::vector<LaurentInt>> invert_laurent_matrix(const std::vector<LaurentInt>& m, int dim) {
  require(static_cast<int>(m.size()) == dim * dim, "matrix size mismatch");
  const int width = 2 * dim;
  std::vector<std::vector<LaurentInt>> a(static_cast<std::size_t>(dim), std::vector<LaurentInt>(width));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a[i][j] = m[i * dim + j];
    a[i][dim + i] = 1;
  }
  LaurentInt prev = 1;
  for (int k = 0; k < dim; ++k) {
    int pivot = k;
    while (pivot < dim && a[pivot][k].is_zero()) ++pivot;
    if (pivot == dim) return std::nullopt;
    std::swap(a[pivot], a[k]);
    for (int i = 0; i < dim; ++i) {
      if (i == k) continue;
      const LaurentInt factor = a[i][k];
      for (int j = 0; j < width; ++j) {
        if (j == k) continue;
        LaurentInt num = a[k][k] * a[i][j] - factor * a[k][j];
        auto quot = LaurentInt::divide_exact(num, prev);
        if (!quot) fail(ErrorCode::kInternal, "fraction-free elimination step was not exact");
        a[i][j] = std::move(*quot);
      }
      a[i][k] = LaurentInt();
    }
    prev = a[k][k];
  }
  std::vector<LaurentInt> inv(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      auto quot = LaurentInt::divide_exact(a[i][dim + j], a[i][i]);
      if (!quot) fail(ErrorCode::kInternal, "inverse R-table entry is not a Laurent polynomial");
      inv[i * dim + j] = std::move(*quot);
    }
  }
  return inv;
}

std::size_t RForm::idx(int i, int j, int k, int l) const {
  return static_cast<std::size_t>((((i - 1) * n_ + (j - 1)) * n_ + (k - 1)) * n_ + (l - 1));
}

RForm::RForm(const FrAlgebra& alg, TildeConvention conv) : alg_(alg), n_(alg.n()), conv_(conv) {
  const int n = n_;
  const std::size_t size = static_cast<std::size_t>(n) * n * n * n;
  const LaurentInt q = q_power(1, n);
  const LaurentInt qi = q_power(-1, n);
  const LaurentInt step = q - qi;
  const LaurentInt down = LaurentInt::v_power(-1);
  const LaurentInt up = LaurentInt::v_power(1);
  for (auto& t : tables_) t.assign(size, LaurentInt());
  auto& r = tables_[static_cast<int>(RVariant::kR)];
  auto& ri = tables_[static_cast<int>(RVariant::kInverse)];
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          LaurentInt plus, minus;
          if (i == j && k == l) {
            plus += j == l ? q : LaurentInt(1);
            minus += j == l ? qi : LaurentInt(1);
          }
          if (j > l && i == l && k == j) {
            plus += step;
            minus -= step;
          }
          r[idx(i, j, k, l)] = down * plus;
          ri[idx(i, j, k, l)] = up * minus;
        }

  // Row/column labels of the n^2 x n^2 system are pairs (m, p) -> (m-1)*n + (p-1).
  const int dim = n * n;
  std::vector<LaurentInt> mat(static_cast<std::size_t>(dim) * dim);
  auto pair = [n](int a, int b) { return (a - 1) * n + (b - 1); };
  for (int m = 1; m <= n; ++m)
    for (int p = 1; p <= n; ++p)
      for (int j = 1; j <= n; ++j)
        for (int x = 1; x <= n; ++x) {
          // opposite legs: columns (j, k=x), entry R(x^m_j ⊗ x^k_p)
          // same legs: columns (j, l=x), entry R(x^m_j ⊗ x^p_l)
          mat[pair(m, p) * dim + pair(j, x)] =
              conv == TildeConvention::kOppositeLegs ? r[idx(m, j, x, p)] : r[idx(m, j, p, x)];
        }
  auto inv = invert_laurent_matrix(mat, dim);
  if (!inv) fail(ErrorCode::kInternal, "R-table is singular");
  auto& rt = tables_[static_cast<int>(RVariant::kTilde)];
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int m = 1; m <= n; ++m)
        for (int p = 1; p <= n; ++p) {
          const LaurentInt& val = (*inv)[pair(a, b) * dim + pair(m, p)];
          if (conv == TildeConvention::kOppositeLegs) {
            rt[idx(a, m, p, b)] = val;  // R~(x^i_m ⊗ x^p_l), (i,l) = (a,b)
          } else {
            rt[idx(a, m, b, p)] = val;  // R~(x^i_m ⊗ x^k_p), (i,k) = (a,b)
          }
        }

  for (int v = 0; v < 3; ++v) {
    by_rows_[v].assign(static_cast<std::size_t>(dim), {});
    by_col_row_[v].assign(static_cast<std::size_t>(dim), {});
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            const LaurentInt& val = tables_[v][idx(i, j, k, l)];
            if (val.is_zero()) continue;
            by_rows_[v][pair(i, k)].push_back({j, l, val});
            by_col_row_[v][pair(j, k)].push_back({i, l, val});
          }
  }
}

const LaurentInt& RForm::entry(RVariant v, int i, int j, int k, int l) const {
  return tables_[static_cast<int>(v)][idx(i, j, k, l)];
}

const LaurentInt& RForm::entry(RVariant v, Letter x, Letter y) const {
  return entry(v, alg_.row(x), alg_.col(x), alg_.row(y), alg_.col(y));
}

const std::vector<RForm::Link>& RForm::by_rows(RVariant v, int i, int k) const {
  return by_rows_[static_cast<int>(v)][static_cast<std::size_t>((i - 1) * n_ + (k - 1))];
}

const std::vector<RForm::Link>& RForm::by_col_row(RVariant v, int j, int k) const {
  return by_col_row_[static_cast<int>(v)][static_cast<std::size_t>((j - 1) * n_ + (k - 1))];
}

LaurentInt RForm::eval(RVariant v, const Word& a, const Word& b) const {
  if (a.empty()) return alg_.counit(b);
  if (b.empty()) return alg_.counit(a);
  if (a.size() == 1 && b.size() == 1) return entry(v, a[0], b[0]);
  std::string key;
  key.reserve(a.size() + b.size() + 2);
  key.push_back(static_cast<char>('0' + static_cast<int>(v)));
  key += a.codes;
  key.push_back('|');
  key += b.codes;
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  LaurentInt value = compute(v, a, b);
  std::lock_guard lock(mu_);
  make_room(cache_, cache_cap_);
  cache_.try_emplace(std::move(key), value);
  return value;
}

LaurentInt RForm::compute(RVariant v, const Word& a, const Word& b) const {
  LaurentInt total;
  if (a.size() > 1) {
    // Split off the first letter of a; sum over the coproduct legs of b.
    Word head;
    head.push_back(a[0]);
    const Word tail(a.codes.substr(1));
    const std::size_t m = b.size();
    std::vector<int> mid(m, 1);
    while (true) {
      Word b1, b2;
      for (std::size_t t = 0; t < m; ++t) {
        b1.push_back(alg_.letter(alg_.row(b[t]), mid[t]));
        b2.push_back(alg_.letter(mid[t], alg_.col(b[t])));
      }
      switch (v) {
        case RVariant::kR: {
          LaurentInt f = eval(v, head, b1);
          if (!f.is_zero()) total += f * eval(v, tail, b2);
          break;
        }
        case RVariant::kInverse: {
          LaurentInt f = eval(v, tail, b1);
          if (!f.is_zero()) total += f * eval(v, head, b2);
          break;
        }
        case RVariant::kTilde: {
          LaurentInt f = eval(v, head, b2);
          if (!f.is_zero()) total += f * eval(v, tail, b1);
          break;
        }
      }
      std::size_t pos = m;
      bool done = true;
      while (pos > 0) {
        --pos;
        if (mid[pos] < n_) {
          ++mid[pos];
          done = false;
          break;
        }
        mid[pos] = 1;
      }
      if (done) break;
    }
    return total;
  }
  // a is a single generator x^i_j with coproduct sum_k x^i_k ⊗ x^k_j.
  const int i = alg_.row(a[0]);
  const int j = alg_.col(a[0]);
  Word first;
  first.push_back(b[0]);
  const Word rest(b.codes.substr(1));
  for (int k = 1; k <= n_; ++k) {
    Word a1, a2;
    a1.push_back(alg_.letter(i, k));
    a2.push_back(alg_.letter(k, j));
    if (v == RVariant::kR) {
      LaurentInt f = eval(v, a2, first);
      if (!f.is_zero()) total += eval(v, a1, rest) * f;
    } else {
      LaurentInt f = eval(v, a1, first);
      if (!f.is_zero()) total += f * eval(v, a2, rest);
    }
  }
  return total;
}

nlohmann::json RForm::to_json() const {
  nlohmann::json out;
  out["n"] = n_;
  out["convention"] = convention_name(conv_);
  for (int v = 0; v < 3; ++v) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 1; k <= n_; ++k)
          for (int l = 1; l <= n_; ++l) row.push_back(tables_[v][idx(i, j, k, l)].to_json(n_));
        rows.push_back(row);
      }
    out[variant_name(static_cast<RVariant>(v))] = rows;
  }
  out["layout"] = "rows indexed by (i,j), columns by (k,l), value on x^i_j ⊗ x^k_l, both row-major";
  return out;
}

std::size_t RForm::cache_size() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

}  // namespace qre
