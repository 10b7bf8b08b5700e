#pragma once

#include <atomic>
#include <array>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "qre/fr_algebra.hpp"
#include "qre/laurent.hpp"

namespace qre {

enum class RVariant { kR = 0, kInverse = 1, kTilde = 2 };

/// How the generator table of R(a ⊗ S(b)) is pinned down. kOppositeLegs asks
/// for sum R~(a1 ⊗ b2) R(a2 ⊗ b1) = eps(a) eps(b), the inverse of R on
/// A ⊗ A^cop; kSameLegs asks for sum R~(a1 ⊗ b1) R(a2 ⊗ b2) = eps(a) eps(b).
/// Only the first is compatible with the algebra relations, and it is the default.
enum class TildeConvention { kOppositeLegs, kSameLegs };

const char* variant_name(RVariant v);
const char* convention_name(TildeConvention c);

/// Exact inverse of a square matrix over Z[v, v^-1] (row-major, size dim^2)
/// by fraction-free Gauss-Jordan elimination. Returns nullopt if singular and
/// throws if an entry of the inverse is not a Laurent polynomial.
std::optional<std::vector<LaurentInt>> invert_laurent_matrix(const std::vector<LaurentInt>& m, int dim);

/// The dual R-matrix pairing and its two inverses on the quantum matrix bialgebra.
class RForm {
 public:
  struct Link {
    int a;  // 1-based index completing the entry
    int b;
    LaurentInt value;
  };

  explicit RForm(const FrAlgebra& alg, TildeConvention conv = TildeConvention::kOppositeLegs);

  int n() const { return n_; }
  TildeConvention convention() const { return conv_; }
  const FrAlgebra& algebra() const { return alg_; }

  /// Value on x^i_j ⊗ x^k_l (1-based indices).
  const LaurentInt& entry(RVariant v, int i, int j, int k, int l) const;
  const LaurentInt& entry(RVariant v, Letter x, Letter y) const;

  /// Nonzero entries with first-slot row i and second-slot row k, as (j, l, value).
  const std::vector<Link>& by_rows(RVariant v, int i, int k) const;
  /// Nonzero entries with first-slot column j and second-slot row k, as (i, l, value).
  const std::vector<Link>& by_col_row(RVariant v, int j, int k) const;

  /// Pairing of two arbitrary words, extended from generators by the leg
  /// splitting rules of each variant. Memoized.
  LaurentInt eval(RVariant v, const Word& a, const Word& b) const;

  nlohmann::json to_json() const;
  std::size_t cache_size() const;
  void set_cache_cap(std::size_t cap) const { cache_cap_ = cap; }

 private:
  std::size_t idx(int i, int j, int k, int l) const;
  LaurentInt compute(RVariant v, const Word& a, const Word& b) const;

  const FrAlgebra& alg_;
  int n_;
  TildeConvention conv_;
  std::array<std::vector<LaurentInt>, 3> tables_;
  std::array<std::vector<std::vector<Link>>, 3> by_rows_;
  std::array<std::vector<std::vector<Link>>, 3> by_col_row_;
  mutable std::mutex mu_;
  mutable std::atomic<std::size_t> cache_cap_{0};
  mutable std::unordered_map<std::string, LaurentInt> cache_;
};

}  // namespace qre
