#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qre/braided.hpp"
#include "qre/combinatorics.hpp"

namespace qre {

/// sum over compositions lambda of N of sigma_q(lambda) times the chains
/// indexed by V^k(lambda). Each term carries the factored form of its
/// coefficient.
FormalExpr diag_power_expr(int n, int k, int N);

/// The two-by-two variant of diag_power_expr where the blocks of each
/// composition are multiplied last part first: mon(l) is d for l = 1 and
/// c ⋆ a^(l-2) ⋆ b otherwise.
FormalExpr reversed_block_expr(int N);

/// The four-term image of x^i_j x^k_l as a formal expression in the u-generators.
FormalExpr twist_quadratic_expr(int n, int i, int j, int k, int l);

/// The map sending x^i_j to u^i_j, extended by peeling off the last generator.
class Twister {
 public:
  explicit Twister(const BraidedAlgebra& braided);

  int n() const { return br_.n(); }
  const BraidedAlgebra& braided() const { return br_; }

  BraidedElement twist(const Element& a) const;
  /// Twist of a PBW-normal word. Memoized.
  BraidedElement twist_word(const Word& normal) const;
  /// Applies the peeling rule to an arbitrary word without normalizing the
  /// remaining prefix first; agrees with twist(normal_form(w)) when the map
  /// is well defined.
  BraidedElement twist_unnormalized(const Word& raw) const;

  BraidedElement diag_power_closed(int k, int N) const;
  /// (q^{-N(N-1)/2}, (u^k_l)^N).
  std::pair<LaurentInt, BraidedElement> offdiag_power(int k, int l, int N) const;
  /// Closed double sum for the twist of (x^k_k)^N x^k_l.
  BraidedElement mixed_closed(int k, int l, int N) const;
  /// Right-hand side of the recursion expressing the twist of (x^k_k)^N x^k_l
  /// through lower powers.
  BraidedElement mixed_recursion(int k, int l, int N) const;

  /// Determinant mod p of the matrix of the map on PBW words of one degree,
  /// with v set to v0. Nonzero certifies injectivity on that degree.
  std::uint64_t degree_determinant_mod(int degree, std::uint64_t p, std::uint64_t v0) const;

  std::size_t cache_size() const;
  void set_cache_cap(std::size_t cap) const { cache_cap_ = cap; }

 private:
  template <class Recurse>
  BraidedElement peel(const Word& w, Recurse&& twist_prefix) const;

  const BraidedAlgebra& br_;
  const FrAlgebra& alg_;
  const RForm& rform_;
  mutable std::mutex mu_;
  mutable std::atomic<std::size_t> cache_cap_{0};
  mutable std::unordered_map<std::string, std::shared_ptr<const Element>> cache_;
};

/// All PBW-normal words of the given degree in increasing order.
std::vector<Word> normal_words(const FrAlgebra& alg, int degree);

}  // namespace qre
