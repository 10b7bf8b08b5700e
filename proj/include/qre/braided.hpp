#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "qre/fr_algebra.hpp"
#include "qre/r_form.hpp"

namespace qre {

/// An element of the covariantized algebra, stored in the PBW basis of the
/// underlying quantum matrix algebra; the word x^i_j stands for u^i_j.
struct BraidedElement {
  Element body;

  BraidedElement() = default;
  explicit BraidedElement(Element e) : body(std::move(e)) {}

  int n() const { return body.n(); }
  bool is_zero() const { return body.is_zero(); }

  BraidedElement& operator+=(const BraidedElement& o) {
    body += o.body;
    return *this;
  }
  BraidedElement& operator-=(const BraidedElement& o) {
    body -= o.body;
    return *this;
  }
  BraidedElement scaled(const LaurentInt& c) const { return BraidedElement(body.scaled(c)); }
  friend BraidedElement operator+(BraidedElement a, const BraidedElement& b) { return a += b; }
  friend BraidedElement operator-(BraidedElement a, const BraidedElement& b) { return a -= b; }
  friend bool operator==(const BraidedElement& a, const BraidedElement& b) { return a.body == b.body; }

  std::string to_string() const { return body.to_string("x"); }
  nlohmann::json to_json() const;
};

/// Generator slot of a formal braided word; kAdjoinedInverse stands for the
/// formal inverse t of the braided determinant.
constexpr int kAdjoinedInverse = -1;

/// coeff * u^{..} ⋆ ... ⋆ u^{..}, unevaluated. Letters use the Letter coding
/// of the matching FrAlgebra, or kAdjoinedInverse.
struct FormalTerm {
  LaurentInt coeff;
  std::vector<int> word;
  /// Optional factored form of coeff as a product of (1 - q^e).
  std::vector<int> factors;
};

using FormalExpr = std::vector<FormalTerm>;

/// Merges repeated words (keeping first-appearance order) and drops zeros.
FormalExpr canonicalize(const FormalExpr& e);
FormalExpr negate(const FormalExpr& e);

struct FormalRelation {
  std::string tag;
  std::vector<int> indices;
  FormalExpr lhs;
  FormalExpr rhs;
};

/// The four quadratic relation families of the covariantized algebra.
/// Family 1 takes (i, j, l) with j < l; family 2 takes (i, k, j) with i < k;
/// families 3 and 4 take (i, j, k, l) with i < k and j < l.
/// For family 3, as_printed selects the alternative printed coefficient of the
/// u^k_b ⋆ u^b_j sum; the default is the corrected one.
FormalRelation quadratic_relation(int n, int family, const std::vector<int>& idx, bool as_printed = false);
/// Every admissible index tuple of one family, in lexicographic order.
std::vector<std::vector<int>> quadratic_indices(int n, int family);

/// sum over permutations s of (-q)^inv(s) q^def(s) u^n_{s(n)} ⋆ ... ⋆ u^1_{s(1)},
/// where def(s) counts the i with s(i) < i. With as_printed the exponent
/// counts exceedances s(i) > i instead.
FormalExpr braided_det_formula(int n, bool as_printed = false);

std::string formal_word_to_string(const std::vector<int>& word, int n, std::string_view sep = "·");

class BraidedAlgebra {
 public:
  BraidedAlgebra(const FrAlgebra& alg, const RForm& rform);

  int n() const { return alg_.n(); }
  const FrAlgebra& algebra() const { return alg_; }
  const RForm& rform() const { return rform_; }

  BraidedElement unit() const { return BraidedElement(Element::one(n())); }
  BraidedElement generator(int row, int col) const;

  /// a ⋆ b. Uses the generator fast path whenever every word of b has length <= 1.
  BraidedElement multiply(const BraidedElement& a, const BraidedElement& b) const;
  BraidedElement multiply_generator(const BraidedElement& a, Letter x) const;
  /// Direct evaluation through the double coproducts of both factors.
  BraidedElement multiply_general(const BraidedElement& a, const BraidedElement& b) const;
  BraidedElement power(const BraidedElement& a, int exponent) const;
  /// Left-associated product u^{..} ⋆ ... ⋆ u^{..} of the given generators.
  BraidedElement chain(const std::vector<Letter>& letters) const;
  BraidedElement evaluate(const FormalExpr& e) const;
  BraidedElement residual(const FormalRelation& r) const;
  BraidedElement det(bool as_printed = false) const { return evaluate(braided_det_formula(n(), as_printed)); }

  /// sum R^-1(a1 ⊗ b1) R(a3 ⊗ b2) a2 ⋆ b3, which should reproduce the product of A.
  Element recovered_product(const Element& a, const Element& b) const;

  std::size_t cache_size() const;
  void set_cache_cap(std::size_t cap) const { cache_cap_ = cap; }

 private:
  std::shared_ptr<const Element> word_times_generator(const Word& w, Letter x) const;
  Element word_times_word(const Word& a, const Word& b) const;

  const FrAlgebra& alg_;
  const RForm& rform_;
  mutable std::mutex mu_;
  mutable std::atomic<std::size_t> cache_cap_{0};
  mutable std::unordered_map<std::string, std::shared_ptr<const Element>> cache_;
  mutable std::unordered_map<std::string, std::shared_ptr<const Element>> chain_cache_;
};

}  // namespace qre
