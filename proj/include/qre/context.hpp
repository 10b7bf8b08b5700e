#pragma once

#include <memory>

#include "qre/braided.hpp"
#include "qre/fr_algebra.hpp"
#include "qre/r_form.hpp"
#include "qre/twisting.hpp"

namespace qre {

/// Owns the algebra, the R-form, the braided product and the twisting map
/// for one matrix size. Immutable apart from transparent caches; safe to
/// share across threads.
class Context {
 public:
  explicit Context(int n, TildeConvention conv = TildeConvention::kOppositeLegs);

  int n() const { return alg_->n(); }
  const FrAlgebra& algebra() const { return *alg_; }
  const RForm& rform() const { return *rform_; }
  const BraidedAlgebra& braided() const { return *braided_; }
  const Twister& twister() const { return *twister_; }

  /// Bounds every memo table; 0 lifts the bound.
  void set_cache_cap(std::size_t cap) const;
  std::size_t cache_size() const;

 private:
  std::unique_ptr<FrAlgebra> alg_;
  std::unique_ptr<RForm> rform_;
  std::unique_ptr<BraidedAlgebra> braided_;
  std::unique_ptr<Twister> twister_;
};

}  // namespace qre
