#include "qre/context.hpp"

namespace qre {

Context::Context(int n, TildeConvention conv)
    : alg_(std::make_unique<FrAlgebra>(n)),
      rform_(std::make_unique<RForm>(*alg_, conv)),
      braided_(std::make_unique<BraidedAlgebra>(*alg_, *rform_)),
      twister_(std::make_unique<Twister>(*braided_)) {}

void Context::set_cache_cap(std::size_t cap) const {
  alg_->set_cache_cap(cap);
  rform_->set_cache_cap(cap);
  braided_->set_cache_cap(cap);
  twister_->set_cache_cap(cap);
}

std::size_t Context::cache_size() const {
  return alg_->cache_size() + rform_->cache_size() + braided_->cache_size() + twister_->cache_size();
}

}  // namespace qre
