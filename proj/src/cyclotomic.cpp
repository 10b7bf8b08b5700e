#include "qre/cyclotomic.hpp"

#include <numeric>

#include "qre/error.hpp"

namespace qre {

namespace {

// Exact quotient of dense integer polynomials; the divisor must be monic.
std::vector<BigInt> divide_monic(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) fail(ErrorCode::kInternal, "cyclotomic division underflow");
  std::vector<BigInt> quot(num.size() - dd);
  for (std::size_t top = num.size(); top-- > dd;) {
    const BigInt c = num[top];
    if (c == 0) continue;
    quot[top - dd] = c;
    for (std::size_t i = 0; i <= dd; ++i) num[top - dd + i] -= c * den[i];
  }
  for (const auto& c : num)
    if (c != 0) fail(ErrorCode::kInternal, "cyclotomic division left a remainder");
  return quot;
}

}  // namespace

std::vector<BigInt> cyclotomic_phi(int ell) {
  require(ell >= 1, "cyclotomic order must be positive");
  std::vector<BigInt> poly(static_cast<std::size_t>(ell) + 1);
  poly[0] = -1;
  poly[ell] = 1;
  for (int d = 1; d < ell; ++d) {
    if (ell % d == 0) poly = divide_monic(std::move(poly), cyclotomic_phi(d));
  }
  return poly;
}

CyclotomicCtx::CyclotomicCtx(int ell, int n) : ell_(ell), n_(n) {
  require(ell >= 3 && ell % 2 == 1, "root of unity order must be odd and at least 3");
  require(n >= 1, "matrix size must be positive");
  const auto coeffs = cyclotomic_phi(ell);
  std::vector<LaurentInt::Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) terms.push_back({static_cast<int>(i) * n, coeffs[i]});
  phi_ = LaurentInt::from_terms(std::move(terms));
  degree_ = phi_.max_exp();
  phi_dense_.assign(static_cast<std::size_t>(degree_) + 1, 0);
  for (const auto& t : phi_.terms()) phi_dense_[t.exp] = t.coeff;
}

LaurentInt CyclotomicCtx::reduce(const LaurentInt& f) const {
  if (f.is_zero()) return f;
  // q^ell = 1 modulo phi, so every exponent can be moved into [0, n*ell)
  // before plain division by the monic polynomial phi.
  const int period = n_ * ell_;
  std::vector<BigInt> dense(static_cast<std::size_t>(period));
  for (const auto& t : f.terms()) {
    int e = t.exp % period;
    if (e < 0) e += period;
    dense[e] += t.coeff;
  }
  for (int top = period - 1; top >= degree_; --top) {
    if (dense[top] == 0) continue;
    const BigInt c = dense[top];
    for (int i = 0; i <= degree_; ++i)
      if (phi_dense_[i] != 0) dense[top - degree_ + i] -= c * phi_dense_[i];
  }
  std::vector<LaurentInt::Term> terms;
  for (int e = 0; e < degree_; ++e)
    if (dense[e] != 0) terms.push_back({e, dense[e]});
  return LaurentInt::from_terms(std::move(terms));
}

bool is_zero_mod_cyclotomic(const LaurentInt& f, const CyclotomicCtx& ctx) { return ctx.is_zero(f); }

}  // namespace qre
