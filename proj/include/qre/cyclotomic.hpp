#pragma once

#include <vector>

#include "qre/laurent.hpp"

namespace qre {

/// Integer coefficients of the ell-th cyclotomic polynomial, lowest degree first.
std::vector<BigInt> cyclotomic_phi(int ell);

/// Arithmetic in Z[v, v^-1] modulo Phi_ell(v^n), i.e. with q specialized to a
/// primitive ell-th root of unity.
class CyclotomicCtx {
 public:
  CyclotomicCtx(int ell, int n);

  int ell() const { return ell_; }
  int n() const { return n_; }
  /// Phi_ell(v^n) as a polynomial in v.
  const LaurentInt& phi() const { return phi_; }
  /// Degree of phi in v, n * euler_phi(ell).
  int degree() const { return degree_; }

  /// Canonical representative: a polynomial in v of degree below degree().
  LaurentInt reduce(const LaurentInt& f) const;
  bool is_zero(const LaurentInt& f) const { return reduce(f).is_zero(); }
  bool equal(const LaurentInt& a, const LaurentInt& b) const { return is_zero(a - b); }

 private:
  int ell_;
  int n_;
  int degree_;
  LaurentInt phi_;
  std::vector<BigInt> phi_dense_;
};

bool is_zero_mod_cyclotomic(const LaurentInt& f, const CyclotomicCtx& ctx);

}  // namespace qre
