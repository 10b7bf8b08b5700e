#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qre {

using BigInt = mpz_class;

/// Sparse Laurent polynomial in v with arbitrary-precision integer
/// coefficients. The quantum parameter is q = v^n, where n is supplied by the
/// algebra context whenever a value is rendered or serialized.
///
/// Terms are kept sorted by ascending exponent and never hold a zero
/// coefficient, so structural equality is ring equality.
class LaurentInt {
 public:
  struct Term {
    int exp;
    BigInt coeff;
  };

  LaurentInt() = default;
  LaurentInt(long c);  // NOLINT(google-explicit-constructor)

  static LaurentInt monomial(const BigInt& c, int exp);
  static LaurentInt v_power(int exp) { return monomial(1, exp); }
  static LaurentInt from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  int min_exp() const;
  int max_exp() const;
  BigInt coeff(int exp) const;

  /// True when every exponent is a multiple of n, i.e. the value lies in Z[q, q^-1].
  bool in_q(int n) const;

  LaurentInt shifted(int exp) const;

  LaurentInt& operator+=(const LaurentInt& other);
  LaurentInt& operator-=(const LaurentInt& other);
  LaurentInt& operator*=(const LaurentInt& other);
  LaurentInt operator-() const;

  friend LaurentInt operator+(LaurentInt a, const LaurentInt& b) { return a += b; }
  friend LaurentInt operator-(LaurentInt a, const LaurentInt& b) { return a -= b; }
  friend LaurentInt operator*(const LaurentInt& a, const LaurentInt& b);
  friend bool operator==(const LaurentInt& a, const LaurentInt& b);
  friend bool operator!=(const LaurentInt& a, const LaurentInt& b) { return !(a == b); }

  /// Exact quotient a / b in Z[v, v^-1], or nullopt if b does not divide a.
  static std::optional<LaurentInt> divide_exact(const LaurentInt& a, const LaurentInt& b);

  /// Image under v -> v0 in Z/pZ (p prime, v0 invertible mod p).
  std::uint64_t eval_mod(std::uint64_t p, std::uint64_t v0) const;

  /// Human-readable rendering, highest exponent first, e.g. "1 - q^-2".
  /// Uses the q variable when every exponent is divisible by n, otherwise v.
  std::string to_string(int n, std::string_view q_name = "q",
                        std::string_view v_name = "v") const;

  /// {"var":"v","n":n,"terms":[[exp,coeff],...]} with ascending exponents.
  nlohmann::json to_json(int n) const;
  static LaurentInt from_json(const nlohmann::json& j);

 private:
  void normalize();

  std::vector<Term> terms_;
};

nlohmann::json bigint_to_json(const BigInt& c);
BigInt bigint_from_json(const nlohmann::json& j);

/// q^e = v^(n e).
inline LaurentInt q_power(int e, int n) { return LaurentInt::v_power(n * e); }

/// 1 - q^e.
inline LaurentInt one_minus_q_power(int e, int n) { return LaurentInt(1) - q_power(e, n); }

}  // namespace qre
