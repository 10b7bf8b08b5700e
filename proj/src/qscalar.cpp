#include "qre/qscalar.hpp"

#include <algorithm>
#include <numeric>

#include "qre/error.hpp"

namespace qre {

LaurentInt q_int(int k, int n) {
  require(k >= 0, "q-integer needs a nonnegative argument");
  std::vector<LaurentInt::Term> terms;
  for (int e = k - 1; e >= 1 - k; e -= 2) terms.push_back({e * n, 1});
  return LaurentInt::from_terms(std::move(terms));
}

LaurentInt q_factorial(int k, int n) {
  LaurentInt r(1);
  for (int i = 2; i <= k; ++i) r *= q_int(i, n);
  return r;
}

std::vector<int> sigma_q_factors(const std::vector<int>& parts) {
  require(!parts.empty(), "composition must have at least one part");
  for (int p : parts) require(p >= 1, "composition parts must be positive");
  std::vector<int> exps;
  int weight = std::accumulate(parts.begin(), parts.end(), 0);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    for (int j = 1; j <= *it - 1; ++j) exps.push_back(-2 * (weight - j));
    weight -= *it;
  }
  std::sort(exps.begin(), exps.end(), std::greater<>());
  return exps;
}

LaurentInt sigma_q(const std::vector<int>& parts, int n) {
  LaurentInt r(1);
  for (int e : sigma_q_factors(parts)) r *= one_minus_q_power(e, n);
  return r;
}

}  // namespace qre
