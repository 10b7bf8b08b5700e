#pragma once

#include <vector>

#include "qre/laurent.hpp"

namespace qre {

/// Symmetric quantum integer [k]_q = q^(k-1) + q^(k-3) + ... + q^(1-k).
LaurentInt q_int(int k, int n);
LaurentInt q_factorial(int k, int n);

/// Scalar attached to a composition (given by its parts), built from the
/// last-part recursion so the result is always a Laurent polynomial.
LaurentInt sigma_q(const std::vector<int>& parts, int n);

/// Exponents e with sigma_q(parts) = prod (1 - q^e), in recursion order.
std::vector<int> sigma_q_factors(const std::vector<int>& parts);

}  // namespace qre
