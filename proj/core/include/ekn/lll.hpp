#pragma once
// Exact LLL on integer row vectors (δ = 3/4).
#include <gmpxx.h>

#include <vector>

namespace ekn {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Reduces the rows of b in place; rows must be linearly independent.
void lll_reduce(IntMatrix& b);

}  // namespace ekn
