#pragma once

#include "stochlab/rational.hpp"

#include <vector>

namespace stochlab {

using RationalMatrix = std::vector<std::vector<BigRational>>;

// Solves A x = b exactly by Gaussian elimination with rational pivoting.
// Throws std::runtime_error when A is singular.
std::vector<BigRational> solve_rational(RationalMatrix a, std::vector<BigRational> b);

// Basis of { x : A x = 0 }, exact.
std::vector<std::vector<BigRational>> null_space(RationalMatrix a);

} // namespace stochlab
