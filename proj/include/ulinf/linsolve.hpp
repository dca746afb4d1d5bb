#pragma once

#include "ulinf/scalar.hpp"

#include <vector>

namespace ulinf {

using Matrix = std::vector<std::vector<Scalar>>;  // row-major

struct LinearSolution {
    bool consistent = false;
    int rank = 0;
    std::vector<Scalar> x;            // a solution with free variables set to 0
    std::vector<Scalar> certificate;  // y with y A = 0 and y b = 1 when inconsistent
};

// Exact solve of A x = b by fraction-free (Bareiss) elimination.
// A may be empty (no rows); every row must have `cols` entries.
LinearSolution solve_exact(const Matrix& A, const std::vector<Scalar>& b, int cols);

int rank_exact(const Matrix& A, int cols);

}  // namespace ulinf
