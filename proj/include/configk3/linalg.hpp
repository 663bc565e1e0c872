#pragma once

#include <optional>
#include <vector>

#include "configk3/rational.hpp"

namespace configk3 {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Row-reduces in place; returns the rank and (optionally) pivot columns.
int row_reduce(RationalMatrix& m, std::vector<int>* pivot_cols = nullptr);

int matrix_rank(RationalMatrix m);

// Basis of the right kernel of an m x n matrix.
std::vector<std::vector<Rational>> matrix_kernel(RationalMatrix m, int ncols);

// Solves A x = b; nullopt if inconsistent. Free variables are set to zero.
std::optional<std::vector<Rational>> solve_linear(RationalMatrix a,
                                                  std::vector<Rational> b);

Rational det3(const RationalMatrix& m);

std::optional<RationalMatrix> invert3(const RationalMatrix& m);

}  // namespace configk3
