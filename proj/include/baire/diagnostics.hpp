#pragma once

#include <cstddef>
#include <vector>

#include "baire/data_matrix.hpp"

namespace baire {

struct PowerIterationResult {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;  // unit norm, first nonzero entry positive
  std::size_t iterations = 0;
  bool converged = false;  // false: max_iter hit, fields hold the last iterate
};

// Dominant eigenpair of a dense symmetric p x p matrix (row-major) by power
// iteration with a fixed pseudo-random start vector. Convergence criterion:
// max_i |(S v)_i - lambda v_i| <= tol * |lambda|.
PowerIterationResult power_iteration(const std::vector<double>& s,
                                     std::size_t p, double tol,
                                     std::size_t max_iter);

// Chi-squared statistic of the matrix against the independence model
// E_ij = x_i * x_j / total. Exactly 0 for outer-product (rank-one) tables.
double chi2_independence(const DataMatrix& d);

}  // namespace baire
