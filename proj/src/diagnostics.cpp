#include "baire/diagnostics.hpp"

#include <cmath>
#include <string>

#include "baire/error.hpp"
#include "baire/rng.hpp"

namespace baire {

namespace {

void normalize(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) return;
  for (double& x : v) x /= norm;
}

void fix_sign(std::vector<double>& v) {
  for (double x : v) {
    if (x != 0.0) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

}  // namespace

PowerIterationResult power_iteration(const std::vector<double>& s,
                                     std::size_t p, double tol,
                                     std::size_t max_iter) {
  if (p < 1 || s.size() != p * p)
    throw_numeric("power_iteration: matrix size mismatch");
  if (tol <= 0.0) throw_numeric("power_iteration: tol must be positive");
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (s[i * p + j] != s[j * p + i])
        throw_numeric("power_iteration: matrix is not symmetric at (" +
                      std::to_string(i) + "," + std::to_string(j) + ")");

  PowerIterationResult r;
  std::vector<double>& v = r.eigenvector;
  v.resize(p);
  // Fixed pseudo-random start: deterministic, and almost surely not
  // orthogonal to the dominant eigenvector.
  SplitMix64 rng(kGolden ^ static_cast<std::uint64_t>(p));
  for (double& x : v) x = rng.uniform() - 0.5;
  normalize(v);

  std::vector<double> w(p);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < p; ++i) {
      const double* row = s.data() + i * p;
      double acc = 0.0;
      for (std::size_t j = 0; j < p; ++j) acc += row[j] * v[j];
      w[i] = acc;
    }
    double lambda = 0.0;  // Rayleigh quotient, |v| = 1
    for (std::size_t i = 0; i < p; ++i) lambda += v[i] * w[i];
    double resid = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const double d = std::fabs(w[i] - lambda * v[i]);
      if (d > resid) resid = d;
    }
    r.eigenvalue = lambda;
    r.iterations = it;
    if (resid <= tol * std::fabs(lambda)) {
      r.converged = true;
      fix_sign(v);
      return r;
    }
    double wnorm = 0.0;
    for (double x : w) wnorm += x * x;
    wnorm = std::sqrt(wnorm);
    if (wnorm == 0.0) {
      // v is in the null space; it is an exact eigenvector for eigenvalue 0.
      r.eigenvalue = 0.0;
      r.converged = true;
      fix_sign(v);
      return r;
    }
    for (std::size_t i = 0; i < p; ++i) v[i] = w[i] / wnorm;
  }
  fix_sign(v);  // non-convergence: report the last iterate
  return r;
}

double chi2_independence(const DataMatrix& d) {
  Marginals mg = marginals(d);  // throws on zero total
  for (std::size_t i = 0; i < d.n; ++i)
    if (mg.row_sums[i] == 0.0)
      throw_numeric("chi2_independence: zero row margin at '" +
                    d.row_ids[i] + "'");
  for (std::size_t j = 0; j < d.m; ++j)
    if (mg.col_sums[j] == 0.0)
      throw_numeric("chi2_independence: zero column margin at " +
                    std::to_string(j));
  double stat = 0.0;
  for (std::size_t i = 0; i < d.n; ++i) {
    const double* row = d.row(i);
    for (std::size_t j = 0; j < d.m; ++j) {
      const double expected = mg.row_sums[i] * mg.col_sums[j] / mg.total;
      const double diff = row[j] - expected;
      stat += diff * diff / expected;
    }
  }
  return stat;
}

}  // namespace baire
