#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baire/projection.hpp"

namespace baire {

// Pinned complementary error function: Cody's rational Chebyshev
// approximation (three regions split at |x| = 0.46875 and 4.0), absolute
// error <= 1e-12 against quadrature of the Gaussian density. A pinned
// algorithm, unlike libm, gives the same bits on every platform.
double erfc_cody(double x);

std::vector<double> log_transform(const Seriation& s);

struct StandardizeResult {
  std::vector<double> z;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, divisor n-1
};

StandardizeResult standardize(const std::vector<double>& v);

// Standard normal CDF applied elementwise: u = 0.5 * erfc(-z / sqrt(2)),
// clamped into [0,1) (u >= 1 maps to the largest double below 1).
std::vector<double> uniformize(const std::vector<double>& z);

struct TransformProvenance {
  std::string chain = "log,standardize,uniformize";
  double mean = 0.0;
  double sd = 0.0;
};

// Seriation re-encoded to approximately uniform values in [0,1).
struct EncodedSeriation {
  std::vector<std::string> ids;
  std::vector<double> values;
  TransformProvenance provenance;
};

// log -> standardize -> uniformize, O(n), no sorting anywhere.
EncodedSeriation encode_pipeline(const Seriation& s);

// Replays the chain with a previously recorded mean/sd; bit-identical to the
// original run on the same input.
EncodedSeriation encode_with_provenance(const Seriation& s,
                                        const TransformProvenance& prov);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;  // counts.size() == bins, sum == n
};

// Equal-width bins over the given or observed range; out-of-range values are
// counted in the nearest edge bin so counts always sum to n.
Histogram histogram_report(const std::vector<double>& v, std::size_t bins,
                           std::optional<std::pair<double, double>> range = {});

}  // namespace baire
