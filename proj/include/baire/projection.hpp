#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "baire/data_matrix.hpp"

namespace baire {

// k uniform-[0,1) projection axes over m attributes, reproducible from seed.
struct AxisSet {
  std::size_t k = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<double> axes;  // row-major k*m, generated row by row
};

AxisSet generate_axes(std::size_t m, std::size_t k, std::uint64_t seed);

// k projections of the n observations; row t holds projection t over all
// observations. When rescaled, each row spans [0,1): min maps to 0, max to
// the largest double below 1, constant projections to all zeros.
struct ProjectionSet {
  std::size_t k = 0;
  std::size_t n = 0;
  std::uint64_t source_seed = 0;
  bool rescaled = true;
  std::vector<std::string> ids;
  std::vector<double> values;  // row-major k*n

  const double* projection(std::size_t t) const { return values.data() + t * n; }
};

ProjectionSet project(const DataMatrix& d, const AxisSet& a,
                      bool rescale = true);

enum class SeriationKind { consensus_projection, row_mass, row_sum };

// One real value per observation: the 1-D ordering everything downstream
// clusters on.
struct Seriation {
  std::vector<std::string> ids;
  std::vector<double> values;
  SeriationKind kind = SeriationKind::consensus_projection;
};

// Mean of the first t projections (sum in row order, then divide by t).
Seriation consensus(const ProjectionSet& p, std::size_t t);

struct CorrelationCurve {
  std::vector<double> corr;  // corr[t-1] = pearson(row sums, mean of first t)
};

// Incremental running-mean computation, O(k*n) total.
CorrelationCurve correlation_curve(const Seriation& rowsums,
                                   const ProjectionSet& p);

// Streaming consensus for the linear-time pipeline path: never materializes
// the k x n projection set, only an n-vector accumulator plus one buffer.
// When rowsums_for_curve is non-null the correlation curve is computed on the
// fly with the same arithmetic as correlation_curve.
struct StreamingConsensus {
  Seriation seriation;
  CorrelationCurve curve;  // empty unless requested
};

StreamingConsensus consensus_streaming(const DataMatrix& d, std::size_t k,
                                       std::uint64_t seed, bool rescale,
                                       const std::vector<double>* rowsums_for_curve);

// Conventional Gaussian random mapping, kept as a contrast diagnostic.
struct DistortionReport {
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  double mean_ratio = 1.0;
  double scale = 1.0;        // global alignment factor mean(d_orig)/mean(d_mapped)
  std::size_t pairs = 0;     // sampled pairs with nonzero original distance
};

struct GaussianMapResult {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> mapped;  // row-major n*dim, rows normalized to unit norm
  DistortionReport distortion;
};

GaussianMapResult gaussian_map(const DataMatrix& d, std::size_t target_dim,
                               std::uint64_t seed);

}  // namespace baire
