#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "baire/data_matrix.hpp"
#include "baire/sym_matrix.hpp"

namespace baire {

SymMatrix euclidean_distance_matrix(const std::vector<double>& x,
                                    std::size_t p, std::size_t q);

inline SymMatrix euclidean_distance_matrix(const DataMatrix& d) {
  return euclidean_distance_matrix(d.values, d.n, d.m);
}

enum class Linkage { average, single };

// One agglomeration step. Node ids follow the usual convention: leaves are
// 0..p-1 in input order, the merge recorded at step r creates node p+r.
struct Merge {
  int left = 0;   // smaller node id of the two children
  int right = 0;  // larger node id
  double height = 0.0;
};

struct Dendrogram {
  std::vector<std::string> ids;  // leaf identifiers, input order
  std::vector<Merge> merges;     // exactly leaves()-1 entries, heights monotone
  Linkage linkage = Linkage::average;

  std::size_t leaves() const { return ids.size(); }
};

// Classical agglomerative clustering over a precomputed distance matrix.
// average = UPGMA, single = minimum inter-cluster distance. Ties are broken
// deterministically by the lexicographically smallest (min index, max index)
// pair of current cluster slots. Quadratic-scale oracle: p <= 10^4.
Dendrogram agglomerative_hc(const SymMatrix& dist, Linkage linkage,
                            const std::vector<std::string>& ids);

// Entry (a,b) = height of the lowest merge joining leaves a and b.
SymMatrix cophenetic_matrix(const Dendrogram& t);

struct CopheneticResult {
  double coefficient = 0.0;
  std::size_t n = 0;  // leaf count
};

// Pearson correlation of the two trees' cophenetic distances over each
// unordered leaf pair once; leaves are aligned by id.
CopheneticResult cophenetic_correlation(const Dendrogram& t1,
                                        const Dendrogram& t2);

// Nested text export, one tree per line: leaves print their id, an internal
// node prints (left,right):height.
std::string dendrogram_to_text(const Dendrogram& t);

struct ClusterSummary {
  std::int64_t label = 0;
  std::size_t cardinality = 0;
  std::vector<double> mean_vector;
  double dispersion = 0.0;   // summed per-dimension sample variance
  double three_sigma = 0.0;  // 3 * sqrt(dispersion)
  bool has_nn = false;
  std::int64_t nn_label = 0;
  double nn_distance = 0.0;  // Euclidean distance between cluster means
};

// Per-cluster compactness and nearest-neighbour separation for a labelling
// of the rows of d.
std::vector<ClusterSummary> cluster_summaries(
    const DataMatrix& d, const std::vector<std::int64_t>& labels);

struct SeparationEntry {
  std::int64_t label = 0;
  double ratio = 0.0;  // three_sigma / nn_distance
};

struct SeparationReport {
  std::vector<SeparationEntry> ratios;
  bool well_separated = false;  // all ratios < 1
};

SeparationReport separation_report(
    const std::vector<ClusterSummary>& summaries);

// Canned reproduction experiments. Both form the consensus from raw
// (unrescaled) projections, which is the variant that reproduces the
// published iris band; the pipeline default elsewhere is rescaled averaging.
struct IrisExperimentReport {
  std::uint64_t seed = 0;
  std::size_t k = 100;
  double coph_data_meanrp = 0.0;
  double coph_data_rowsums = 0.0;   // deterministic given the fixture
  double coph_rowsums_meanrp = 0.0;
};

IrisExperimentReport run_iris_experiment(const DataMatrix& iris,
                                         std::uint64_t seed);

struct UniformExperimentReport {
  std::uint64_t seed = 0;
  std::size_t n = 2500;
  std::size_t m = 12;
  std::size_t k = 100;
  std::size_t subsample = 0;  // rows used for the O(n^2) trees; 0 = all
  double corr_rowsums_meanrp = 0.0;
  double coph_data_meanrp = 0.0;
  double coph_data_rowsums = 0.0;
};

UniformExperimentReport run_uniform_experiment(std::uint64_t seed,
                                               std::size_t subsample_rows = 0);

}  // namespace baire
