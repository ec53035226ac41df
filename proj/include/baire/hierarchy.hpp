#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "baire/encode.hpp"
#include "baire/sym_matrix.hpp"

namespace baire {

// Deepest level at which every extracted base-B digit of a double in [0,1)
// is still significant: floor(52 / log2(B)).
int max_depth_for_base(int base);

// First `count` base-B digits of v in [0,1), by repeated multiply-and-floor.
std::vector<int> digits(double v, int base, int count);

// B^{-s} where s is the length of the longest common digit prefix of u and v
// (0 when the full K digits agree). Values are exact powers of B, so the
// strong triangle inequality holds with no tolerance.
double baire_distance(double u, double v, int base, int precision);

// Regular B-way tree of nested partitions: labels at level l are the first l
// digits of each encoded value, read as a base-B integer.
struct BaireHierarchy {
  int base = 10;
  int depth = 3;
  std::vector<std::string> ids;
  std::vector<double> source_values;   // the encoded seriation it was built on
  std::vector<std::int64_t> labels;    // row-major depth*n; level l at row l-1

  std::int64_t label_at(int level, std::size_t i) const {
    return labels[static_cast<std::size_t>(level - 1) * ids.size() + i];
  }
};

BaireHierarchy build_hierarchy(const EncodedSeriation& e, int base, int depth);

// All ids whose level-|prefix| label matches the prefix; empty prefix means
// the root cluster (all ids). One O(n) scan, stable input order.
std::vector<std::string> cluster_members(const BaireHierarchy& h,
                                         const std::vector<int>& prefix);

struct PartitionTable {
  int level = 1;
  // (label, count) for non-empty clusters only, ascending label order.
  std::vector<std::pair<std::int64_t, std::size_t>> cardinalities;
  std::size_t nonempty_count = 0;
};

PartitionTable partition_table(const BaireHierarchy& h, int level);

// Pairwise Baire distances over a subset of ids (quadratic; guarded).
SymMatrix distance_matrix_baire(const EncodedSeriation& e,
                                const std::vector<std::string>& subset,
                                int base, int precision);

}  // namespace baire
