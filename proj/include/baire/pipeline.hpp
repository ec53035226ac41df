#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "baire/data_matrix.hpp"

namespace baire {

// One configuration drives every subcommand; a single seed reproduces the
// whole run byte-for-byte.
struct PipelineConfig {
  std::string input;
  TableFormat format = TableFormat::tsv;
  bool has_header = true;
  bool id_column = true;
  bool nonneg = true;

  enum class Source { row_mass, row_sum, consensus };
  Source source = Source::row_mass;
  std::size_t projections = 100;  // k, when source == consensus
  bool consensus_raw = false;     // average raw instead of rescaled projections
  bool encode = true;             // log -> standardize -> uniformize stage

  int base = 10;
  int depth = 3;
  std::uint64_t seed = 1;
  std::size_t histogram_bins = 10;

  std::string out_dir = "out";
  int threads = 0;  // 0 = machine parallelism
};

void cmd_stats(const PipelineConfig& config);
void cmd_seriate(const PipelineConfig& config);
void cmd_encode(const PipelineConfig& config);
void cmd_cluster(const PipelineConfig& config);
void cmd_members(const PipelineConfig& config, const std::string& prefix,
                 std::ostream& out);
void cmd_experiments(const std::string& name, std::uint64_t seed,
                     const std::string& out_dir, const std::string& iris_path,
                     std::size_t uniform_subsample, std::ostream& out);

}  // namespace baire
