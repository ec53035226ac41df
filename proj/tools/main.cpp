#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "baire/error.hpp"
#include "baire/pipeline.hpp"

namespace {

// Options shared by the table-driven subcommands.
void add_table_options(CLI::App* cmd, baire::PipelineConfig& config) {
  cmd->add_option("-i,--input", config.input, "Input table (TSV or CSV)")
      ->required();
  std::map<std::string, baire::TableFormat> formats{
      {"tsv", baire::TableFormat::tsv}, {"csv", baire::TableFormat::csv}};
  cmd->add_option("--format", config.format, "Input format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("tsv");
  cmd->add_flag("--header,!--no-header", config.has_header,
                "First line is a header (default: on)");
  cmd->add_flag("--id-column,!--no-id-column", config.id_column,
                "First column holds row ids (default: on)");
  cmd->add_flag("--nonneg,!--no-nonneg", config.nonneg,
                "Require nonnegative values and positive row sums "
                "(default: on)");
  cmd->add_option("-o,--out", config.out_dir, "Output directory")
      ->envname("BAIRE_OUT");
  cmd->add_option("-t,--threads", config.threads,
                  "Worker threads (0 = machine parallelism)");
  cmd->add_option("-s,--seed", config.seed, "Top-level RNG seed");
  cmd->set_config("--config", "",
                  "Read options from a key=value config file "
                  "(command-line flags win)");
}

void add_seriation_options(CLI::App* cmd, baire::PipelineConfig& config) {
  std::map<std::string, baire::PipelineConfig::Source> sources{
      {"row_mass", baire::PipelineConfig::Source::row_mass},
      {"row_sum", baire::PipelineConfig::Source::row_sum},
      {"consensus", baire::PipelineConfig::Source::consensus}};
  cmd->add_option("--source", config.source,
                  "Seriation source: row_mass, row_sum or consensus")
      ->transform(CLI::CheckedTransformer(sources, CLI::ignore_case))
      ->default_str("row_mass");
  cmd->add_option("-k,--projections", config.projections,
                  "Number of random projections for consensus");
  cmd->add_flag("--consensus-raw", config.consensus_raw,
                "Average raw projections instead of rescaled ones");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "baire: linear-time hierarchical clustering of large observation sets\n"
      "by random-projection seriation, uniform re-encoding and digit-prefix\n"
      "(Baire ultrametric) partitioning, with classical agglomerative\n"
      "validation."};
  app.require_subcommand(1);

  baire::PipelineConfig config;
  std::string members_prefix;
  std::string experiment_name;
  std::string iris_path = "data/iris.tsv";
  std::uint64_t experiment_seed = 1;
  std::string experiment_out = "out";
  std::size_t uniform_subsample = 0;

  CLI::App* stats = app.add_subcommand(
      "stats", "Summary statistics, marginals and normality diagnostics");
  add_table_options(stats, config);

  CLI::App* seriate = app.add_subcommand(
      "seriate", "Compute the 1-D seriation (and correlation curve)");
  add_table_options(seriate, config);
  add_seriation_options(seriate, config);

  CLI::App* encode = app.add_subcommand(
      "encode", "Re-encode the seriation to near-uniform values in [0,1)");
  add_table_options(encode, config);
  add_seriation_options(encode, config);
  encode->add_option("--bins", config.histogram_bins,
                     "Histogram bins for the encoded values");

  CLI::App* cluster = app.add_subcommand(
      "cluster", "Full pipeline: seriate, encode, build the B-way hierarchy");
  add_table_options(cluster, config);
  add_seriation_options(cluster, config);
  cluster->add_flag("--encode,!--no-encode", config.encode,
                    "Apply the re-encoding stage (default: on); with "
                    "--no-encode the seriation must already lie in [0,1)");
  cluster->add_option("-B,--base", config.base, "Digits base B of the tree");
  cluster->add_option("-L,--depth", config.depth, "Number of tree levels");

  CLI::App* members = app.add_subcommand(
      "members", "List ids in the cluster of a digit prefix");
  add_table_options(members, config);
  add_seriation_options(members, config);
  members->add_flag("--encode,!--no-encode", config.encode,
                    "Apply the re-encoding stage (default: on)");
  members->add_option("-B,--base", config.base, "Digits base B of the tree");
  members->add_option("-L,--depth", config.depth, "Number of tree levels");
  members->add_option("--prefix", members_prefix,
                      "Comma-separated digits, e.g. 3,7 (empty = root)");

  CLI::App* experiments = app.add_subcommand(
      "experiments", "Canned validation experiments (iris, uniform)");
  experiments->add_option("name", experiment_name, "iris or uniform")
      ->required();
  experiments->add_option("-s,--seed", experiment_seed, "Top-level RNG seed");
  experiments->add_option("-o,--out", experiment_out, "Output directory")
      ->envname("BAIRE_OUT");
  experiments->add_option("--iris-path", iris_path,
                          "Path to the bundled 150x4 iris fixture");
  experiments->add_option("--subsample", uniform_subsample,
                          "Rows used for the uniform experiment's quadratic "
                          "oracle trees (0 = all 2500)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (stats->parsed()) baire::cmd_stats(config);
    if (seriate->parsed()) baire::cmd_seriate(config);
    if (encode->parsed()) baire::cmd_encode(config);
    if (cluster->parsed()) baire::cmd_cluster(config);
    if (members->parsed())
      baire::cmd_members(config, members_prefix, std::cout);
    if (experiments->parsed())
      baire::cmd_experiments(experiment_name, experiment_seed, experiment_out,
                             iris_path, uniform_subsample, std::cout);
  } catch (const baire::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
