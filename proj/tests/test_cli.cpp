#include <cstddef>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "baire/data_matrix.hpp"
#include "baire/encode.hpp"
#include "baire/error.hpp"
#include "baire/pipeline.hpp"
#include "baire/rng.hpp"
#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;

std::string write_random_table(const fs::path& dir, std::size_t n,
                               std::size_t m, std::uint64_t seed) {
  baire::DataMatrix d;
  d.n = n;
  d.m = m;
  baire::SplitMix64 g(seed);
  for (std::size_t i = 0; i < n; ++i) {
    d.row_ids.push_back("g" + std::to_string(i));
    for (std::size_t j = 0; j < m; ++j)
      d.values.push_back(std::exp(g.gaussian()) * g.uniform(0.5, 1.5));
  }
  for (std::size_t j = 0; j < m; ++j)
    d.col_names.push_back("c" + std::to_string(j));
  const auto path = dir / "table.tsv";
  baire::save_matrix(d, path.string(), baire::TableFormat::tsv);
  return path.string();
}

baire::PipelineConfig base_config(const std::string& input,
                                  const fs::path& out) {
  baire::PipelineConfig c;
  c.input = input;
  c.out_dir = out.string();
  c.threads = 2;
  return c;
}

std::vector<double> csv_value_column(const std::string& path) {
  baire::LoadOptions opt;
  opt.format = baire::TableFormat::csv;
  const auto d = baire::load_matrix(path, opt);
  std::vector<double> out;
  for (std::size_t i = 0; i < d.n; ++i) out.push_back(d.at(i, 0));
  return out;
}

}  // namespace

TEST_CASE("cmd_stats reports the four summary values of a 1x1 matrix") {
  const auto dir = oracle::temp_dir("cli_stats");
  baire::write_file((dir / "one.tsv").string(), "id\tv\nonly\t5\n");
  auto c = base_config((dir / "one.tsv").string(), dir / "out");
  baire::cmd_stats(c);
  const auto report =
      nlohmann::json::parse(oracle::read_text(dir / "out" / "stats.json"));
  CHECK(report["n"] == 1);
  CHECK(report["m"] == 1);
  CHECK(report["summary"]["max"] == 5.0);
  CHECK(report["summary"]["min"] == 5.0);
  CHECK(report["summary"]["mean"] == 5.0);
  CHECK(report["summary"]["median"] == 5.0);
  const auto marginals = oracle::read_text(dir / "out" / "marginals.csv");
  CHECK(marginals == "id,row_sum,row_mass\nonly,5,1\n");
}

TEST_CASE("cmd_stats on a missing input is a usage failure") {
  const auto dir = oracle::temp_dir("cli_missing");
  auto c = base_config((dir / "absent.tsv").string(), dir / "out");
  try {
    baire::cmd_stats(c);
    FAIL("expected an IO error");
  } catch (const baire::Error& e) {
    CHECK(e.exit_code() == 2);
    CHECK(std::string(e.what()).find("absent.tsv") != std::string::npos);
  }
}

TEST_CASE("row-mass seriation equals the marginal masses") {
  const auto dir = oracle::temp_dir("cli_row_mass");
  const auto table = write_random_table(dir, 40, 6, 1);
  auto c = base_config(table, dir / "out");
  c.source = baire::PipelineConfig::Source::row_mass;
  baire::cmd_seriate(c);
  const auto values =
      csv_value_column((dir / "out" / "seriation.csv").string());
  const auto d = baire::load_matrix(table, {});
  const auto mg = baire::marginals(d);
  REQUIRE(values.size() == d.n);
  for (std::size_t i = 0; i < d.n; ++i) CHECK(values[i] == mg.row_masses[i]);
  CHECK_FALSE(fs::exists(dir / "out" / "correlation_curve.csv"));
}

TEST_CASE("consensus seriation writes a correlation curve of length k") {
  const auto dir = oracle::temp_dir("cli_consensus");
  const auto table = write_random_table(dir, 60, 5, 2);
  auto c = base_config(table, dir / "out");
  c.source = baire::PipelineConfig::Source::consensus;
  c.projections = 25;
  baire::cmd_seriate(c);
  const auto curve =
      csv_value_column((dir / "out" / "correlation_curve.csv").string());
  CHECK(curve.size() == 25);
  for (double v : curve) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }

  auto c2 = base_config(table, dir / "out2");
  c2.source = baire::PipelineConfig::Source::consensus;
  c2.projections = 25;
  c2.seed = 99;
  baire::cmd_seriate(c2);
  CHECK(oracle::read_text(dir / "out" / "seriation.csv") !=
        oracle::read_text(dir / "out2" / "seriation.csv"));
}

TEST_CASE("identical configs give byte-identical outputs across threads") {
  const auto dir = oracle::temp_dir("cli_determinism");
  const auto table = write_random_table(dir, 120, 7, 3);
  std::vector<std::string> files{"labels.csv", "partition_tables.csv",
                                 "cluster_summary.csv"};
  auto run = [&](const fs::path& out, int threads, std::uint64_t seed) {
    auto c = base_config(table, out);
    c.source = baire::PipelineConfig::Source::consensus;
    c.projections = 10;
    c.consensus_raw = true;
    c.threads = threads;
    c.seed = seed;
    baire::cmd_cluster(c);
  };
  run(dir / "a", 1, 7);
  run(dir / "b", 4, 7);
  run(dir / "c", 2, 8);
  for (const auto& f : files) {
    CHECK(oracle::read_text(dir / "a" / f) == oracle::read_text(dir / "b" / f));
  }
  CHECK(oracle::read_text(dir / "a" / "labels.csv") !=
        oracle::read_text(dir / "c" / "labels.csv"));
}

TEST_CASE("cluster labels nest and partition tables cover every row") {
  const auto dir = oracle::temp_dir("cli_cluster");
  const auto table = write_random_table(dir, 200, 4, 5);
  auto c = base_config(table, dir / "out");
  c.depth = 2;
  baire::cmd_cluster(c);

  baire::LoadOptions opt;
  opt.format = baire::TableFormat::csv;
  const auto labels =
      baire::load_matrix((dir / "out" / "labels.csv").string(), opt);
  REQUIRE(labels.n == 200);
  REQUIRE(labels.m == 2);
  for (std::size_t i = 0; i < labels.n; ++i) {
    const auto l1 = static_cast<long long>(labels.at(i, 0));
    const auto l2 = static_cast<long long>(labels.at(i, 1));
    CHECK(l1 == l2 / 10);
  }

  auto no_id = opt;
  no_id.id_column = false;
  const auto parts = baire::load_matrix(
      (dir / "out" / "partition_tables.csv").string(), no_id);
  std::size_t covered_l1 = 0, covered_l2 = 0;
  for (std::size_t r = 0; r < parts.n; ++r) {
    if (parts.at(r, 0) == 1.0) covered_l1 += static_cast<std::size_t>(parts.at(r, 2));
    if (parts.at(r, 0) == 2.0) covered_l2 += static_cast<std::size_t>(parts.at(r, 2));
  }
  CHECK(covered_l1 == 200);
  CHECK(covered_l2 == 200);
}

TEST_CASE("ten rows in distinct decades become ten singletons") {
  const auto dir = oracle::temp_dir("cli_decades");
  std::string tsv = "id\tv\n";
  for (int i = 0; i < 10; ++i)
    tsv += "d" + std::to_string(i) + "\t0." + std::to_string(i) + "5\n";
  baire::write_file((dir / "decades.tsv").string(), tsv);
  auto c = base_config((dir / "decades.tsv").string(), dir / "out");
  c.source = baire::PipelineConfig::Source::row_sum;
  c.encode = false;
  c.depth = 1;
  baire::cmd_cluster(c);
  baire::LoadOptions opt;
  opt.format = baire::TableFormat::csv;
  opt.id_column = false;
  const auto parts =
      baire::load_matrix((dir / "out" / "partition_tables.csv").string(), opt);
  REQUIRE(parts.n == 10);
  for (std::size_t r = 0; r < parts.n; ++r) {
    CHECK(parts.at(r, 1) == static_cast<double>(r));
    CHECK(parts.at(r, 2) == 1.0);
  }
}

TEST_CASE("members listing honours prefixes and stays disjoint") {
  const auto dir = oracle::temp_dir("cli_members");
  const auto table = write_random_table(dir, 150, 5, 8);
  auto c = base_config(table, dir / "out");

  std::ostringstream all;
  baire::cmd_members(c, "", all);
  std::vector<std::string> all_ids;
  std::istringstream lines(all.str());
  for (std::string line; std::getline(lines, line);) all_ids.push_back(line);
  CHECK(all_ids.size() == 150);
  CHECK(all_ids.front() == "g0");

  std::ostringstream three, seven;
  baire::cmd_members(c, "3", three);
  baire::cmd_members(c, "7", seven);
  std::set<std::string> in_three;
  std::istringstream t3(three.str());
  for (std::string line; std::getline(t3, line);) in_three.insert(line);
  std::istringstream t7(seven.str());
  for (std::string line; std::getline(t7, line);)
    CHECK(in_three.count(line) == 0);

  std::ostringstream sink;
  CHECK_THROWS_AS(baire::cmd_members(c, "3,x", sink), baire::Error);
  CHECK_THROWS_AS(baire::cmd_members(c, "12", sink), baire::Error);
}

TEST_CASE("recorded provenance replays the encoding bit-for-bit") {
  const auto dir = oracle::temp_dir("cli_provenance");
  const auto table = write_random_table(dir, 90, 6, 13);
  auto c = base_config(table, dir / "out");
  baire::cmd_encode(c);

  const auto prov_json = nlohmann::json::parse(
      oracle::read_text(dir / "out" / "encode_provenance.json"));
  baire::TransformProvenance prov;
  prov.chain = prov_json["chain"].get<std::string>();
  prov.mean = prov_json["mean"].get<double>();
  prov.sd = prov_json["sd"].get<double>();
  CHECK(prov.chain == "log,standardize,uniformize");

  const auto d = baire::load_matrix(table, {});
  const auto mg = baire::marginals(d);
  baire::Seriation s;
  s.ids = d.row_ids;
  s.values = mg.row_masses;
  s.kind = baire::SeriationKind::row_mass;
  const auto replay = baire::encode_with_provenance(s, prov);
  const auto written =
      csv_value_column((dir / "out" / "encoded.csv").string());
  REQUIRE(written.size() == replay.values.size());
  for (std::size_t i = 0; i < written.size(); ++i)
    CHECK(written[i] == replay.values[i]);

  const auto hist =
      baire::load_matrix((dir / "out" / "encoded_histogram.csv").string(),
                         [] {
                           baire::LoadOptions o;
                           o.format = baire::TableFormat::csv;
                           o.id_column = false;
                           return o;
                         }());
  REQUIRE(hist.n == 10);
  double total = 0.0;
  for (std::size_t r = 0; r < hist.n; ++r) total += hist.at(r, 2);
  CHECK(total == 90.0);
}

TEST_CASE("unknown experiment names are usage errors") {
  const auto dir = oracle::temp_dir("cli_experiments");
  std::ostringstream sink;
  try {
    baire::cmd_experiments("nope", 1, (dir / "out").string(), "unused", 0,
                           sink);
    FAIL("expected a usage error");
  } catch (const baire::Error& e) {
    CHECK(e.exit_code() == 2);
  }
}

TEST_CASE("uniform experiment writes a JSON report") {
  const auto dir = oracle::temp_dir("cli_uniform");
  std::ostringstream out;
  baire::cmd_experiments("uniform", 3, (dir / "out").string(), "unused", 200,
                         out);
  const auto echoed = nlohmann::json::parse(out.str());
  const auto written = nlohmann::json::parse(
      oracle::read_text(dir / "out" / "experiment_uniform.json"));
  CHECK(echoed == written);
  CHECK(written["experiment"] == "uniform");
  CHECK(written["corr_rowsums_meanrp"].get<double>() > 0.9);
}
