#include "baire/pipeline.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "baire/encode.hpp"
#include "baire/error.hpp"
#include "baire/format.hpp"
#include "baire/hierarchy.hpp"
#include "baire/parallel.hpp"
#include "baire/projection.hpp"
#include "baire/rng.hpp"
#include "baire/stats.hpp"
#include "baire/validate.hpp"

namespace baire {

namespace {

using nlohmann::json;

LoadOptions load_options(const PipelineConfig& c) {
  LoadOptions o;
  o.format = c.format;
  o.has_header = c.has_header;
  o.id_column = c.id_column;
  o.nonneg = c.nonneg;
  return o;
}

std::string out_path(const PipelineConfig& c, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(c.out_dir, ec);
  if (ec)
    throw_usage("cannot create output directory '" + c.out_dir +
                "': " + ec.message());
  return (std::filesystem::path(c.out_dir) / name).string();
}

const char* verdict_name(NormalityVerdict v) {
  return v == NormalityVerdict::consistent_with_normal
             ? "consistent_with_normal"
             : "not_normal";
}

json normality_json(const std::vector<double>& v, double alpha) {
  try {
    NormalityReport r = normality_diagnostic(v, alpha);
    return json{{"skewness", r.skewness},
                {"excess_kurtosis", r.excess_kurtosis},
                {"statistic", r.statistic},
                {"p_value", r.p_value},
                {"alpha", r.alpha},
                {"verdict", verdict_name(r.verdict)}};
  } catch (const Error& e) {
    return json{{"error", e.what()}};
  }
}

struct SeriationArtifacts {
  DataMatrix d;
  Marginals mg;
  Seriation s;
  CorrelationCurve curve;  // only filled for consensus + want_curve
};

SeriationArtifacts make_seriation(const PipelineConfig& c, bool want_curve) {
  set_thread_count(c.threads);
  SeriationArtifacts a;
  a.d = load_matrix(c.input, load_options(c));
  a.mg = marginals(a.d);
  switch (c.source) {
    case PipelineConfig::Source::row_mass:
      a.s.ids = a.d.row_ids;
      a.s.values = a.mg.row_masses;
      a.s.kind = SeriationKind::row_mass;
      break;
    case PipelineConfig::Source::row_sum:
      a.s.ids = a.d.row_ids;
      a.s.values = a.mg.row_sums;
      a.s.kind = SeriationKind::row_sum;
      break;
    case PipelineConfig::Source::consensus: {
      StreamingConsensus sc = consensus_streaming(
          a.d, c.projections, stage_seed(c.seed, Stage::axes),
          /*rescale=*/!c.consensus_raw,
          want_curve ? &a.mg.row_sums : nullptr);
      a.s = std::move(sc.seriation);
      a.curve = std::move(sc.curve);
      break;
    }
  }
  return a;
}

EncodedSeriation encode_stage(const PipelineConfig& c, const Seriation& s) {
  if (c.encode) return encode_pipeline(s);
  // Values are used as-is; build_hierarchy validates the [0,1) range.
  EncodedSeriation e;
  e.ids = s.ids;
  e.values = s.values;
  e.provenance.chain = "identity";
  e.provenance.mean = 0.0;
  e.provenance.sd = 1.0;
  return e;
}

void write_seriation_csv(const std::string& path, const Seriation& s) {
  std::string out = "id,value\n";
  out.reserve(out.size() + s.ids.size() * 24);
  for (std::size_t i = 0; i < s.ids.size(); ++i) {
    out += s.ids[i];
    out += ',';
    append_double(out, s.values[i]);
    out += '\n';
  }
  write_file(path, out);
}

void write_curve_csv(const std::string& path, const CorrelationCurve& curve) {
  std::string out = "t,corr\n";
  for (std::size_t t = 0; t < curve.corr.size(); ++t) {
    out += std::to_string(t + 1);
    out += ',';
    append_double(out, curve.corr[t]);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace

void cmd_stats(const PipelineConfig& c) {
  set_thread_count(c.threads);
  DataMatrix d = load_matrix(c.input, load_options(c));
  SummaryStats st = summary_stats(d);
  Marginals mg = marginals(d);

  double mass_min = mg.row_masses[0], mass_max = mg.row_masses[0];
  for (double v : mg.row_masses) {
    if (v < mass_min) mass_min = v;
    if (v > mass_max) mass_max = v;
  }

  json report{
      {"input", c.input},
      {"n", d.n},
      {"m", d.m},
      {"summary",
       {{"max", st.max}, {"min", st.min}, {"mean", st.mean},
        {"median", st.median}}},
      {"marginals",
       {{"total", mg.total},
        {"row_mass_min", mass_min},
        {"row_mass_max", mass_max}}},
  };
  report["normality_col_sums"] = normality_json(mg.col_sums, 0.05);

  // The log of the row masses is what the re-encoding stage standardizes, so
  // its normality is the relevant distributional diagnostic.
  try {
    Seriation masses;
    masses.ids = d.row_ids;
    masses.values = mg.row_masses;
    masses.kind = SeriationKind::row_mass;
    report["normality_log_row_masses"] =
        normality_json(log_transform(masses), 0.05);
  } catch (const Error& e) {
    report["normality_log_row_masses"] = json{{"error", e.what()}};
  }

  write_file(out_path(c, "stats.json"), report.dump(2) + "\n");

  std::string csv = "id,row_sum,row_mass\n";
  csv.reserve(csv.size() + d.n * 32);
  for (std::size_t i = 0; i < d.n; ++i) {
    csv += d.row_ids[i];
    csv += ',';
    append_double(csv, mg.row_sums[i]);
    csv += ',';
    append_double(csv, mg.row_masses[i]);
    csv += '\n';
  }
  write_file(out_path(c, "marginals.csv"), csv);
}

void cmd_seriate(const PipelineConfig& c) {
  const bool consensus_source = c.source == PipelineConfig::Source::consensus;
  SeriationArtifacts a = make_seriation(c, /*want_curve=*/consensus_source);
  write_seriation_csv(out_path(c, "seriation.csv"), a.s);
  if (consensus_source)
    write_curve_csv(out_path(c, "correlation_curve.csv"), a.curve);
}

void cmd_encode(const PipelineConfig& c) {
  SeriationArtifacts a = make_seriation(c, /*want_curve=*/false);
  EncodedSeriation e = encode_pipeline(a.s);

  std::string csv = "id,encoded_value\n";
  csv.reserve(csv.size() + e.ids.size() * 28);
  for (std::size_t i = 0; i < e.ids.size(); ++i) {
    csv += e.ids[i];
    csv += ',';
    append_double(csv, e.values[i]);
    csv += '\n';
  }
  write_file(out_path(c, "encoded.csv"), csv);

  Histogram h =
      histogram_report(e.values, c.histogram_bins, {{0.0, 1.0}});
  std::string hist = "bin_low,bin_high,count\n";
  const double width = (h.hi - h.lo) / static_cast<double>(h.counts.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    append_double(hist, h.lo + width * static_cast<double>(b));
    hist += ',';
    append_double(hist, b + 1 == h.counts.size()
                            ? h.hi
                            : h.lo + width * static_cast<double>(b + 1));
    hist += ',';
    hist += std::to_string(h.counts[b]);
    hist += '\n';
  }
  write_file(out_path(c, "encoded_histogram.csv"), hist);

  json prov{{"chain", e.provenance.chain},
            {"mean", e.provenance.mean},
            {"sd", e.provenance.sd}};
  write_file(out_path(c, "encode_provenance.json"), prov.dump(2) + "\n");
}

void cmd_cluster(const PipelineConfig& c) {
  SeriationArtifacts a = make_seriation(c, /*want_curve=*/false);
  EncodedSeriation e = encode_stage(c, a.s);
  BaireHierarchy h = build_hierarchy(e, c.base, c.depth);
  const std::size_t n = h.ids.size();

  std::string labels = "id";
  for (int l = 1; l <= c.depth; ++l)
    labels += ",label_level" + std::to_string(l);
  labels += '\n';
  labels.reserve(labels.size() + n * (12 + 8 * static_cast<std::size_t>(c.depth)));
  for (std::size_t i = 0; i < n; ++i) {
    labels += h.ids[i];
    for (int l = 1; l <= c.depth; ++l) {
      labels += ',';
      labels += std::to_string(h.label_at(l, i));
    }
    labels += '\n';
  }
  write_file(out_path(c, "labels.csv"), labels);

  std::string parts = "level,label,count\n";
  for (int l = 1; l <= c.depth; ++l) {
    PartitionTable t = partition_table(h, l);
    for (const auto& [label, count] : t.cardinalities) {
      parts += std::to_string(l);
      parts += ',';
      parts += std::to_string(label);
      parts += ',';
      parts += std::to_string(count);
      parts += '\n';
    }
  }
  write_file(out_path(c, "partition_tables.csv"), parts);

  std::vector<std::int64_t> level1(n);
  for (std::size_t i = 0; i < n; ++i) level1[i] = h.label_at(1, i);
  std::vector<ClusterSummary> summaries = cluster_summaries(a.d, level1);
  std::string table = "label,three_sigma,nn_label,nn_distance\n";
  for (const auto& s : summaries) {
    table += std::to_string(s.label);
    table += ',';
    append_double(table, s.three_sigma);
    table += ',';
    if (s.has_nn) {
      table += std::to_string(s.nn_label);
      table += ',';
      append_double(table, s.nn_distance);
    } else {
      table += ',';
    }
    table += '\n';
  }
  write_file(out_path(c, "cluster_summary.csv"), table);
}

void cmd_members(const PipelineConfig& c, const std::string& prefix,
                 std::ostream& out) {
  std::vector<int> digits_list;
  std::size_t pos = 0;
  while (pos < prefix.size()) {
    std::size_t comma = prefix.find(',', pos);
    std::string tok = prefix.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? prefix.size() : comma + 1;
    if (tok.empty()) throw_usage("members: empty digit in prefix");
    for (char ch : tok)
      if (ch < '0' || ch > '9')
        throw_usage("members: invalid digit token '" + tok + "'");
    digits_list.push_back(std::stoi(tok));
  }

  SeriationArtifacts a = make_seriation(c, /*want_curve=*/false);
  EncodedSeriation e = encode_stage(c, a.s);
  BaireHierarchy h = build_hierarchy(e, c.base, c.depth);
  for (const auto& id : cluster_members(h, digits_list)) out << id << '\n';
}

void cmd_experiments(const std::string& name, std::uint64_t seed,
                     const std::string& out_dir, const std::string& iris_path,
                     std::size_t uniform_subsample, std::ostream& out) {
  PipelineConfig dir_only;
  dir_only.out_dir = out_dir;
  json report;
  if (name == "iris") {
    LoadOptions opts;
    opts.format = TableFormat::tsv;
    DataMatrix iris = load_matrix(iris_path, opts);
    if (iris.n != 150 || iris.m != 4)
      throw_usage("iris fixture at '" + iris_path + "' is " +
                  std::to_string(iris.n) + "x" + std::to_string(iris.m) +
                  ", expected 150x4");
    IrisExperimentReport r = run_iris_experiment(iris, seed);
    report = json{{"experiment", "iris"},
                  {"seed", r.seed},
                  {"projections", r.k},
                  {"coph_data_meanrp", r.coph_data_meanrp},
                  {"coph_data_rowsums", r.coph_data_rowsums},
                  {"coph_rowsums_meanrp", r.coph_rowsums_meanrp}};
  } else if (name == "uniform") {
    UniformExperimentReport r = run_uniform_experiment(seed, uniform_subsample);
    report = json{{"experiment", "uniform"},
                  {"seed", r.seed},
                  {"n", r.n},
                  {"m", r.m},
                  {"projections", r.k},
                  {"subsample", r.subsample},
                  {"corr_rowsums_meanrp", r.corr_rowsums_meanrp},
                  {"coph_data_meanrp", r.coph_data_meanrp},
                  {"coph_data_rowsums", r.coph_data_rowsums}};
  } else {
    throw_usage("unknown experiment '" + name + "' (expected iris or uniform)");
  }
  const std::string text = report.dump(2) + "\n";
  write_file(out_path(dir_only, "experiment_" + name + ".json"), text);
  out << text;
}

}  // namespace baire
