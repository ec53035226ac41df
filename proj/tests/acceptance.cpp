// Acceptance harness: one criterion per --criterion value, one PASS/FAIL/
// SKIPPED line each, exit 0/1/77. Without --criterion, runs all ten.
#include <sys/resource.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "baire/data_matrix.hpp"
#include "baire/diagnostics.hpp"
#include "baire/encode.hpp"
#include "baire/error.hpp"
#include "baire/format.hpp"
#include "baire/hierarchy.hpp"
#include "baire/pipeline.hpp"
#include "baire/projection.hpp"
#include "baire/rng.hpp"
#include "baire/stats.hpp"
#include "baire/validate.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr int kSkipExit = 77;

struct Args {
  int criterion = 0;  // 0 = all
  std::string iris;
  std::string gene_table;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return baire::format_double(v); }

struct Verdict {
  bool pass = true;
  bool skipped = false;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    pass = pass && ok;
  }
};

void print_verdict(int n, const Verdict& v, const std::string& headline) {
  const char* status = v.skipped ? "SKIPPED" : (v.pass ? "PASS" : "FAIL");
  std::cout << "CRITERION " << n << ": " << status << " - " << headline
            << "\n";
  for (const auto& note : v.notes) std::cout << "    " << note << "\n";
  std::cout.flush();
}

std::string default_iris() {
  return std::string(BAIRE_SOURCE_DIR) + "/data/iris.tsv";
}

fs::path scratch_dir() {
  const auto dir =
      fs::temp_directory_path() /
      ("acceptance_" + std::to_string(static_cast<unsigned>(::getpid())));
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------- criterion 1
Verdict criterion1(const Args& args) {
  Verdict v;
  const auto t0 = Clock::now();
  const auto iris = baire::load_matrix(
      args.iris.empty() ? default_iris() : args.iris, {});
  const auto report = baire::run_iris_experiment(iris, 1);
  const double elapsed = seconds_since(t0);
  const double got = report.coph_data_rowsums;
  v.check(std::abs(got - 0.9885) <= 0.005,
          "cophenetic(data, row sums) = " + fmt(got) +
              ", reference 0.9885 +/- 0.005");
  v.check(elapsed < 5.0, "runtime " + fmt(elapsed) + " s < 5 s");
  return v;
}

// ---------------------------------------------------------------- criterion 2
Verdict criterion2(const Args& args) {
  Verdict v;
  const auto t0 = Clock::now();
  const auto iris = baire::load_matrix(
      args.iris.empty() ? default_iris() : args.iris, {});
  double sum_dm = 0.0, sum_rm = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = baire::run_iris_experiment(iris, seed);
    sum_dm += r.coph_data_meanrp;
    sum_rm += r.coph_rowsums_meanrp;
    v.notes.push_back("seed " + std::to_string(seed) +
                      ": coph(data, mean RP) = " + fmt(r.coph_data_meanrp) +
                      ", coph(row sums, mean RP) = " +
                      fmt(r.coph_rowsums_meanrp));
  }
  const double mean_dm = sum_dm / 5.0;
  const double mean_rm = sum_rm / 5.0;
  const double elapsed = seconds_since(t0);
  v.check(std::abs(mean_dm - 0.8798) <= 0.02,
          "mean coph(data, mean RP) over 5 seeds = " + fmt(mean_dm) +
              ", reference 0.8798 +/- 0.02");
  v.check(mean_rm >= 0.999,
          "mean coph(row sums, mean RP) = " + fmt(mean_rm) + " >= 0.999");
  v.check(elapsed < 10.0, "runtime " + fmt(elapsed) + " s < 10 s");
  return v;
}

// ---------------------------------------------------------------- criterion 3
Verdict criterion3(const Args&) {
  Verdict v;
  const auto t0 = Clock::now();
  const auto r = baire::run_uniform_experiment(1, 0);
  const double elapsed = seconds_since(t0);
  v.check(r.corr_rowsums_meanrp >= 0.98,
          "corr(row sums, mean of 100 RPs) = " + fmt(r.corr_rowsums_meanrp) +
              " >= 0.98");
  v.check(std::abs(r.coph_data_meanrp - 0.58) <= 0.05,
          "cophenetic(data, mean RP) = " + fmt(r.coph_data_meanrp) +
              ", reference 0.58 +/- 0.05");
  v.check(std::abs(r.coph_data_rowsums - 0.578) <= 0.05,
          "cophenetic(data, row sums) = " + fmt(r.coph_data_rowsums) +
              ", reference 0.578 +/- 0.05");
  v.check(elapsed < 60.0, "runtime " + fmt(elapsed) + " s < 60 s");
  return v;
}

// ---------------------------------------------------------------- criterion 4
bool close_rel(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::abs(want);
}

Verdict criterion4(const Args& args) {
  Verdict v;
  std::string path = args.gene_table;
  if (path.empty()) {
    if (const char* env = std::getenv("BAIRE_GENE_TABLE")) path = env;
  }
  if (path.empty() || !fs::exists(path)) {
    v.skipped = true;
    v.notes.push_back(
        "supply the 61359x16 gene table via --gene-table or BAIRE_GENE_TABLE "
        "to enable this criterion");
    return v;
  }

  baire::LoadOptions opt;
  opt.nonneg = true;
  const auto d = baire::load_matrix(path, opt);
  v.check(d.n == 61359 && d.m == 16,
          "dimensions " + std::to_string(d.n) + "x" + std::to_string(d.m) +
              ", reference 61359x16");

  const auto s = baire::summary_stats(d);
  v.check(close_rel(s.max, 676496.0, 1e-6), "max = " + fmt(s.max));
  v.check(close_rel(s.min, 0.199789, 1e-6), "min = " + fmt(s.min));
  v.check(close_rel(s.mean, 1130.097, 1e-6), "mean = " + fmt(s.mean));
  v.check(close_rel(s.median, 130.5835, 1e-6), "median = " + fmt(s.median));

  const auto mg = baire::marginals(d);
  double fmin = mg.row_masses[0], fmax = mg.row_masses[0];
  for (double f : mg.row_masses) {
    fmin = std::min(fmin, f);
    fmax = std::max(fmax, f);
  }
  v.check(close_rel(fmin, 1.049568e-07, 1e-6), "min f_I = " + fmt(fmin));
  v.check(close_rel(fmax, 0.004014821, 1e-6), "max f_I = " + fmt(fmax));

  baire::Seriation ser;
  ser.ids = d.row_ids;
  ser.values = mg.row_masses;
  ser.kind = baire::SeriationKind::row_mass;
  const auto enc = baire::encode_pipeline(ser);
  const auto h = baire::build_hierarchy(enc, 10, 3);

  const std::vector<std::size_t> want_cards{2345, 8445, 10347, 9316, 6948,
                                            5122, 3999, 3588, 3926, 7323};
  const auto t1 = baire::partition_table(h, 1);
  bool cards_ok = t1.cardinalities.size() == 10;
  if (cards_ok)
    for (std::size_t i = 0; i < 10; ++i)
      cards_ok = cards_ok &&
                 t1.cardinalities[i].first == static_cast<std::int64_t>(i) &&
                 t1.cardinalities[i].second == want_cards[i];
  v.check(cards_ok, "level-1 cardinalities match the ten reference counts");
  v.check(baire::partition_table(h, 2).nonempty_count == 99,
          "level-2 non-empty clusters = " +
              std::to_string(baire::partition_table(h, 2).nonempty_count) +
              ", reference 99");
  v.check(baire::partition_table(h, 3).nonempty_count == 989,
          "level-3 non-empty clusters = " +
              std::to_string(baire::partition_table(h, 3).nonempty_count) +
              ", reference 989");

  std::vector<std::int64_t> labels;
  for (std::size_t i = 0; i < d.n; ++i) labels.push_back(h.label_at(1, i));
  const auto summaries = baire::cluster_summaries(d, labels);
  const std::vector<double> want_sigma{49.92530,  85.11277,  124.10223,
                                       130.90670, 161.75631, 205.36007,
                                       180.60822, 275.07759, 367.02603,
                                       1152.21181};
  const std::vector<double> want_nn{94.48774,  125.75401, 160.40965,
                                    213.86643, 296.95453, 445.92892,
                                    767.96664, 1586.48549, 27694.34381};
  bool table_ok = summaries.size() == 10;
  if (table_ok)
    for (std::size_t i = 0; i < 10; ++i) {
      table_ok = table_ok && close_rel(summaries[i].three_sigma,
                                       want_sigma[i], 5e-4);
      if (i < 9)
        table_ok = table_ok &&
                   summaries[i].nn_label ==
                       static_cast<std::int64_t>(i + 1) &&
                   close_rel(summaries[i].nn_distance, want_nn[i], 5e-4);
    }
  v.check(table_ok,
          "3*sigma and NN-distance columns match to 4 significant figures");
  return v;
}

// ---------------------------------------------------------------- criterion 5
Verdict criterion5(const Args&) {
  Verdict v;
  const auto t0 = Clock::now();
  std::size_t checked = 0, violations = 0;
  for (int base : {2, 10}) {
    baire::SplitMix64 g(500 + static_cast<std::uint64_t>(base));
    for (int rep = 0; rep < 10000; ++rep) {
      const double x = g.uniform(), y = g.uniform(), z = g.uniform();
      const double dxz = baire::baire_distance(x, z, base, 8);
      const double dxy = baire::baire_distance(x, y, base, 8);
      const double dyz = baire::baire_distance(y, z, base, 8);
      if (dxz > std::max(dxy, dyz)) ++violations;
      ++checked;
    }
  }
  const double elapsed = seconds_since(t0);
  v.check(violations == 0,
          std::to_string(checked) + " triples (B in {2,10}, K = 8), " +
              std::to_string(violations) + " strong-triangle violations");
  v.check(elapsed < 1.0, "runtime " + fmt(elapsed) + " s < 1 s");
  return v;
}

// ---------------------------------------------------------------- criterion 6
Verdict criterion6(const Args&) {
  Verdict v;
  const auto t0 = Clock::now();
  baire::EncodedSeriation e;
  baire::SplitMix64 g(600);
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) {
    e.ids.push_back("v" + std::to_string(i));
    e.values.push_back(g.uniform());
  }
  const int depth = 4;
  const auto h = baire::build_hierarchy(e, 10, depth);
  std::size_t violations = 0;
  for (int l = 1; l < depth; ++l)
    for (std::size_t i = 0; i < n; ++i)
      if (h.label_at(l, i) != h.label_at(l + 1, i) / 10) ++violations;
  const double elapsed = seconds_since(t0);
  v.check(violations == 0,
          "nesting over " + std::to_string(n) + " values, levels 1..4: " +
              std::to_string(violations) + " violations");
  v.check(elapsed < 1.0, "runtime " + fmt(elapsed) + " s < 1 s");
  return v;
}

// ---------------------------------------------------------------- criterion 7
Verdict criterion7(const Args&) {
  Verdict v;
  const auto t0 = Clock::now();
  baire::Seriation s;
  baire::SplitMix64 g(700);
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) {
    s.ids.push_back("v" + std::to_string(i));
    s.values.push_back(std::exp(g.gaussian()));
  }
  const auto e = baire::encode_pipeline(s);
  bool in_range = true;
  for (double u : e.values) in_range = in_range && u >= 0.0 && u < 1.0;

  auto sorted = e.values;
  std::sort(sorted.begin(), sorted.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ks = std::max(ks, std::abs((i + 1.0) / n - sorted[i]));
    ks = std::max(ks, std::abs(sorted[i] - static_cast<double>(i) / n));
  }
  const double elapsed = seconds_since(t0);
  v.check(ks < 0.02, "KS distance from uniform = " + fmt(ks) + " < 0.02 at n = " +
                         std::to_string(n));
  v.check(in_range, "all encoded values in [0,1)");
  v.check(elapsed < 1.0, "runtime " + fmt(elapsed) + " s < 1 s");
  return v;
}

// ---------------------------------------------------------------- criterion 8
void write_gene_like_table(const fs::path& path, std::size_t n,
                           std::size_t m, std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  out << "id";
  for (std::size_t j = 0; j < m; ++j) out << "\tc" << j;
  out << '\n';
  baire::SplitMix64 g(seed);
  std::string line;
  for (std::size_t i = 0; i < n; ++i) {
    const double row_scale = std::exp(2.0 * g.gaussian());
    line.clear();
    line += 'g';
    line += std::to_string(i);
    for (std::size_t j = 0; j < m; ++j) {
      line += '\t';
      baire::append_double(line, row_scale * std::exp(0.3 * g.gaussian()));
    }
    line += '\n';
    out << line;
  }
}

// The linearity claim is only meaningful if nothing on the path sorts the
// observations; these sources make up the cmd_cluster path.
bool pipeline_sources_sort_free(std::string& offender) {
  const std::vector<std::string> files{"pipeline.cpp", "projection.cpp",
                                       "encode.cpp",   "data_matrix.cpp",
                                       "format.cpp",   "parallel.cpp"};
  for (const auto& f : files) {
    std::ifstream in(std::string(BAIRE_SOURCE_DIR) + "/src/" + f);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    for (const char* needle :
         {"std::sort", "std::stable_sort", "std::nth_element",
          "std::partial_sort", "qsort"}) {
      if (text.find(needle) != std::string::npos) {
        offender = f + " contains " + needle;
        return false;
      }
    }
  }
  return true;
}

Verdict criterion8(const Args&) {
  Verdict v;
  const auto dir = scratch_dir();
  const std::size_t m = 8;

  auto time_cluster = [&](const fs::path& table, const fs::path& out) {
    baire::PipelineConfig c;
    c.input = table.string();
    c.out_dir = out.string();
    c.source = baire::PipelineConfig::Source::consensus;
    c.projections = 10;
    c.consensus_raw = true;
    c.base = 10;
    c.depth = 3;
    c.threads = 4;
    double best = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = Clock::now();
      baire::cmd_cluster(c);
      const double t = seconds_since(t0);
      if (rep == 0 || t < best) best = t;
    }
    return best;
  };

  const auto small_table = dir / "n1e6.tsv";
  write_gene_like_table(small_table, 1000000, m, 81);
  const double t_small = time_cluster(small_table, dir / "out1");

  struct rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_gb = static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);

  const auto big_table = dir / "n2e6.tsv";
  write_gene_like_table(big_table, 2000000, m, 82);
  const double t_big = time_cluster(big_table, dir / "out2");

  const double ratio = t_big / t_small;
  v.check(ratio <= 2.4,
          "cmd_cluster best-of-3: " + fmt(t_small) + " s at n = 10^6, " +
              fmt(t_big) + " s at n = 2*10^6, ratio " + fmt(ratio) +
              " <= 2.4 (k = 10, B = 10, L = 3, 4 threads)");
  v.check(peak_gb < 1.0,
          "peak RSS through the n = 10^6 runs = " + fmt(peak_gb) +
              " GB < 1.0 GB (matrix + parse buffer + O(n*L) labels)");
  std::string offender;
  const bool sort_free = pipeline_sources_sort_free(offender);
  v.check(sort_free, sort_free
                         ? "source audit: no comparison sort over "
                           "observations on the cmd_cluster path"
                         : "source audit: " + offender);
  fs::remove_all(dir);
  return v;
}

// ---------------------------------------------------------------- criterion 9
Verdict criterion9(const Args&) {
  Verdict v;

  // Prefix read-off versus threshold clustering on the Baire distance.
  bool prefix_ok = true;
  baire::SplitMix64 g(900);
  for (int subset = 0; subset < 10 && prefix_ok; ++subset) {
    baire::EncodedSeriation e;
    for (int i = 0; i < 500; ++i) {
      e.ids.push_back("s" + std::to_string(subset) + "_" + std::to_string(i));
      e.values.push_back(g.uniform());
    }
    const auto h = baire::build_hierarchy(e, 10, 3);
    const auto dist = baire::distance_matrix_baire(e, e.ids, 10, 8);
    for (int level = 1; level <= 3 && prefix_ok; ++level) {
      const auto table = baire::partition_table(h, level);
      const double threshold = std::pow(10.0, -level);
      for (const auto& [label, count] : table.cardinalities) {
        std::vector<int> prefix;
        std::int64_t rest = label;
        for (int l = 0; l < level; ++l) {
          prefix.insert(prefix.begin(), static_cast<int>(rest % 10));
          rest /= 10;
        }
        const auto members = baire::cluster_members(h, prefix);
        std::size_t first = 0;
        while (e.ids[first] != members.front()) ++first;
        std::set<std::string> by_threshold;
        for (std::size_t j = 0; j < e.ids.size(); ++j)
          if (dist.at(first, j) <= threshold) by_threshold.insert(e.ids[j]);
        prefix_ok = prefix_ok && members.size() == count &&
                    by_threshold.size() == members.size();
        for (const auto& id : members)
          prefix_ok = prefix_ok && by_threshold.count(id) == 1;
      }
    }
  }
  v.check(prefix_ok,
          "prefix membership = threshold membership on 10 subsets of 500 "
          "(levels 1..3, exact)");

  // Nearest-neighbour cluster table against the all-pairs oracle.
  bool nn_ok = true;
  baire::SplitMix64 gd(901);
  baire::DataMatrix d;
  d.n = 300;
  d.m = 6;
  for (std::size_t i = 0; i < d.n; ++i) {
    d.row_ids.push_back("r" + std::to_string(i));
    for (std::size_t j = 0; j < d.m; ++j)
      d.values.push_back(gd.uniform(0.0, 10.0));
  }
  std::vector<std::int64_t> labels;
  for (std::size_t i = 0; i < d.n; ++i)
    labels.push_back(static_cast<std::int64_t>(gd.next() % 12));
  const auto summaries = baire::cluster_summaries(d, labels);
  for (std::size_t a = 0; a < summaries.size(); ++a) {
    std::size_t best = a;
    double best_d = 0.0;
    for (std::size_t b = 0; b < summaries.size(); ++b) {
      if (b == a) continue;
      double acc = 0.0;
      for (std::size_t c = 0; c < d.m; ++c) {
        const double diff =
            summaries[a].mean_vector[c] - summaries[b].mean_vector[c];
        acc += diff * diff;
      }
      const double dist = std::sqrt(acc);
      if (best == a || dist < best_d) {
        best = b;
        best_d = dist;
      }
    }
    nn_ok = nn_ok && summaries[a].has_nn &&
            summaries[a].nn_label == summaries[best].label &&
            summaries[a].nn_distance == best_d;
  }
  v.check(nn_ok, "NN-cluster table matches the brute-force all-pairs oracle");

  // Power iteration against a full eigendecomposition.
  bool eig_ok = true;
  std::string eig_note;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t p = 8;
    baire::SplitMix64 gs(seed);
    std::vector<double> s(p * p, 0.0);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j) {
        const double x = gs.uniform(-1.0, 1.0);
        s[i * p + j] = x;
        s[j * p + i] = x;
      }
    const auto r = baire::power_iteration(s, p, 1e-12, 2000000);
    Eigen::MatrixXd es(p, p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) es(i, j) = s[i * p + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(es);
    std::size_t dom = 0;
    for (std::size_t i = 1; i < p; ++i)
      if (std::abs(solver.eigenvalues()(i)) >
          std::abs(solver.eigenvalues()(dom)))
        dom = i;
    double dot = 0.0;
    for (std::size_t i = 0; i < p; ++i)
      dot += r.eigenvector[i] * solver.eigenvectors()(i, dom);
    const bool ok = r.converged &&
                    std::abs(r.eigenvalue - solver.eigenvalues()(dom)) <= 1e-8 &&
                    std::abs(dot) >= 1.0 - 1e-8;
    if (!ok && eig_ok)
      eig_note = " (first mismatch at seed " + std::to_string(seed) + ")";
    eig_ok = eig_ok && ok;
  }
  v.check(eig_ok,
          "power iteration matches the dense eigensolver within 1e-8 on 20 "
          "seeded 8x8 matrices" +
              eig_note);
  return v;
}

// --------------------------------------------------------------- criterion 10
Verdict criterion10(const Args&) {
  Verdict v;
  baire::SplitMix64 g(1000);
  bool zero_ok = true, positive_ok = true;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + g.next() % 19;
    const std::size_t m = 2 + g.next() % 14;
    std::vector<double> r(n), c(m);
    for (auto& x : r) x = g.uniform(0.1, 5.0);
    for (auto& x : c) x = g.uniform(0.1, 5.0);
    baire::DataMatrix d;
    d.n = n;
    d.m = m;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d.row_ids.push_back("r" + std::to_string(i));
      for (std::size_t j = 0; j < m; ++j) {
        d.values.push_back(r[i] * c[j]);
        total += r[i] * c[j];
      }
    }
    zero_ok = zero_ok && baire::chi2_independence(d) <= 1e-9 * total;

    auto bent = d;
    const std::size_t cell = g.next() % (n * m);
    bent.values[cell] += 0.5 + 0.5 * bent.values[cell];
    positive_ok = positive_ok && baire::chi2_independence(bent) > 1e-6;
  }
  v.check(zero_ok,
          "chi-squared <= 1e-9 * total on 100 seeded outer-product matrices");
  v.check(positive_ok, "chi-squared > 0 on the perturbed versions");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  Args args;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    auto next = [&](const char* flag) -> std::string {
      if (i + 1 >= argc) {
        std::cerr << "missing value for " << flag << "\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (a == "--criterion") {
      args.criterion = std::atoi(next("--criterion").c_str());
    } else if (a == "--iris") {
      args.iris = next("--iris");
    } else if (a == "--gene-table") {
      args.gene_table = next("--gene-table");
    } else {
      std::cerr << "usage: acceptance [--criterion N] [--iris PATH]"
                   " [--gene-table PATH]\n";
      return 2;
    }
  }
  if (args.criterion < 0 || args.criterion > 10) {
    std::cerr << "criterion must be 1..10\n";
    return 2;
  }

  using Runner = Verdict (*)(const Args&);
  const Runner runners[10] = {criterion1, criterion2, criterion3, criterion4,
                              criterion5, criterion6, criterion7, criterion8,
                              criterion9, criterion10};
  const char* headlines[10] = {
      "iris deterministic cophenetic agreement",
      "iris consensus-projection cophenetic agreement",
      "uniform 2500x12 seriation and cophenetic agreement",
      "gene-table reproduction",
      "Baire distance ultrametricity",
      "partition nesting",
      "uniformization quality",
      "linear-time contract for cmd_cluster",
      "oracle equivalence (prefix/threshold, NN table, power iteration)",
      "chi-squared independence diagnostic"};

  int exit_code = 0;
  const int lo = args.criterion == 0 ? 1 : args.criterion;
  const int hi = args.criterion == 0 ? 10 : args.criterion;
  for (int n = lo; n <= hi; ++n) {
    Verdict verdict;
    try {
      verdict = runners[n - 1](args);
    } catch (const std::exception& e) {
      verdict.pass = false;
      verdict.notes.push_back(std::string("error: ") + e.what());
    }
    print_verdict(n, verdict, headlines[n - 1]);
    if (verdict.skipped) {
      if (args.criterion != 0) exit_code = kSkipExit;
    } else if (!verdict.pass) {
      exit_code = args.criterion != 0 ? 1 : std::max(exit_code, 1);
    }
  }
  return exit_code;
}
