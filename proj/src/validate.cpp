#include "baire/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>

#include "baire/error.hpp"
#include "baire/format.hpp"
#include "baire/parallel.hpp"
#include "baire/projection.hpp"
#include "baire/rng.hpp"
#include "baire/stats.hpp"

namespace baire {

SymMatrix euclidean_distance_matrix(const std::vector<double>& x,
                                    std::size_t p, std::size_t q) {
  if (p < 2) throw_numeric("euclidean_distance_matrix: need p >= 2 rows");
  if (q < 1 || x.size() != p * q)
    throw_numeric("euclidean_distance_matrix: shape mismatch");
  SymMatrix m(p);
  double* out = m.condensed().data();
  parallel_for(0, p, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double* ri = x.data() + i * q;
      double* row = out + SymMatrix::condensed_index(p, i, i + 1);
      for (std::size_t j = i + 1; j < p; ++j) {
        const double* rj = x.data() + j * q;
        double s = 0.0;
        for (std::size_t c = 0; c < q; ++c) {
          const double diff = ri[c] - rj[c];
          s += diff * diff;
        }
        row[j - i - 1] = std::sqrt(s);
      }
    }
  }, 64);
  return m;
}

namespace {

constexpr std::size_t kNoNeighbour = static_cast<std::size_t>(-1);

// Nearest active neighbour of slot i among slots j > i: strict < scans give
// the smallest such j attaining the row minimum.
void recompute_nn(const std::vector<double>& d, std::size_t p,
                  const std::vector<char>& active, std::size_t i,
                  std::vector<double>& nn_dist,
                  std::vector<std::size_t>& nn_idx) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t bj = kNoNeighbour;
  const double* row = d.data() + SymMatrix::condensed_index(p, i, i + 1);
  for (std::size_t j = i + 1; j < p; ++j) {
    if (!active[j]) continue;
    const double v = row[j - i - 1];
    if (v < best) {
      best = v;
      bj = j;
    }
  }
  nn_dist[i] = best;
  nn_idx[i] = bj;
}

}  // namespace

Dendrogram agglomerative_hc(const SymMatrix& dist, Linkage linkage,
                            const std::vector<std::string>& ids) {
  const std::size_t p = dist.size();
  if (p < 2) throw_numeric("agglomerative_hc: need at least 2 points");
  if (p > 10000)
    throw_numeric("agglomerative_hc: " + std::to_string(p) +
                  " points exceed the 10^4 oracle-scale guard");
  if (ids.size() != p) throw_numeric("agglomerative_hc: id count mismatch");

  std::vector<double> d = dist.condensed();  // working copy
  std::vector<char> active(p, 1);
  std::vector<std::size_t> size(p, 1);
  std::vector<int> node_id(p);
  for (std::size_t i = 0; i < p; ++i) node_id[i] = static_cast<int>(i);

  std::vector<double> nn_dist(p);
  std::vector<std::size_t> nn_idx(p);
  for (std::size_t i = 0; i < p; ++i)
    recompute_nn(d, p, active, i, nn_dist, nn_idx);

  Dendrogram t;
  t.ids = ids;
  t.linkage = linkage;
  t.merges.reserve(p - 1);

  for (std::size_t step = 0; step + 1 < p; ++step) {
    // Global minimum over cached row minima; ascending scan with strict <
    // realizes the lexicographic (min index, max index) tie-break.
    double best = std::numeric_limits<double>::infinity();
    std::size_t a = kNoNeighbour;
    for (std::size_t i = 0; i < p; ++i) {
      if (!active[i] || nn_idx[i] == kNoNeighbour) continue;
      if (nn_dist[i] < best) {
        best = nn_dist[i];
        a = i;
      }
    }
    if (a == kNoNeighbour)
      throw_numeric("agglomerative_hc: internal error, no mergeable pair");
    const std::size_t b = nn_idx[a];

    Merge mg;
    mg.left = node_id[a] < node_id[b] ? node_id[a] : node_id[b];
    mg.right = node_id[a] < node_id[b] ? node_id[b] : node_id[a];
    mg.height = best;
    t.merges.push_back(mg);

    // Lance-Williams update of slot a's distances to every other active slot.
    const double na = static_cast<double>(size[a]);
    const double nb = static_cast<double>(size[b]);
    for (std::size_t x = 0; x < p; ++x) {
      if (!active[x] || x == a || x == b) continue;
      const double dax = d[SymMatrix::condensed_index(p, std::min(a, x),
                                                      std::max(a, x))];
      const double dbx = d[SymMatrix::condensed_index(p, std::min(b, x),
                                                      std::max(b, x))];
      const double merged = linkage == Linkage::average
                                ? (na * dax + nb * dbx) / (na + nb)
                                : std::min(dax, dbx);
      d[SymMatrix::condensed_index(p, std::min(a, x), std::max(a, x))] =
          merged;
    }
    size[a] += size[b];
    active[b] = 0;
    node_id[a] = static_cast<int>(p + step);

    // Caches referencing the merged or removed slot are stale; distances to
    // other slots only grew or held (group averages and minima are bounded
    // below by the cached row minimum), so other caches stay valid.
    recompute_nn(d, p, active, a, nn_dist, nn_idx);
    for (std::size_t i = 0; i < a; ++i) {
      if (!active[i]) continue;
      if (nn_idx[i] == a || nn_idx[i] == b)
        recompute_nn(d, p, active, i, nn_dist, nn_idx);
    }
    for (std::size_t i = a + 1; i < b; ++i) {
      if (!active[i]) continue;
      if (nn_idx[i] == b) recompute_nn(d, p, active, i, nn_dist, nn_idx);
    }
  }
  return t;
}

SymMatrix cophenetic_matrix(const Dendrogram& t) {
  const std::size_t p = t.leaves();
  if (p < 2) throw_numeric("cophenetic_matrix: need at least 2 leaves");
  if (t.merges.size() != p - 1)
    throw_numeric("cophenetic_matrix: malformed dendrogram");
  SymMatrix m(p);
  std::vector<std::vector<int>> members(2 * p - 1);
  for (std::size_t i = 0; i < p; ++i) members[i] = {static_cast<int>(i)};
  for (std::size_t r = 0; r < t.merges.size(); ++r) {
    const Merge& mg = t.merges[r];
    auto& left = members[static_cast<std::size_t>(mg.left)];
    auto& right = members[static_cast<std::size_t>(mg.right)];
    for (int x : left)
      for (int y : right)
        m.ref(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) =
            mg.height;
    auto& dst = members[p + r];
    if (left.size() >= right.size()) {
      dst = std::move(left);
      dst.insert(dst.end(), right.begin(), right.end());
    } else {
      dst = std::move(right);
      dst.insert(dst.end(), left.begin(), left.end());
    }
  }
  return m;
}

CopheneticResult cophenetic_correlation(const Dendrogram& t1,
                                        const Dendrogram& t2) {
  const std::size_t p = t1.leaves();
  if (t2.leaves() != p)
    throw_numeric("cophenetic_correlation: leaf count mismatch");
  std::unordered_map<std::string_view, std::size_t> pos2;
  pos2.reserve(p * 2);
  for (std::size_t i = 0; i < p; ++i) pos2.emplace(t2.ids[i], i);
  std::vector<std::size_t> map12(p);
  for (std::size_t i = 0; i < p; ++i) {
    auto it = pos2.find(t1.ids[i]);
    if (it == pos2.end())
      throw_numeric("cophenetic_correlation: leaf '" + t1.ids[i] +
                    "' missing from second dendrogram");
    map12[i] = it->second;
  }

  SymMatrix c1 = cophenetic_matrix(t1);
  SymMatrix c2 = cophenetic_matrix(t2);
  std::vector<double> v1, v2;
  v1.reserve(p * (p - 1) / 2);
  v2.reserve(p * (p - 1) / 2);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      v1.push_back(c1.at(i, j));
      v2.push_back(c2.at(map12[i], map12[j]));
    }
  }
  CopheneticResult r;
  r.n = p;
  r.coefficient = pearson(v1, v2);
  return r;
}

namespace {

void node_text(const Dendrogram& t, int node, std::string& out) {
  const int p = static_cast<int>(t.leaves());
  if (node < p) {
    out += t.ids[static_cast<std::size_t>(node)];
    return;
  }
  const Merge& mg = t.merges[static_cast<std::size_t>(node - p)];
  out += '(';
  node_text(t, mg.left, out);
  out += ',';
  node_text(t, mg.right, out);
  out += "):";
  append_double(out, mg.height);
}

}  // namespace

std::string dendrogram_to_text(const Dendrogram& t) {
  if (t.merges.empty()) throw_numeric("dendrogram_to_text: empty dendrogram");
  std::string out;
  node_text(t, static_cast<int>(t.leaves() + t.merges.size() - 1), out);
  out += '\n';
  return out;
}

std::vector<ClusterSummary> cluster_summaries(
    const DataMatrix& d, const std::vector<std::int64_t>& labels) {
  if (labels.size() != d.n)
    throw_numeric("cluster_summaries: label count mismatch");
  std::map<std::int64_t, std::size_t> group;  // ascending label order
  for (std::int64_t l : labels) group.emplace(l, 0);
  if (group.size() > 10000)
    throw_numeric("cluster_summaries: more than 10^4 distinct labels");
  std::size_t next = 0;
  for (auto& kv : group) kv.second = next++;
  const std::size_t c = group.size();
  const std::size_t m = d.m;

  std::vector<ClusterSummary> out(c);
  for (auto& kv : group) {
    out[kv.second].label = kv.first;
    out[kv.second].mean_vector.assign(m, 0.0);
  }
  std::vector<std::size_t> row_group(d.n);
  for (std::size_t i = 0; i < d.n; ++i) {
    const std::size_t g = group.find(labels[i])->second;
    row_group[i] = g;
    ++out[g].cardinality;
    const double* row = d.row(i);
    for (std::size_t j = 0; j < m; ++j) out[g].mean_vector[j] += row[j];
  }
  for (auto& s : out)
    for (double& v : s.mean_vector)
      v /= static_cast<double>(s.cardinality);

  std::vector<double> ss(c * m, 0.0);
  for (std::size_t i = 0; i < d.n; ++i) {
    const std::size_t g = row_group[i];
    const double* row = d.row(i);
    const double* mean = out[g].mean_vector.data();
    double* acc = ss.data() + g * m;
    for (std::size_t j = 0; j < m; ++j) {
      const double diff = row[j] - mean[j];
      acc[j] += diff * diff;
    }
  }
  for (std::size_t g = 0; g < c; ++g) {
    ClusterSummary& s = out[g];
    if (s.cardinality > 1) {
      double disp = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        disp += ss[g * m + j] / static_cast<double>(s.cardinality - 1);
      s.dispersion = disp;
    } else {
      s.dispersion = 0.0;  // singleton: sample variance undefined, use 0
    }
    s.three_sigma = 3.0 * std::sqrt(s.dispersion);
  }

  // Nearest neighbour over cluster means, brute force all pairs.
  for (std::size_t g = 0; g < c; ++g) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bh = c;
    for (std::size_t h = 0; h < c; ++h) {
      if (h == g) continue;
      double s2 = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double diff = out[g].mean_vector[j] - out[h].mean_vector[j];
        s2 += diff * diff;
      }
      const double dist = std::sqrt(s2);
      if (dist < best) {
        best = dist;
        bh = h;
      }
    }
    if (bh < c) {
      out[g].has_nn = true;
      out[g].nn_label = out[bh].label;
      out[g].nn_distance = best;
    }
  }
  return out;
}

SeparationReport separation_report(
    const std::vector<ClusterSummary>& summaries) {
  if (summaries.size() < 2)
    throw_numeric("separation_report: need at least 2 clusters");
  SeparationReport r;
  r.well_separated = true;
  for (const auto& s : summaries) {
    if (!s.has_nn) continue;
    SeparationEntry e;
    e.label = s.label;
    e.ratio = s.nn_distance > 0.0
                  ? s.three_sigma / s.nn_distance
                  : std::numeric_limits<double>::infinity();
    if (!(e.ratio < 1.0)) r.well_separated = false;
    r.ratios.push_back(e);
  }
  return r;
}

namespace {

Dendrogram tree_of_values(const std::vector<double>& values,
                          const std::vector<std::string>& ids,
                          Linkage linkage) {
  SymMatrix d = euclidean_distance_matrix(values, values.size(), 1);
  return agglomerative_hc(d, linkage, ids);
}

}  // namespace

IrisExperimentReport run_iris_experiment(const DataMatrix& iris,
                                         std::uint64_t seed) {
  IrisExperimentReport r;
  r.seed = seed;
  r.k = 100;

  SymMatrix data_dist = euclidean_distance_matrix(iris);
  Dendrogram data_tree =
      agglomerative_hc(data_dist, Linkage::average, iris.row_ids);

  Marginals mg = marginals(iris);
  Dendrogram rowsum_tree =
      tree_of_values(mg.row_sums, iris.row_ids, Linkage::average);

  AxisSet axes =
      generate_axes(iris.m, r.k, stage_seed(seed, Stage::axes));
  ProjectionSet proj = project(iris, axes, /*rescale=*/false);
  Seriation meanrp = consensus(proj, r.k);
  Dendrogram meanrp_tree =
      tree_of_values(meanrp.values, iris.row_ids, Linkage::average);

  r.coph_data_meanrp =
      cophenetic_correlation(data_tree, meanrp_tree).coefficient;
  r.coph_data_rowsums =
      cophenetic_correlation(data_tree, rowsum_tree).coefficient;
  r.coph_rowsums_meanrp =
      cophenetic_correlation(rowsum_tree, meanrp_tree).coefficient;
  return r;
}

UniformExperimentReport run_uniform_experiment(std::uint64_t seed,
                                               std::size_t subsample_rows) {
  UniformExperimentReport r;
  r.seed = seed;

  DataMatrix u;
  u.n = r.n;
  u.m = r.m;
  u.values.resize(r.n * r.m);
  SplitMix64 rng(stage_seed(seed, Stage::uniform_data));
  for (double& v : u.values) v = rng.uniform();
  u.row_ids.reserve(r.n);
  for (std::size_t i = 0; i < r.n; ++i)
    u.row_ids.push_back("u_" + std::to_string(i));

  Marginals mg = marginals(u);
  AxisSet axes = generate_axes(u.m, r.k, stage_seed(seed, Stage::axes));
  ProjectionSet proj = project(u, axes, /*rescale=*/false);
  Seriation meanrp = consensus(proj, r.k);

  r.corr_rowsums_meanrp = pearson(mg.row_sums, meanrp.values);

  std::size_t rows = r.n;
  if (subsample_rows > 0 && subsample_rows < r.n) rows = subsample_rows;
  r.subsample = rows == r.n ? 0 : rows;

  std::vector<std::string> ids(u.row_ids.begin(),
                               u.row_ids.begin() + static_cast<long>(rows));
  std::vector<double> data_head(u.values.begin(),
                                u.values.begin() +
                                    static_cast<long>(rows * r.m));
  std::vector<double> rowsum_head(mg.row_sums.begin(),
                                  mg.row_sums.begin() +
                                      static_cast<long>(rows));
  std::vector<double> meanrp_head(meanrp.values.begin(),
                                  meanrp.values.begin() +
                                      static_cast<long>(rows));

  SymMatrix data_dist = euclidean_distance_matrix(data_head, rows, r.m);
  Dendrogram data_tree = agglomerative_hc(data_dist, Linkage::average, ids);
  Dendrogram rowsum_tree = tree_of_values(rowsum_head, ids, Linkage::average);
  Dendrogram meanrp_tree = tree_of_values(meanrp_head, ids, Linkage::average);

  r.coph_data_meanrp =
      cophenetic_correlation(data_tree, meanrp_tree).coefficient;
  r.coph_data_rowsums =
      cophenetic_correlation(data_tree, rowsum_tree).coefficient;
  return r;
}

}  // namespace baire
