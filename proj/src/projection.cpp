#include "baire/projection.hpp"

#include <cmath>
#include <unordered_set>

#include "baire/error.hpp"
#include "baire/parallel.hpp"
#include "baire/rng.hpp"
#include "baire/stats.hpp"

namespace baire {

namespace {

constexpr double kBelowOne = 0x1.fffffffffffffp-1;  // largest double < 1

// In-place rescale of one projection to [0,1): min -> 0, max -> kBelowOne,
// constant -> all zeros.
void rescale_into_unit(double* v, std::size_t n) {
  double lo = v[0], hi = v[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] < lo) lo = v[i];
    if (v[i] > hi) hi = v[i];
  }
  if (hi == lo) {
    for (std::size_t i = 0; i < n; ++i) v[i] = 0.0;
    return;
  }
  const double span = hi - lo;
  parallel_for(0, n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      double u = (v[i] - lo) / span;
      if (u >= 1.0) u = kBelowOne;
      if (u < 0.0) u = 0.0;
      v[i] = u;
    }
  });
}

void project_one(const DataMatrix& d, const double* axis, double* out) {
  const std::size_t m = d.m;
  parallel_for(0, d.n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double* row = d.row(i);
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += row[j] * axis[j];
      out[i] = s;
    }
  });
}

}  // namespace

AxisSet generate_axes(std::size_t m, std::size_t k, std::uint64_t seed) {
  if (m < 1 || k < 1) throw_numeric("generate_axes: need m >= 1 and k >= 1");
  AxisSet a;
  a.k = k;
  a.m = m;
  a.seed = seed;
  a.axes.resize(k * m);
  SplitMix64 rng(seed);
  for (double& v : a.axes) v = rng.uniform();  // row-major; one stream, so the streaming path can replay it
  return a;
}

ProjectionSet project(const DataMatrix& d, const AxisSet& a, bool rescale) {
  if (a.m != d.m)
    throw_numeric("project: axis dimension " + std::to_string(a.m) +
                  " does not match matrix attribute count " +
                  std::to_string(d.m));
  ProjectionSet p;
  p.k = a.k;
  p.n = d.n;
  p.source_seed = a.seed;
  p.rescaled = rescale;
  p.ids = d.row_ids;
  p.values.resize(a.k * d.n);
  for (std::size_t t = 0; t < a.k; ++t) {
    double* out = p.values.data() + t * d.n;
    project_one(d, a.axes.data() + t * a.m, out);
    if (rescale) rescale_into_unit(out, d.n);
  }
  return p;
}

Seriation consensus(const ProjectionSet& p, std::size_t t) {
  if (t < 1 || t > p.k)
    throw_numeric("consensus: t=" + std::to_string(t) +
                  " outside 1.." + std::to_string(p.k));
  Seriation s;
  s.ids = p.ids;
  s.kind = SeriationKind::consensus_projection;
  s.values.assign(p.n, 0.0);
  for (std::size_t row = 0; row < t; ++row) {
    const double* v = p.projection(row);
    for (std::size_t i = 0; i < p.n; ++i) s.values[i] += v[i];
  }
  const double denom = static_cast<double>(t);
  for (double& v : s.values) v /= denom;
  return s;
}

CorrelationCurve correlation_curve(const Seriation& rowsums,
                                   const ProjectionSet& p) {
  if (rowsums.values.size() != p.n)
    throw_numeric("correlation_curve: length mismatch");
  CorrelationCurve c;
  c.corr.reserve(p.k);
  std::vector<double> acc(p.n, 0.0);
  std::vector<double> mean(p.n);
  for (std::size_t t = 1; t <= p.k; ++t) {
    const double* v = p.projection(t - 1);
    for (std::size_t i = 0; i < p.n; ++i) acc[i] += v[i];
    const double denom = static_cast<double>(t);
    for (std::size_t i = 0; i < p.n; ++i) mean[i] = acc[i] / denom;
    c.corr.push_back(pearson(rowsums.values, mean));
  }
  return c;
}

StreamingConsensus consensus_streaming(
    const DataMatrix& d, std::size_t k, std::uint64_t seed, bool rescale,
    const std::vector<double>* rowsums_for_curve) {
  if (k < 1) throw_numeric("consensus_streaming: need k >= 1");
  if (rowsums_for_curve && rowsums_for_curve->size() != d.n)
    throw_numeric("consensus_streaming: row-sum length mismatch");

  // Axis entries are tiny (k*m); the per-observation buffers dominate and
  // stay at O(n) regardless of k.
  AxisSet axes = generate_axes(d.m, k, seed);
  StreamingConsensus out;
  std::vector<double> acc(d.n, 0.0);
  std::vector<double> buf(d.n);
  std::vector<double> mean;
  if (rowsums_for_curve) {
    mean.resize(d.n);
    out.curve.corr.reserve(k);
  }

  for (std::size_t t = 0; t < k; ++t) {
    project_one(d, axes.axes.data() + t * d.m, buf.data());
    if (rescale) rescale_into_unit(buf.data(), d.n);
    parallel_for(0, d.n, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) acc[i] += buf[i];
    });
    if (rowsums_for_curve) {
      const double denom = static_cast<double>(t + 1);
      for (std::size_t i = 0; i < d.n; ++i) mean[i] = acc[i] / denom;
      out.curve.corr.push_back(pearson(*rowsums_for_curve, mean));
    }
  }

  out.seriation.ids = d.row_ids;
  out.seriation.kind = SeriationKind::consensus_projection;
  out.seriation.values = std::move(acc);
  const double denom = static_cast<double>(k);
  for (double& v : out.seriation.values) v /= denom;
  return out;
}

GaussianMapResult gaussian_map(const DataMatrix& d, std::size_t target_dim,
                               std::uint64_t seed) {
  if (target_dim < 1) throw_numeric("gaussian_map: target_dim >= 1 required");
  GaussianMapResult r;
  r.n = d.n;
  r.dim = target_dim;
  r.mapped.assign(d.n * target_dim, 0.0);

  std::vector<double> g(d.m * target_dim);
  SplitMix64 grng(stage_seed(seed, Stage::gaussian_map));
  for (double& v : g) v = grng.gaussian();

  parallel_for(0, d.n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double* row = d.row(i);
      double* out = r.mapped.data() + i * target_dim;
      for (std::size_t j = 0; j < d.m; ++j) {
        const double x = row[j];
        const double* grow = g.data() + j * target_dim;
        for (std::size_t c = 0; c < target_dim; ++c) out[c] += x * grow[c];
      }
      double norm = 0.0;
      for (std::size_t c = 0; c < target_dim; ++c) norm += out[c] * out[c];
      norm = std::sqrt(norm);
      if (norm > 0.0)
        for (std::size_t c = 0; c < target_dim; ++c) out[c] /= norm;
    }
  });

  // Distortion over a fixed-seed sample of distinct pairs, capped at 10^4.
  const std::uint64_t n64 = d.n;
  const std::uint64_t total_pairs = n64 < 2 ? 0 : n64 * (n64 - 1) / 2;
  const std::uint64_t want =
      total_pairs < 10000 ? total_pairs : static_cast<std::uint64_t>(10000);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(want);
  if (total_pairs == want) {
    for (std::size_t i = 0; i < d.n; ++i)
      for (std::size_t j = i + 1; j < d.n; ++j) pairs.emplace_back(i, j);
  } else if (want > 0) {
    SplitMix64 prng(stage_seed(seed, Stage::distortion_pairs));
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(want * 2);
    while (pairs.size() < want) {
      std::size_t i = static_cast<std::size_t>(prng.next() % n64);
      std::size_t j = static_cast<std::size_t>(prng.next() % n64);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      const std::uint64_t key = static_cast<std::uint64_t>(i) * n64 + j;
      if (seen.insert(key).second) pairs.emplace_back(i, j);
    }
  }

  std::vector<double> orig_d, map_d;
  orig_d.reserve(pairs.size());
  map_d.reserve(pairs.size());
  for (auto [i, j] : pairs) {
    double so = 0.0;
    const double* ri = d.row(i);
    const double* rj = d.row(j);
    for (std::size_t c = 0; c < d.m; ++c) {
      const double diff = ri[c] - rj[c];
      so += diff * diff;
    }
    const double od = std::sqrt(so);
    if (od == 0.0) continue;  // coincident points: 0 maps to 0, no ratio
    double sm = 0.0;
    const double* mi = r.mapped.data() + i * target_dim;
    const double* mj = r.mapped.data() + j * target_dim;
    for (std::size_t c = 0; c < target_dim; ++c) {
      const double diff = mi[c] - mj[c];
      sm += diff * diff;
    }
    orig_d.push_back(od);
    map_d.push_back(std::sqrt(sm));
  }

  DistortionReport& rep = r.distortion;
  rep.pairs = orig_d.size();
  if (rep.pairs == 0) return r;
  double sum_o = 0.0, sum_m = 0.0;
  for (std::size_t p = 0; p < orig_d.size(); ++p) {
    sum_o += orig_d[p];
    sum_m += map_d[p];
  }
  if (sum_m == 0.0) {
    rep.scale = 0.0;
    rep.min_ratio = rep.max_ratio = rep.mean_ratio = 0.0;
    return r;
  }
  rep.scale = sum_o / sum_m;
  double lo = 0.0, hi = 0.0, total = 0.0;
  for (std::size_t p = 0; p < orig_d.size(); ++p) {
    const double ratio = rep.scale * map_d[p] / orig_d[p];
    if (p == 0 || ratio < lo) lo = ratio;
    if (p == 0 || ratio > hi) hi = ratio;
    total += ratio;
  }
  rep.min_ratio = lo;
  rep.max_ratio = hi;
  rep.mean_ratio = total / static_cast<double>(rep.pairs);
  return r;
}

}  // namespace baire
