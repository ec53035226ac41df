#include "baire/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>
#include <unordered_map>

#include "baire/error.hpp"
#include "baire/format.hpp"
#include "baire/parallel.hpp"

namespace baire {

namespace {

void check_unit_range(double v, const char* what) {
  if (!(v >= 0.0) || !(v < 1.0))
    throw_numeric(std::string(what) + ": value " + format_double(v) +
                  " outside [0,1)");
}

void check_base(int base) {
  if (base < 2) throw_numeric("base must be >= 2");
}

double inv_power(int base, int s) {
  // Exact integer power, then one division: every distance is the same
  // double for the same s, which is what makes the ultrametric exact.
  std::int64_t p = 1;
  for (int i = 0; i < s; ++i) p *= base;
  return 1.0 / static_cast<double>(p);
}

}  // namespace

int max_depth_for_base(int base) {
  check_base(base);
  return static_cast<int>(52.0 / std::log2(static_cast<double>(base)));
}

std::vector<int> digits(double v, int base, int count) {
  check_base(base);
  if (count < 1) throw_numeric("digits: count must be >= 1");
  check_unit_range(v, "digits");
  std::vector<int> out(static_cast<std::size_t>(count));
  double w = v;
  const double b = static_cast<double>(base);
  for (int k = 0; k < count; ++k) {
    w *= b;
    double d = std::floor(w);
    if (d >= b) d = b - 1.0;  // guards the w -> 1.0 rounding edge
    out[static_cast<std::size_t>(k)] = static_cast<int>(d);
    w -= d;
  }
  return out;
}

double baire_distance(double u, double v, int base, int precision) {
  check_base(base);
  if (precision < 1) throw_numeric("baire_distance: precision must be >= 1");
  if (precision > max_depth_for_base(base))
    throw_numeric("baire_distance: precision " + std::to_string(precision) +
                  " beyond significant-digit bound " +
                  std::to_string(max_depth_for_base(base)) + " for base " +
                  std::to_string(base));
  check_unit_range(u, "baire_distance");
  check_unit_range(v, "baire_distance");

  const double b = static_cast<double>(base);
  double wu = u, wv = v;
  int s = 0;
  for (int k = 0; k < precision; ++k) {
    wu *= b;
    wv *= b;
    double du = std::floor(wu);
    double dv = std::floor(wv);
    if (du >= b) du = b - 1.0;
    if (dv >= b) dv = b - 1.0;
    if (du != dv) break;
    ++s;
    wu -= du;
    wv -= dv;
  }
  if (s == precision) return 0.0;
  return inv_power(base, s);
}

BaireHierarchy build_hierarchy(const EncodedSeriation& e, int base,
                               int depth) {
  check_base(base);
  if (depth < 1) throw_numeric("build_hierarchy: depth must be >= 1");
  const int bound = max_depth_for_base(base);
  if (depth > bound)
    throw_numeric("build_hierarchy: depth " + std::to_string(depth) +
                  " beyond significant-digit bound " + std::to_string(bound) +
                  " for base " + std::to_string(base));

  BaireHierarchy h;
  h.base = base;
  h.depth = depth;
  h.ids = e.ids;
  h.source_values = e.values;
  const std::size_t n = e.values.size();
  h.labels.resize(static_cast<std::size_t>(depth) * n);

  const double b = static_cast<double>(base);
  parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double w = e.values[i];
      if (!(w >= 0.0) || !(w < 1.0))
        throw_numeric("build_hierarchy: encoded value " + format_double(w) +
                      " at '" + e.ids[i] + "' outside [0,1)");
      std::int64_t label = 0;
      for (int l = 0; l < depth; ++l) {
        w *= b;
        double d = std::floor(w);
        if (d >= b) d = b - 1.0;
        w -= d;
        label = label * base + static_cast<std::int64_t>(d);
        h.labels[static_cast<std::size_t>(l) * n + i] = label;
      }
    }
  });
  return h;
}

std::vector<std::string> cluster_members(const BaireHierarchy& h,
                                         const std::vector<int>& prefix) {
  if (static_cast<int>(prefix.size()) > h.depth)
    throw_numeric("cluster_members: prefix longer than hierarchy depth");
  if (prefix.empty()) return h.ids;
  std::int64_t target = 0;
  for (int d : prefix) {
    if (d < 0 || d >= h.base)
      throw_numeric("cluster_members: digit " + std::to_string(d) +
                    " invalid for base " + std::to_string(h.base));
    target = target * h.base + d;
  }
  const int level = static_cast<int>(prefix.size());
  const std::size_t n = h.ids.size();
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    if (h.label_at(level, i) == target) out.push_back(h.ids[i]);
  return out;
}

PartitionTable partition_table(const BaireHierarchy& h, int level) {
  if (level < 1 || level > h.depth)
    throw_numeric("partition_table: level " + std::to_string(level) +
                  " outside 1.." + std::to_string(h.depth));
  PartitionTable t;
  t.level = level;
  const std::size_t n = h.ids.size();

  // Dense counting when B^level is small, hashed otherwise; either way the
  // output lists non-empty clusters in ascending label order.
  double cells = std::pow(static_cast<double>(h.base), level);
  if (cells <= 4e6) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(cells), 0);
    for (std::size_t i = 0; i < n; ++i)
      ++counts[static_cast<std::size_t>(h.label_at(level, i))];
    for (std::size_t label = 0; label < counts.size(); ++label)
      if (counts[label] > 0)
        t.cardinalities.emplace_back(static_cast<std::int64_t>(label),
                                     counts[label]);
  } else {
    std::unordered_map<std::int64_t, std::size_t> counts;
    counts.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) ++counts[h.label_at(level, i)];
    t.cardinalities.assign(counts.begin(), counts.end());
    std::sort(t.cardinalities.begin(), t.cardinalities.end());
  }
  t.nonempty_count = t.cardinalities.size();
  return t;
}

SymMatrix distance_matrix_baire(const EncodedSeriation& e,
                                const std::vector<std::string>& subset,
                                int base, int precision) {
  if (subset.size() > 10000)
    throw_numeric("distance_matrix_baire: subset of " +
                  std::to_string(subset.size()) +
                  " exceeds the 10^4 quadratic guard");
  if (subset.size() < 1) throw_numeric("distance_matrix_baire: empty subset");

  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(e.ids.size() * 2);
  for (std::size_t i = 0; i < e.ids.size(); ++i)
    index.emplace(e.ids[i], i);
  std::vector<double> vals(subset.size());
  for (std::size_t s = 0; s < subset.size(); ++s) {
    auto it = index.find(subset[s]);
    if (it == index.end())
      throw_numeric("distance_matrix_baire: unknown id '" + subset[s] + "'");
    vals[s] = e.values[it->second];
  }

  SymMatrix m(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i + 1; j < subset.size(); ++j)
      m.ref(i, j) = baire_distance(vals[i], vals[j], base, precision);
  return m;
}

}  // namespace baire
