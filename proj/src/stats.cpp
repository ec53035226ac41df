#include "baire/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "baire/error.hpp"

namespace baire {

double median_by_selection(std::vector<double> v) {
  if (v.empty()) throw_numeric("median of empty vector");
  const std::size_t count = v.size();
  const std::size_t mid = count / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double upper = v[mid];
  if (count % 2 == 1) return upper;
  // Even count: the lower central order statistic is the maximum of the
  // left partition nth_element already produced.
  double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

SummaryStats summary_stats(const DataMatrix& d) {
  if (d.n == 0 || d.m == 0) throw_numeric("summary_stats of empty matrix");
  SummaryStats s;
  s.max = d.values[0];
  s.min = d.values[0];
  double sum = 0.0;
  for (double v : d.values) {
    if (v > s.max) s.max = v;
    if (v < s.min) s.min = v;
    sum += v;
  }
  s.mean = sum / static_cast<double>(d.values.size());
  s.median = median_by_selection(d.values);
  return s;
}

MeanSd mean_sd(const std::vector<double>& v) {
  if (v.size() < 2) throw_numeric("mean_sd needs at least 2 values");
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(v.size() - 1);
  return {mean, std::sqrt(var)};
}

NormalityReport normality_diagnostic(const std::vector<double>& v,
                                     double alpha) {
  const double n = static_cast<double>(v.size());
  if (v.size() < 8)
    throw_numeric("normality diagnostic needs at least 8 values, got " +
                  std::to_string(v.size()));

  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : v) {
    const double c = x - mean;
    const double c2 = c * c;
    m2 += c2;
    m3 += c2 * c;
    m4 += c2 * c2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 <= 0.0)
    throw_numeric("normality diagnostic: degenerate variance (constant input)");

  const double b1 = m3 / std::pow(m2, 1.5);  // skewness
  const double b2 = m4 / (m2 * m2);          // kurtosis (not excess)

  // Skewness transform (D'Agostino).
  double y = b1 * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
  const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                       ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
  const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
  const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
  const double a = std::sqrt(2.0 / (w2 - 1.0));
  if (y == 0.0) y = 1.0;  // removable singularity of the asinh form
  const double z1 =
      delta * std::log(y / a + std::sqrt((y / a) * (y / a) + 1.0));

  // Kurtosis transform (Anscombe-Glynn).
  const double eb2 = 3.0 * (n - 1.0) / (n + 1.0);
  const double vb2 = 24.0 * n * (n - 2.0) * (n - 3.0) /
                     ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
  const double x = (b2 - eb2) / std::sqrt(vb2);
  const double sqrt_b1 =
      6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
      std::sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0)));
  const double big_a =
      6.0 + 8.0 / sqrt_b1 *
                (2.0 / sqrt_b1 + std::sqrt(1.0 + 4.0 / (sqrt_b1 * sqrt_b1)));
  const double denom = 1.0 + x * std::sqrt(2.0 / (big_a - 4.0));
  const double term2 =
      std::copysign(std::cbrt((1.0 - 2.0 / big_a) / std::fabs(denom)), denom);
  const double z2 =
      ((1.0 - 2.0 / (9.0 * big_a)) - term2) / std::sqrt(2.0 / (9.0 * big_a));

  NormalityReport r;
  r.skewness = b1;
  r.excess_kurtosis = b2 - 3.0;
  r.statistic = z1 * z1 + z2 * z2;
  r.p_value = std::exp(-0.5 * r.statistic);  // chi^2_2 survival function
  r.alpha = alpha;
  r.verdict = r.p_value > alpha ? NormalityVerdict::consistent_with_normal
                                : NormalityVerdict::not_normal;
  return r;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw_numeric("pearson: length mismatch " + std::to_string(a.size()) +
                  " vs " + std::to_string(b.size()));
  if (a.size() < 2) throw_numeric("pearson: need at least 2 values");
  const double n = static_cast<double>(a.size());
  double sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
  }
  const double ma = sa / n;
  const double mb = sb / n;
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa == 0.0 || sbb == 0.0)
    throw_numeric("pearson: constant vector has no defined correlation");
  double r = sab / std::sqrt(saa * sbb);
  if (r > 1.0) r = 1.0;
  if (r < -1.0) r = -1.0;
  return r;
}

}  // namespace baire
