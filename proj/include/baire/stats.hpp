#pragma once

#include <cstddef>
#include <vector>

#include "baire/data_matrix.hpp"

namespace baire {

struct SummaryStats {
  double max = 0.0;
  double min = 0.0;
  double mean = 0.0;
  double median = 0.0;
};

// Max/min/mean in one pass; median by selection (linear expected time), with
// the even-count median the midpoint of the two central order statistics.
SummaryStats summary_stats(const DataMatrix& d);

// Selection-based median of an arbitrary vector (consumes its argument).
double median_by_selection(std::vector<double> v);

enum class NormalityVerdict { consistent_with_normal, not_normal };

struct NormalityReport {
  double skewness = 0.0;         // m3 / m2^1.5
  double excess_kurtosis = 0.0;  // m4 / m2^2 - 3
  double statistic = 0.0;        // K^2 omnibus statistic
  double p_value = 0.0;          // chi^2_2 survival of the statistic
  double alpha = 0.05;
  NormalityVerdict verdict = NormalityVerdict::not_normal;
};

// Moment-based omnibus normality test: the skewness Z and kurtosis Z
// transforms combined as K^2 = Z1^2 + Z2^2 against a chi^2 with 2 degrees of
// freedom (whose survival function is exactly exp(-K^2/2)).
NormalityReport normality_diagnostic(const std::vector<double>& v,
                                     double alpha = 0.05);

// Product-moment correlation; demands two nonconstant equal-length vectors.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, divisor n-1
};

MeanSd mean_sd(const std::vector<double>& v);

}  // namespace baire
