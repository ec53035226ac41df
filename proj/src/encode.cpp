#include "baire/encode.hpp"

#include <cmath>

#include "baire/error.hpp"
#include "baire/format.hpp"
#include "baire/parallel.hpp"
#include "baire/stats.hpp"

namespace baire {

namespace {

constexpr double kBelowOne = 0x1.fffffffffffffp-1;
constexpr double kSqrt2 = 1.41421356237309504880168872420969808;

// Rational coefficients from Cody's CALERF.
constexpr double kA[5] = {3.16112374387056560e00, 1.13864154151050156e02,
                          3.77485237685302021e02, 3.20937758913846947e03,
                          1.85777706184603153e-1};
constexpr double kB[4] = {2.36012909523441209e01, 2.44024637934444173e02,
                          1.28261652607737228e03, 2.84423683343917062e03};
constexpr double kC[9] = {5.64188496988670089e-1, 8.88314979438837594e00,
                          6.61191906371416295e01, 2.98635138197400131e02,
                          8.81952221241769090e02, 1.71204761263407058e03,
                          2.05107837782607147e03, 1.23033935479799725e03,
                          2.15311535474403846e-8};
constexpr double kD[8] = {1.57449261107098347e01, 1.17693950891312499e02,
                          5.37181101862009858e02, 1.62138957456669019e03,
                          3.29079923573345963e03, 4.36261909014324716e03,
                          3.43936767414372164e03, 1.23033935480374942e03};
constexpr double kP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                          1.25781726111229246e-1, 1.60837851487422766e-2,
                          6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kQ[5] = {2.56852019228982242e00, 1.87295284992346047e00,
                          5.27905102951428412e-1, 6.05183413124413191e-2,
                          2.33520497626869185e-3};
constexpr double kInvSqrtPi = 5.6418958354775628695e-1;
constexpr double kErfcUnderflow = 26.543;  // erfc underflows to 0 beyond this

// exp(-y^2) evaluated as exp(-ysq^2) * exp(-del) with ysq = y truncated to
// 1/16ths; the split keeps the exponent argument small enough that the
// product stays accurate in the far tail.
double exp_minus_y2(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

}  // namespace

double erfc_cody(double x) {
  const double y = std::fabs(x);
  double result;
  if (y <= 0.46875) {
    const double z = y * y;
    double xnum = kA[4] * z;
    double xden = z;
    for (int i = 0; i < 3; ++i) {
      xnum = (xnum + kA[i]) * z;
      xden = (xden + kB[i]) * z;
    }
    const double erf = x * (xnum + kA[3]) / (xden + kB[3]);
    return 1.0 - erf;
  }
  if (y <= 4.0) {
    double xnum = kC[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + kC[i]) * y;
      xden = (xden + kD[i]) * y;
    }
    result = (xnum + kC[7]) / (xden + kD[7]);
    result *= exp_minus_y2(y);
  } else if (y < kErfcUnderflow) {
    const double z = 1.0 / (y * y);
    double xnum = kP[5] * z;
    double xden = z;
    for (int i = 0; i < 4; ++i) {
      xnum = (xnum + kP[i]) * z;
      xden = (xden + kQ[i]) * z;
    }
    result = z * (xnum + kP[4]) / (xden + kQ[4]);
    result = (kInvSqrtPi - result) / y;
    result *= exp_minus_y2(y);
  } else {
    result = 0.0;
  }
  return x < 0.0 ? 2.0 - result : result;
}

std::vector<double> log_transform(const Seriation& s) {
  std::vector<double> out(s.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double v = s.values[i];
    if (!(v > 0.0)) {
      const std::string id =
          i < s.ids.size() ? s.ids[i] : ("index " + std::to_string(i));
      throw_numeric("log_transform: nonpositive value " + format_double(v) +
                    " at '" + id + "'");
    }
    out[i] = std::log(v);
  }
  return out;
}

StandardizeResult standardize(const std::vector<double>& v) {
  MeanSd ms = mean_sd(v);  // throws when size < 2
  if (ms.sd == 0.0)
    throw_numeric("standardize: zero variance (constant input)");
  StandardizeResult r;
  r.mean = ms.mean;
  r.sd = ms.sd;
  r.z.resize(v.size());
  parallel_for(0, v.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) r.z[i] = (v[i] - r.mean) / r.sd;
  });
  return r;
}

std::vector<double> uniformize(const std::vector<double>& z) {
  std::vector<double> u(z.size());
  parallel_for(0, z.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      double v = 0.5 * erfc_cody(-z[i] / kSqrt2);
      if (v >= 1.0) v = kBelowOne;
      if (v < 0.0) v = 0.0;
      u[i] = v;
    }
  });
  return u;
}

namespace {

EncodedSeriation encode_impl(const Seriation& s,
                             const TransformProvenance* fixed) {
  std::vector<double> logged = log_transform(s);
  EncodedSeriation e;
  e.ids = s.ids;
  if (fixed) {
    if (!(fixed->sd > 0.0))
      throw_numeric("encode: recorded provenance has nonpositive sd");
    e.provenance = *fixed;
    std::vector<double> z(logged.size());
    parallel_for(0, logged.size(), [&](std::size_t b, std::size_t end) {
      for (std::size_t i = b; i < end; ++i)
        z[i] = (logged[i] - fixed->mean) / fixed->sd;
    });
    e.values = uniformize(z);
  } else {
    StandardizeResult st = standardize(logged);
    e.provenance.mean = st.mean;
    e.provenance.sd = st.sd;
    e.values = uniformize(st.z);
  }
  return e;
}

}  // namespace

EncodedSeriation encode_pipeline(const Seriation& s) {
  return encode_impl(s, nullptr);
}

EncodedSeriation encode_with_provenance(const Seriation& s,
                                        const TransformProvenance& prov) {
  return encode_impl(s, &prov);
}

Histogram histogram_report(const std::vector<double>& v, std::size_t bins,
                           std::optional<std::pair<double, double>> range) {
  if (v.empty()) throw_numeric("histogram_report: empty vector");
  if (bins < 1) throw_numeric("histogram_report: bins must be >= 1");
  Histogram h;
  if (range) {
    h.lo = range->first;
    h.hi = range->second;
    if (!(h.hi > h.lo))
      throw_numeric("histogram_report: range must satisfy lo < hi");
  } else {
    h.lo = v[0];
    h.hi = v[0];
    for (double x : v) {
      if (x < h.lo) h.lo = x;
      if (x > h.hi) h.hi = x;
    }
  }
  h.counts.assign(bins, 0);
  const double width = h.hi - h.lo;
  for (double x : v) {
    std::size_t idx = 0;
    if (width > 0.0) {
      const double t = (x - h.lo) / width * static_cast<double>(bins);
      if (t <= 0.0)
        idx = 0;
      else if (t >= static_cast<double>(bins))
        idx = bins - 1;
      else
        idx = static_cast<std::size_t>(t);
    }
    ++h.counts[idx];
  }
  return h;
}

}  // namespace baire
