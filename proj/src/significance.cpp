#include "assocmine/significance.hpp"

#include <algorithm>
#include <cmath>

namespace assocmine {

double gamma_ln(double x) {
  static const double cof[6] = {76.18009172947146,     -86.50532032941677,
                                24.01409824083091,     -1.231739572450155,
                                0.1208650973866179e-2, -0.5395239384953e-5};
  double y = x;
  double tmp = x + 5.5;
  tmp -= (x + 0.5) * std::log(tmp);
  double ser = 1.000000000190015;
  for (int j = 0; j < 6; ++j) ser += cof[j] / ++y;
  return -tmp + std::log(2.5066282746310005 * ser / x);
}

double log_choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) throw std::invalid_argument("log_choose: k out of range");
  std::int64_t kk = std::min(k, n - k);
  if (kk == 0) return 0.0;
  // Exact log sum for short coefficients, Lanczos beyond. The threshold keeps
  // the small-n regime at full precision while large arguments stay O(1).
  if (kk <= 30) {
    double sum = 0.0;
    for (std::int64_t i = 0; i < kk; ++i) {
      sum += std::log(static_cast<double>(n - i)) -
             std::log(static_cast<double>(i + 1));
    }
    return sum;
  }
  return gamma_ln(static_cast<double>(n) + 1.0) -
         gamma_ln(static_cast<double>(kk) + 1.0) -
         gamma_ln(static_cast<double>(n - kk) + 1.0);
}

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("probability must be in [0,1]");
}

}  // namespace

double binom_pmf(std::int64_t k, std::int64_t n, double p) {
  check_probability(p);
  if (n < 0) throw std::invalid_argument("binom_pmf: n < 0");
  if (k < 0 || k > n) return 0.0;
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const double logp = log_choose(n, k) + static_cast<double>(k) * std::log(p) +
                      static_cast<double>(n - k) * std::log1p(-p);
  return std::exp(logp);
}

double binom_tail(std::int64_t k, std::int64_t n, double p) {
  check_probability(p);
  if (n < 0) throw std::invalid_argument("binom_tail: n < 0");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  const double logp = std::log(p);
  const double logq = std::log1p(-p);
  const double mean = static_cast<double>(n) * p;

  if (static_cast<double>(k) <= mean) {
    // Short lower tail: P[M >= k] = 1 - sum_{j<k} pmf(j). The result is
    // bounded away from 0 here, so the subtraction keeps relative precision.
    // Terms grow toward the mean, so the sum runs downward from pmf(k-1),
    // carried in linear space relative to that dominant term (the ratios
    // only shrink it), and stops once the remainder is below resolution.
    const double log_top = log_choose(n, k - 1) +
                           static_cast<double>(k - 1) * logp +
                           static_cast<double>(n - k + 1) * logq;
    double term = 1.0;
    double sum = 1.0;
    for (std::int64_t j = k - 1; j > 0; --j) {
      term *= static_cast<double>(j) * (1.0 - p) /
              (static_cast<double>(n - j + 1) * p);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    const double logsum = log_top + std::log(sum);
    if (logsum >= 0.0) return 0.0;
    return std::min(1.0, std::max(0.0, -std::expm1(logsum)));
  }

  // Short upper tail: sum pmf(j) upward from the dominant term pmf(k); the
  // terms decay geometrically past the mean.
  const double log_top = log_choose(n, k) + static_cast<double>(k) * logp +
                         static_cast<double>(n - k) * logq;
  double term = 1.0;
  double sum = 1.0;
  for (std::int64_t j = k; j < n; ++j) {
    term *= static_cast<double>(n - j) * p /
            (static_cast<double>(j + 1) * (1.0 - p));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return std::min(1.0, std::exp(log_top + std::log(sum)));
}

double expected_edges(std::int64_t size1, std::int64_t size2, double delta) {
  if (size1 < 0 || size2 < 0)
    throw std::invalid_argument("expected_edges: negative group size");
  return static_cast<double>(size1) * static_cast<double>(size2) * delta;
}

double association_pvalue(std::int64_t size1, std::int64_t size2,
                          std::int64_t strength, double delta) {
  if (size1 < 0 || size2 < 0)
    throw std::invalid_argument("association_pvalue: negative cluster size");
  const std::int64_t pairs = size1 * size2;
  if (strength > pairs)
    throw std::invalid_argument("association_pvalue: strength exceeds pair count");
  return binom_tail(strength, pairs, delta);
}

double cluster_significance(std::span<const std::int64_t> ones,
                            std::int64_t size,
                            std::span<const double> marginals) {
  if (ones.size() != marginals.size())
    throw std::invalid_argument("cluster_significance: length mismatch");
  double product = 1.0;
  for (std::size_t i = 0; i < ones.size(); ++i) {
    if (ones[i] < 0 || ones[i] > size)
      throw std::invalid_argument("cluster_significance: ones count out of range");
    product *= binom_tail(ones[i], size, marginals[i]);
    if (product == 0.0) break;
  }
  return 1.0 - product;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::invalid_argument("normal_quantile: argument must be in (0,1)");

  // Acklam's rational approximation, then one Newton step against the exact
  // CDF; that lands within a few ulps.
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  double x;
  if (u < p_low) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - p_low) {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  for (int it = 0; it < 2; ++it) {
    const double err = normal_cdf(x) - u;
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    if (pdf <= 0.0) break;
    x -= err / pdf;
  }
  return x;
}

PruneBound prune_threshold(std::int64_t n, double p, double alpha) {
  if (n < 1) throw std::invalid_argument("prune_threshold: n < 1");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("prune_threshold: p must be in (0,1)");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("prune_threshold: alpha must be in (0,1)");

  constexpr double kBerryEsseenC = 0.4748;
  const double q = 1.0 - p;
  const double sigma = std::sqrt(static_cast<double>(n) * p * q);
  const double correction = kBerryEsseenC * (p * p + q * q) / sigma;
  const double arg = 1.0 - alpha - correction;
  if (arg <= 0.0) return {0.0, true};
  const double threshold =
      normal_quantile(arg) * sigma + static_cast<double>(n) * p;
  return {threshold, false};
}

}  // namespace assocmine
