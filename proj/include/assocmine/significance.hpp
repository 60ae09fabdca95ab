#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

namespace assocmine {

/// Significance / support parameters shared across the mining pipeline.
/// alpha: significance level for p-value tests.
/// size_support: minimum cluster-size fraction of |V| for a cluster to keep
///   splitting and for its associations to be reported.
/// freq_support: minimum frequency fraction of |E| for the frequent baseline.
struct SignificanceParams {
  double alpha = 0.01;
  double size_support = 0.01;
  double freq_support = 0.001;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("alpha must be in (0,1)");
    if (!(size_support > 0.0 && size_support < 1.0))
      throw std::invalid_argument("size_support must be in (0,1)");
    if (!(freq_support > 0.0 && freq_support < 1.0))
      throw std::invalid_argument("freq_support must be in (0,1)");
  }
};

/// ln Gamma(x) for x > 0 (Lanczos series). Thread safe, ~1e-10 accuracy.
double gamma_ln(double x);

/// ln C(n, k). Exact-sum path for small k, gamma_ln otherwise.
double log_choose(std::int64_t n, std::int64_t k);

/// Binomial(n, p) probability mass at k.
double binom_pmf(std::int64_t k, std::int64_t n, double p);

/// Upper tail P[M >= k] for M ~ Binomial(n, p).
///
/// Sums whichever tail is shorter with an incremental term recurrence carried
/// in log space, so the result keeps full relative precision both near 1 and
/// deep in the upper tail, and survives n in the 1e7 range without overflow
/// or underflow.
double binom_tail(std::int64_t k, std::int64_t n, double p);

/// Expected number of edges between two node groups under edge density delta.
double expected_edges(std::int64_t size1, std::int64_t size2, double delta);

/// p-value of an association of the given strength between clusters of the
/// given sizes: binom_tail(strength, size1*size2, delta).
double association_pvalue(std::int64_t size1, std::int64_t size2,
                          std::int64_t strength, double delta);

/// Cluster significance: 1 - prod_i P[X_i >= ones[i]] with
/// X_i ~ Binomial(size, marginals[i]). Larger is more significant.
double cluster_significance(std::span<const std::int64_t> ones,
                            std::int64_t size,
                            std::span<const double> marginals);

/// Strength threshold below which an association between clusters with
/// n = size1*size2 potential edges can never reach significance level alpha.
/// Normal approximation with a Berry-Esseen error correction (C = 0.4748).
/// When the corrected quantile argument leaves (0,1) the bound is vacuous:
/// threshold 0, nothing can be discarded.
struct PruneBound {
  double threshold = 0.0;
  bool vacuous = false;
};
PruneBound prune_threshold(std::int64_t n, double p, double alpha);

/// Strict comparison: an association is significant iff pvalue < alpha.
inline bool is_significant(double pvalue, double alpha) { return pvalue < alpha; }

/// Standard normal CDF and its inverse (|error| well below 1e-8).
double normal_cdf(double x);
double normal_quantile(double u);

}  // namespace assocmine
