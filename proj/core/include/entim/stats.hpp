#ifndef ENTIM_STATS_HPP
#define ENTIM_STATS_HPP

#include <functional>
#include <vector>

namespace entim {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double gamma_q(double a, double x);

/// Chi-square survival function P(X >= x) with `dof` degrees of freedom.
double chi2_sf(double x, int dof);

struct SampleStats {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0; // unbiased
  double stderr_mean = 0.0;
};

SampleStats summarize(const std::vector<double>& samples);

/// Sample covariance (n-1 normalization) with a moment-based standard
/// error, se^2 = (m22 - cov^2)/n where m22 is the central (2,2) moment.
struct CovarianceEstimate {
  double covariance = 0.0;
  double stderr_cov = 0.0;
};

CovarianceEstimate covariance_with_stderr(const std::vector<double>& a,
                                          const std::vector<double>& b);

struct GofResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson chi-square from prepared observed/expected cell counts.
/// Cells with tiny expected mass must be merged by the caller.
GofResult chi2_from_counts(const std::vector<double>& observed,
                           const std::vector<double>& expected);

/// GOF of samples against an exponential law with known mean, using
/// equal-probability bins. Throws StatsError when under-sampled.
GofResult chi2_gof_exponential(const std::vector<double>& samples, double mean,
                               int bins = 40);

/// GOF of non-negative integer samples against a pmf with known parameters;
/// the tail is merged so every cell has expected count >= 5.
GofResult chi2_gof_pmf(const std::vector<long>& samples,
                       const std::function<double(long)>& pmf);

} // namespace entim

#endif
