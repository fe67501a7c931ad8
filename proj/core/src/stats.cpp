#include "entim/stats.hpp"

#include "entim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entim {

namespace {

// Series expansion of P(a,x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a,x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw StatsError("gamma_q requires a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_sf(double x, int dof) {
  if (dof < 1) throw StatsError("chi2_sf requires dof >= 1");
  return gamma_q(0.5 * dof, 0.5 * x);
}

SampleStats summarize(const std::vector<double>& samples) {
  SampleStats s;
  s.count = samples.size();
  if (s.count == 0) return s;
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count < 2) return s;
  double ss = 0.0;
  for (double v : samples) ss += (v - s.mean) * (v - s.mean);
  s.variance = ss / static_cast<double>(s.count - 1);
  s.stderr_mean = std::sqrt(s.variance / static_cast<double>(s.count));
  return s;
}

CovarianceEstimate covariance_with_stderr(const std::vector<double>& a,
                                          const std::vector<double>& b) {
  if (a.size() != b.size()) throw StatsError("covariance inputs differ in length");
  const std::size_t n = a.size();
  if (n < 2) throw StatsError("covariance needs at least 2 samples");
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double c = 0.0, m22 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    c += da * db;
    m22 += da * da * db * db;
  }
  CovarianceEstimate out;
  out.covariance = c / static_cast<double>(n - 1);
  m22 /= static_cast<double>(n);
  const double var_cov = std::max(0.0, m22 - out.covariance * out.covariance);
  out.stderr_cov = std::sqrt(var_cov / static_cast<double>(n));
  return out;
}

GofResult chi2_from_counts(const std::vector<double>& observed,
                           const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw StatsError("chi2_from_counts needs matching cell vectors of size >= 2");
  GofResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw StatsError("expected cell count must be positive");
    const double d = observed[i] - expected[i];
    r.statistic += d * d / expected[i];
  }
  r.dof = static_cast<int>(observed.size()) - 1;
  r.p_value = chi2_sf(r.statistic, r.dof);
  return r;
}

GofResult chi2_gof_exponential(const std::vector<double>& samples, double mean,
                               int bins) {
  if (!(mean > 0.0)) throw StatsError("exponential GOF requires mean > 0");
  if (bins < 2) throw StatsError("exponential GOF requires >= 2 bins");
  const std::size_t n = samples.size();
  if (n < static_cast<std::size_t>(bins) * 10)
    throw StatsError("under-sampled exponential GOF: need >= 10 samples per bin");
  // Equal-probability edges: u_i = -mean ln(1 - i/bins).
  std::vector<double> edges(bins - 1);
  for (int i = 1; i < bins; ++i)
    edges[i - 1] = -mean * std::log(1.0 - static_cast<double>(i) / bins);
  std::vector<double> observed(bins, 0.0);
  for (double v : samples) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    observed[static_cast<std::size_t>(it - edges.begin())] += 1.0;
  }
  std::vector<double> expected(bins, static_cast<double>(n) / bins);
  return chi2_from_counts(observed, expected);
}

GofResult chi2_gof_pmf(const std::vector<long>& samples,
                       const std::function<double(long)>& pmf) {
  const std::size_t n = samples.size();
  if (n < 100) throw StatsError("under-sampled pmf GOF");
  long max_value = 0;
  for (long v : samples) {
    if (v < 0) throw StatsError("pmf GOF requires non-negative samples");
    max_value = std::max(max_value, v);
  }
  // Cells 0..k then one merged tail; stop extending once expected < 5.
  std::vector<double> observed, expected;
  std::vector<double> raw_counts(static_cast<std::size_t>(max_value) + 1, 0.0);
  for (long v : samples) raw_counts[static_cast<std::size_t>(v)] += 1.0;
  double cdf = 0.0;
  long k = 0;
  for (; k <= max_value; ++k) {
    const double e = static_cast<double>(n) * pmf(k);
    if (e < 5.0) break;
    observed.push_back(raw_counts[static_cast<std::size_t>(k)]);
    expected.push_back(e);
    cdf += pmf(k);
  }
  double tail_obs = 0.0;
  for (long v = k; v <= max_value; ++v) tail_obs += raw_counts[static_cast<std::size_t>(v)];
  const double tail_exp = static_cast<double>(n) * std::max(1e-12, 1.0 - cdf);
  if (expected.size() < 2) throw StatsError("pmf GOF: distribution too concentrated");
  observed.push_back(tail_obs);
  expected.push_back(tail_exp);
  return chi2_from_counts(observed, expected);
}

} // namespace entim
