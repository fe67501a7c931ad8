#include "entim/photon_statistics.hpp"

#include "entim/errors.hpp"
#include "entim/wigner_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace entim {

double thermal_pmf(long n, double mean_n) {
  if (n < 0) throw std::domain_error("thermal_pmf: n must be >= 0");
  if (mean_n < 0.0) throw std::domain_error("thermal_pmf: mean_n must be >= 0");
  if (mean_n == 0.0) return n == 0 ? 1.0 : 0.0;
  // mean^n / (1+mean)^(n+1), in log form to survive large n.
  const double log_p = static_cast<double>(n) * std::log(mean_n) -
                       static_cast<double>(n + 1) * std::log1p(mean_n);
  return std::exp(log_p);
}

long thermal_n_max(double mean_n, double tail_mass) {
  if (mean_n < 0.0) throw std::domain_error("thermal_n_max: mean_n must be >= 0");
  if (mean_n == 0.0) return 0;
  // tail(N) = r^(N+1) with r = mean/(1+mean).
  const double log_r = std::log(mean_n) - std::log1p(mean_n);
  const long n = static_cast<long>(std::ceil(std::log(tail_mass) / log_r)) - 1;
  return n < 0 ? 0 : n;
}

long sample_thermal_number(double mean_n, Rng& rng) {
  if (mean_n < 0.0) throw std::domain_error("sample_thermal_number: mean_n must be >= 0");
  if (mean_n == 0.0) return 0;
  const double log_r = std::log(mean_n) - std::log1p(mean_n);
  // CDF(n) = 1 - r^(n+1); invert with v = 1 - u uniform in (0, 1].
  const double v = rng.uniform_pos();
  return static_cast<long>(std::floor(std::log(v) / log_r));
}

PairNumbers sample_pair_numbers(double mean_n, Rng& rng) {
  const long n = sample_thermal_number(mean_n, rng);
  return {n, n};
}

ThermalTestReport reduced_beam_is_thermal(const GainTable& table, const GridPtr& grid,
                                          Rng& rng, std::size_t n_samples) {
  if (n_samples < 1000) throw StatsError("reduced_beam_is_thermal: need >= 1000 samples");
  const int nx = grid->n_x();
  const int nt = grid->n_t();

  std::vector<double> normalized;
  normalized.reserve(n_samples * grid->n_modes());
  std::vector<double> q_sum(nx, 0.0), q_sumsq(nx, 0.0);

  for (std::size_t s = 0; s < n_samples; ++s) {
    FieldPair pair = sample_vacuum(grid, rng);
    pair = apply_planewave_gain(pair, table);
    for (int it = 0; it < nt; ++it) {
      for (int ix = 0; ix < nx; ++ix) {
        const double w = std::norm(pair.signal.at(it, ix));
        const double mean = std::norm(table.v_signal[table.idx(it, ix)]) + 0.5;
        normalized.push_back(w / mean);
        q_sum[ix] += w / mean;
        q_sumsq[ix] += (w / mean) * (w / mean);
      }
    }
  }

  ThermalTestReport report;
  report.samples = normalized.size();
  report.pooled_gof = chi2_gof_exponential(normalized, 1.0);

  // Per-q means of the normalized intensity are 1 under the table profile.
  const double per_q = static_cast<double>(n_samples) * nt;
  for (int ix = 0; ix < nx; ++ix) {
    const double mean = q_sum[ix] / per_q;
    const double var = q_sumsq[ix] / per_q - mean * mean;
    const double se = std::sqrt(var / per_q);
    const double z = std::abs(mean - 1.0) / se;
    if (z > report.max_profile_z) report.max_profile_z = z;
  }
  report.profile_consistent = report.max_profile_z < 5.0;
  return report;
}

} // namespace entim
