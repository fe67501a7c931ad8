#ifndef ENTIM_PHOTON_STATISTICS_HPP
#define ENTIM_PHOTON_STATISTICS_HPP

#include "entim/gain.hpp"
#include "entim/rng.hpp"
#include "entim/stats.hpp"

namespace entim {

/// Thermal (Bose-Einstein) photon-number law:
///   p(n) = mean_n^n / (1 + mean_n)^(n+1).
/// Throws std::domain_error for n < 0 or mean_n < 0.
double thermal_pmf(long n, double mean_n);

/// Smallest N such that the tail mass beyond N is below tail_mass;
/// tail(N) = (mean/(1+mean))^(N+1).
long thermal_n_max(double mean_n, double tail_mass = 1e-12);

/// One draw from the thermal law by inverse CDF on the closed-form
/// geometric tail.
long sample_thermal_number(double mean_n, Rng& rng);

/// Twin photon numbers of one (q, -q) mode pair: number entanglement makes
/// both beams carry the same n, drawn from the thermal law.
struct PairNumbers {
  long n_signal = 0;
  long n_idler = 0;
};
PairNumbers sample_pair_numbers(double mean_n, Rng& rng);

/// Consistency report of the single-beam Wigner statistics against the
/// thermal prediction: per-mode W-intensity |alpha|^2 of one beam must be
/// exponential with mean <n> + 1/2. Samples are pooled across modes after
/// normalizing by the per-mode mean, and per-q means are checked against
/// the table profile.
struct ThermalTestReport {
  std::size_t samples = 0;
  GofResult pooled_gof;          // normalized W-intensity vs Exp(1)
  double max_profile_z = 0.0;    // worst per-q mean deviation, in stderr units
  bool profile_consistent = false;
};

ThermalTestReport reduced_beam_is_thermal(const GainTable& table, const GridPtr& grid,
                                          Rng& rng, std::size_t n_samples);

} // namespace entim

#endif
