#include "entim/gain.hpp"

#include "entim/errors.hpp"

#include <cmath>
#include <string>

namespace entim {

void CrystalParams::validate() const {
  if (!(l_c > 0.0)) throw ConfigError("l_c must be positive");
  if (sigma < 0.0) throw ConfigError("sigma must be non-negative");
  if (!(w_p > 0.0)) throw ConfigError("w_p must be positive");
  if (!(tau_p > 0.0)) throw ConfigError("tau_p must be positive");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
}

double mismatch(double q, double omega, const CrystalParams& p, Beam beam) {
  const double sgn = beam == Beam::signal ? 1.0 : -1.0;
  return p.delta0 + sgn * (p.c_walkoff_q * q + p.c_gvm_t * omega) +
         p.c_diffr_q * q * q + p.c_gvd_t * omega * omega;
}

GainCoeffs planewave_gain(double delta_lc, double sigma_lc) {
  const double h = 0.5 * delta_lc;
  const double g2 = sigma_lc * sigma_lc - h * h; // (Gamma l_c)^2
  double ch;   // cosh(Gamma l_c), or cos for imaginary Gamma
  double shc;  // sinh(Gamma l_c)/(Gamma l_c), or sinc
  if (std::abs(g2) < 1e-8) {
    ch = 1.0 + g2 / 2.0 + g2 * g2 / 24.0;
    shc = 1.0 + g2 / 6.0 + g2 * g2 / 120.0;
  } else if (g2 > 0.0) {
    const double r = std::sqrt(g2);
    ch = std::cosh(r);
    shc = std::sinh(r) / r;
  } else {
    const double r = std::sqrt(-g2);
    ch = std::cos(r);
    shc = std::sin(r) / r;
  }
  // Mid-crystal phase reference: e^{i delta/4} on both coefficients puts
  // the pair amplitude U_S(q) V_I(-q) at the phase of a photon pair born
  // at the crystal center (perturbative limit: real sinc(delta/2)), so
  // near-field correlations carry no spurious depth chirp.
  const std::complex<double> phase{std::cos(0.5 * h), std::sin(0.5 * h)};
  GainCoeffs out;
  out.u = phase * std::complex<double>{ch, -h * shc};
  out.v = phase * (sigma_lc * shc);
  return out;
}

GainTable gain_functions(const CrystalParams& p, const GridPtr& grid) {
  p.validate();
  GainTable t;
  t.grid = grid;
  const std::size_t n = grid->n_modes();
  t.u_signal.resize(n);
  t.v_signal.resize(n);
  t.u_idler.resize(n);
  t.v_idler.resize(n);
  t.mean_n.resize(n);
  const double slc = p.sigma_lc();
  const int nyq_x = grid->n_x() / 2;
  const int nyq_t = grid->n_t() / 2;
  for (int it = 0; it < grid->n_t(); ++it) {
    // Odd terms are zeroed at the self-mirrored Nyquist index; see GainTable.
    const double omega_odd = (grid->n_t() > 1 && it == nyq_t) ? 0.0 : grid->omega(it);
    const double omega = grid->omega(it);
    for (int ix = 0; ix < grid->n_x(); ++ix) {
      const double q_odd = ix == nyq_x ? 0.0 : grid->q(ix);
      const double q = grid->q(ix);
      const double even = p.delta0 + p.c_diffr_q * q * q + p.c_gvd_t * omega * omega;
      const double odd = p.c_walkoff_q * q_odd + p.c_gvm_t * omega_odd;
      const GainCoeffs gs = planewave_gain(even + odd, slc);
      const GainCoeffs gi = planewave_gain(even - odd, slc);
      const std::size_t k = t.idx(it, ix);
      t.u_signal[k] = gs.u;
      t.v_signal[k] = gs.v;
      t.u_idler[k] = gi.u;
      t.v_idler[k] = gi.v;
      t.mean_n[k] = std::norm(gi.v);
      const bool finite = std::isfinite(gs.u.real()) && std::isfinite(gs.u.imag()) &&
                          std::isfinite(gs.v.real()) && std::isfinite(gs.v.imag()) &&
                          std::isfinite(gi.u.real()) && std::isfinite(gi.u.imag()) &&
                          std::isfinite(gi.v.real()) && std::isfinite(gi.v.imag());
      if (!finite)
        throw NumericError("non-finite gain at lattice point iq=" + std::to_string(ix) +
                           ", iomega=" + std::to_string(it));
    }
  }
  return t;
}

namespace {

// Half-width at half-maximum along one lattice direction, walking outward
// from the peak with linear interpolation at the crossing.
double hwhm_profile(const std::vector<double>& profile,
                    const std::vector<double>& coord) {
  const int n = static_cast<int>(profile.size());
  int peak = 0;
  for (int i = 1; i < n; ++i)
    if (profile[i] > profile[peak]) peak = i;
  const double target = 0.5 * profile[peak];
  if (!(profile[peak] > 0.0)) throw StatsError("undefined bandwidth: zero-gain table");

  double widths[2] = {0.0, 0.0};
  for (int dir = 0; dir < 2; ++dir) {
    const int step = dir == 0 ? 1 : -1;
    int i = peak;
    bool found = false;
    while (i + step >= 0 && i + step < n) {
      const int j = i + step;
      if (profile[j] <= target) {
        const double f = (profile[i] - target) / (profile[i] - profile[j]);
        widths[dir] = std::abs(coord[i] + f * (coord[j] - coord[i]) - coord[peak]);
        found = true;
        break;
      }
      i = j;
    }
    if (!found) throw StatsError("undefined bandwidth: half-maximum beyond the lattice");
  }
  return 0.5 * (widths[0] + widths[1]);
}

} // namespace

EmissionBandwidths bandwidths(const GainTable& table) {
  const Grid& g = *table.grid;
  const int nx = g.n_x();
  const int nt = g.n_t();

  // Shifted (monotonic-coordinate) profile along q at Omega = 0.
  std::vector<double> prof_q(nx), coord_q(nx);
  for (int s = 0; s < nx; ++s) {
    const int ix = (s + nx / 2) % nx;
    prof_q[s] = table.mean_n[table.idx(0, ix)];
    coord_q[s] = g.q(ix);
  }
  EmissionBandwidths bw;
  bw.q0 = hwhm_profile(prof_q, coord_q);
  bw.l_coh = 1.0 / bw.q0;

  if (nt >= 4) {
    int peak_ix = 0;
    for (int ix = 1; ix < nx; ++ix)
      if (table.mean_n[table.idx(0, ix)] > table.mean_n[table.idx(0, peak_ix)])
        peak_ix = ix;
    std::vector<double> prof_t(nt), coord_t(nt);
    for (int s = 0; s < nt; ++s) {
      const int it = (s + nt / 2) % nt;
      prof_t[s] = table.mean_n[table.idx(it, peak_ix)];
      coord_t[s] = g.omega(it);
    }
    bw.omega0 = hwhm_profile(prof_t, coord_t);
    bw.tau_coh = 1.0 / bw.omega0;
    bw.has_time = true;
  }
  return bw;
}

double resolvable_pixels(const CrystalParams& p, const EmissionBandwidths& bw) {
  const double ratio = p.w_p / bw.l_coh;
  return ratio * ratio;
}

namespace {

double mean_photons_at(double delta_lc, double sigma_lc) {
  return std::norm(planewave_gain(delta_lc, sigma_lc).v);
}

// First |V|^2 = |V(0)|^2 / 2 crossing in dimensionless mismatch.
double solve_half_max_delta(double sigma_lc) {
  const double target = 0.5 * mean_photons_at(0.0, sigma_lc);
  double hi = 0.5;
  while (mean_photons_at(hi, sigma_lc) > target) {
    hi *= 2.0;
    if (hi > 1e6) throw StatsError("half-maximum mismatch not found");
  }
  double lo = hi * 0.5 > 0.25 ? hi * 0.5 : 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mean_photons_at(mid, sigma_lc) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace

MismatchCalibration calibrate_mismatch(double sigma_lc, double l_coh_target,
                                       double tau_coh_target) {
  if (!(sigma_lc > 0.0)) throw ConfigError("calibration requires sigma*l_c > 0");
  if (!(l_coh_target > 0.0) || !(tau_coh_target > 0.0))
    throw ConfigError("calibration targets must be positive");
  MismatchCalibration cal;
  cal.half_max_delta = solve_half_max_delta(sigma_lc);
  // delta0 = 0 and a pure quadratic term put the half maximum exactly at
  // q0 = 1/l_coh: c q0^2 = half_max_delta.
  cal.c_diffr_q = cal.half_max_delta * l_coh_target * l_coh_target;
  cal.c_gvd_t = cal.half_max_delta * tau_coh_target * tau_coh_target;
  return cal;
}

CrystalParams default_crystal() {
  CrystalParams p;
  p.l_c = 4e-3;
  p.sigma = 1.0 / p.l_c;
  p.lambda = 702e-9;
  p.w_p = 332e-6;
  p.tau_p = 1.5e-12;
  const MismatchCalibration cal = calibrate_mismatch(1.0, 16.6e-6, 0.87e-12);
  p.c_diffr_q = cal.c_diffr_q;
  p.c_gvd_t = cal.c_gvd_t;
  return p;
}

} // namespace entim
