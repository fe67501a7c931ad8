#ifndef ENTIM_GAIN_HPP
#define ENTIM_GAIN_HPP

#include "entim/grid.hpp"

#include <complex>
#include <vector>

namespace entim {

enum class Beam { signal, idler };

/// Pump/crystal parameters of the parametric amplifier. The mismatch
/// polynomial coefficients absorb the crystal length: mismatch() returns
/// the dimensionless Delta * l_c.
struct CrystalParams {
  double sigma = 0.0;       // gain rate (1/m), proportional to pump amplitude
  double l_c = 0.0;         // crystal length (m)
  double delta0 = 0.0;      // collinear mismatch (dimensionless)
  double c_walkoff_q = 0.0; // m,   odd in q, opposite sign for the idler
  double c_diffr_q = 0.0;   // m^2, even in q
  double c_gvm_t = 0.0;     // s,   odd in Omega, opposite sign for the idler
  double c_gvd_t = 0.0;     // s^2, even in Omega
  double lambda = 702e-9;   // down-converted carrier wavelength (m)
  double w_p = 0.0;         // pump waist (m)
  double tau_p = 0.0;       // pump duration (s)

  double sigma_lc() const { return sigma * l_c; }
  void validate() const; // throws ConfigError
};

/// Dimensionless phase mismatch Delta(q, Omega) * l_c. Signal and idler
/// share the even coefficients; the odd (walk-off) terms flip sign for
/// the idler, so that Delta_I(-q, -Omega) = Delta_S(q, Omega) and each
/// (q, Omega)/(-q, -Omega) pair sees a single mismatch.
double mismatch(double q, double omega, const CrystalParams& p,
                Beam beam = Beam::signal);

/// Plane-wave input/output coefficients for one mode at dimensionless
/// mismatch delta_lc and gain sigma_lc:
///   Gamma l_c = sqrt((sigma l_c)^2 - (delta_lc/2)^2)
///   U = e^{i delta_lc/4} [cosh(Gamma l_c) - i (delta_lc/2) sinhc(Gamma l_c)]
///   V = e^{i delta_lc/4} (sigma l_c) sinhc(Gamma l_c)
/// continued with cos/sinc for imaginary Gamma and by series for
/// |Gamma l_c| < 1e-4, so the expression is smooth through Gamma = 0.
/// Satisfies |U|^2 - |V|^2 = 1 identically. Input and output phases are
/// referenced symmetrically to the crystal mid-plane: the pair amplitude
/// U_S(q) V_I(-q) then reduces to the real sinc(delta/2) biphoton
/// amplitude at low gain, with no depth chirp across the emission band
/// (an exit-face reference would defocus the near-field correlation by
/// the crystal half-length and wash out the 2f image).
struct GainCoeffs {
  std::complex<double> u;
  std::complex<double> v;
};
GainCoeffs planewave_gain(double delta_lc, double sigma_lc);

/// U, V sampled over a grid's (q, Omega) lattice for both beams, plus the
/// per-mode mean photon number |V|^2. The odd mismatch terms are zeroed at
/// the Nyquist indices (which are their own -q mirrors) so the pair
/// condition U_S(k) V_I(-k) = V_S(k) U_I(-k) holds on the whole lattice.
struct GainTable {
  GridPtr grid;
  std::vector<std::complex<double>> u_signal, v_signal, u_idler, v_idler;
  std::vector<double> mean_n; // |V_I|^2

  std::size_t idx(int it, int ix) const {
    return static_cast<std::size_t>(it) * grid->n_x() + ix;
  }

  /// Pair-emission amplitude U_S(q,Omega) V_I(-q,-Omega); the quantity
  /// every correlation oracle is built from.
  std::complex<double> pair_amplitude(int it, int ix) const {
    const int mt = Grid::mirror_index(it, grid->n_t());
    const int mx = Grid::mirror_index(ix, grid->n_x());
    return u_signal[idx(it, ix)] * v_idler[idx(mt, mx)];
  }
};

GainTable gain_functions(const CrystalParams& p, const GridPtr& grid);

/// Emission bandwidths measured on the table: half-width at half-maximum
/// of mean_n along q at Omega = 0 and along Omega at the q peak, with
/// linear interpolation between lattice points. tau_coh fields are only
/// meaningful when the grid has a resolvable time axis (n_t >= 4).
struct EmissionBandwidths {
  double q0 = 0.0;      // rad/m
  double omega0 = 0.0;  // rad/s
  double l_coh = 0.0;   // 1/q0
  double tau_coh = 0.0; // 1/omega0
  bool has_time = false;
};

EmissionBandwidths bandwidths(const GainTable& table);

/// (w_p / l_coh)^2: number of resolvable pixels of a correlation-imaging
/// scheme, per transverse dimension squared.
double resolvable_pixels(const CrystalParams& p, const EmissionBandwidths& bw);

/// Solves for the even mismatch coefficients that put the half-maximum of
/// |V|^2 at q0 = 1/l_coh_target and Omega0 = 1/tau_coh_target for the
/// given sigma*l_c (delta0 = 0 assumed).
struct MismatchCalibration {
  double c_diffr_q = 0.0;
  double c_gvd_t = 0.0;
  double half_max_delta = 0.0; // dimensionless mismatch at half maximum
};
MismatchCalibration calibrate_mismatch(double sigma_lc, double l_coh_target,
                                       double tau_coh_target);

/// 4 mm crystal at sigma*l_c = 1 with w_p = 332 um, tau_p = 1.5 ps and
/// mismatch curvatures calibrated to l_coh = 16.6 um, tau_coh = 0.87 ps.
CrystalParams default_crystal();

} // namespace entim

#endif
