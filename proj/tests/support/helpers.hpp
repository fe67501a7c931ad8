#ifndef ENTIM_TESTS_HELPERS_HPP
#define ENTIM_TESTS_HELPERS_HPP

#include "entim/config.hpp"
#include "entim/gain.hpp"
#include "entim/grid.hpp"

#include <cmath>
#include <vector>

namespace helpers {

inline double rel_rms(const std::vector<std::complex<double>>& a,
                      const std::vector<std::complex<double>>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / (den > 0.0 ? den : 1.0));
}

inline double rel_rms_real(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / (den > 0.0 ? den : 1.0));
}

inline double max_value(const std::vector<double>& v) {
  double m = v.empty() ? 0.0 : v[0];
  for (double x : v) m = x > m ? x : m;
  return m;
}

/// Flat-mismatch crystal (all modes identical): handy for single-mode
/// statistics checks.
inline entim::CrystalParams flat_crystal(double sigma_lc) {
  entim::CrystalParams p;
  p.l_c = 4e-3;
  p.sigma = sigma_lc / p.l_c;
  p.w_p = 332e-6;
  p.tau_p = 1.5e-12;
  return p;
}

/// The standard experiment parameter set used across the tests: 4 mm
/// crystal at sigma l_c = 1, coherence scales 16.6 um / 0.87 ps, double
/// slit a = 17 um, d = 104 um, f = 5 cm.
inline entim::RunConfig base_config() {
  entim::RunConfig c;
  c.nx = 1024;
  c.dx = 4e-6;
  c.nt = 64;
  c.dt = 0.05e-12;
  c.crystal = entim::default_crystal();
  c.engine.engine = entim::EngineConfig::Kind::planewave;
  c.engine.seed = 20260808;
  c.engine.pulses = 1000;
  c.scheme = entim::Scheme::a;
  c.z_config = entim::ArmGeometry::focal;
  c.focal_length = 5e-2;
  c.slit_width = 17e-6;
  c.slit_distance = 104e-6;
  c.fixed_point = 0.0;
  c.model = entim::SourceModel::pure;
  c.tau_d = 1.5e-12;
  c.workers = 0;
  return c;
}

/// Small quasi-monochromatic variant for fast Monte-Carlo tests.
inline entim::RunConfig small_config() {
  entim::RunConfig c = base_config();
  c.nx = 256;
  c.dx = 8e-6;
  c.nt = 1;
  c.dt = 1e-12;
  c.tau_d = 1e-12;
  c.slit_width = 24e-6;
  c.slit_distance = 96e-6;
  return c;
}

} // namespace helpers

#endif
