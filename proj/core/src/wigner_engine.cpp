#include "entim/wigner_engine.hpp"

#include "entim/errors.hpp"

#include <cmath>
#include <string>

namespace entim {

void EngineConfig::validate() const {
  if (engine == Kind::finite_pump && steps < 1)
    throw ConfigError("steps must be >= 1 for the finite-pump engine");
  if (pulses < 1) throw ConfigError("pulses must be >= 1");
}

FieldPair sample_vacuum(const GridPtr& grid, Rng& rng) {
  FieldPair pair = make_field_pair(grid, SpaceDomain::wavevector, TimeDomain::frequency);
  for (auto& v : pair.signal.values) v = rng.complex_normal(0.5);
  for (auto& v : pair.idler.values) v = rng.complex_normal(0.5);
  return pair;
}

FieldPair apply_planewave_gain(const FieldPair& in, const GainTable& table) {
  in.check_consistent();
  if (in.signal.space_domain != SpaceDomain::wavevector ||
      in.signal.time_domain != TimeDomain::frequency)
    throw std::logic_error("apply_planewave_gain expects a (q, Omega) domain pair");
  const Grid& g = *in.signal.grid;
  FieldPair out = make_field_pair(in.signal.grid, SpaceDomain::wavevector,
                                  TimeDomain::frequency);
  const int nx = g.n_x();
  const int nt = g.n_t();
  for (int it = 0; it < nt; ++it) {
    const int mt = Grid::mirror_index(it, nt);
    for (int ix = 0; ix < nx; ++ix) {
      const int mx = Grid::mirror_index(ix, nx);
      const std::size_t k = table.idx(it, ix);
      const std::size_t mk = table.idx(mt, mx);
      out.signal.values[k] =
          table.u_signal[k] * in.signal.values[k] +
          table.v_signal[k] * std::conj(in.idler.values[mk]);
      out.idler.values[k] =
          table.u_idler[k] * in.idler.values[k] +
          table.v_idler[k] * std::conj(in.signal.values[mk]);
    }
  }
  return out;
}

namespace {

// Interaction-frame spectral phase rate of one beam: -Delta_i(k)/(2 l_c)
// per unit z, so the pair of beams accumulates the full mismatch while the
// split stays symmetric. The final factor e^{+i Delta_i(k)/4} moves the
// phase reference to the crystal mid-plane and reproduces planewave_gain
// exactly in the wide-pump limit.
struct SplitStepTables {
  std::vector<std::complex<double>> half_s, half_i; // e^{i delta dz/2}
  std::vector<std::complex<double>> full_s, full_i;
  std::vector<std::complex<double>> restore_s, restore_i;
  std::vector<double> cosh_g, sinh_g; // nonlinear cell factors
};

std::complex<double> unit_phase(double theta) {
  return {std::cos(theta), std::sin(theta)};
}

SplitStepTables build_tables(const Grid& g, const CrystalParams& p, int steps) {
  SplitStepTables t;
  const std::size_t n = g.n_modes();
  t.half_s.resize(n);
  t.half_i.resize(n);
  t.full_s.resize(n);
  t.full_i.resize(n);
  t.restore_s.resize(n);
  t.restore_i.resize(n);
  const int nyq_x = g.n_x() / 2;
  const int nyq_t = g.n_t() / 2;
  for (int it = 0; it < g.n_t(); ++it) {
    const double omega = g.omega(it);
    const double omega_odd = (g.n_t() > 1 && it == nyq_t) ? 0.0 : omega;
    for (int ix = 0; ix < g.n_x(); ++ix) {
      const double q = g.q(ix);
      const double q_odd = ix == nyq_x ? 0.0 : q;
      const double even = p.delta0 + p.c_diffr_q * q * q + p.c_gvd_t * omega * omega;
      const double odd = p.c_walkoff_q * q_odd + p.c_gvm_t * omega_odd;
      const double delta_s = even + odd; // dimensionless Delta * l_c
      const double delta_i = even - odd;
      const std::size_t k = static_cast<std::size_t>(it) * g.n_x() + ix;
      const double half_angle = -1.0 / (4.0 * steps);
      t.half_s[k] = unit_phase(delta_s * half_angle);
      t.half_i[k] = unit_phase(delta_i * half_angle);
      t.full_s[k] = t.half_s[k] * t.half_s[k];
      t.full_i[k] = t.half_i[k] * t.half_i[k];
      t.restore_s[k] = unit_phase(0.25 * delta_s);
      t.restore_i[k] = unit_phase(0.25 * delta_i);
    }
  }
  // Nonlinear cell: g = sigma * p(x,t) * dz with the pump centered on the
  // signed lattice origin.
  const double dz = p.l_c / steps;
  t.cosh_g.resize(n);
  t.sinh_g.resize(n);
  for (int it = 0; it < g.n_t(); ++it) {
    const double tt = g.t(it) / p.tau_p;
    for (int ix = 0; ix < g.n_x(); ++ix) {
      const double xx = g.x(ix) / p.w_p;
      const double pump = std::exp(-xx * xx) * std::exp(-tt * tt);
      const double arg = p.sigma * pump * dz;
      const std::size_t k = static_cast<std::size_t>(it) * g.n_x() + ix;
      t.cosh_g[k] = std::cosh(arg);
      t.sinh_g[k] = std::sinh(arg);
    }
  }
  return t;
}

void apply_phase(Field& f, const std::vector<std::complex<double>>& phase) {
  const std::size_t n = f.values.size();
  for (std::size_t k = 0; k < n; ++k) f.values[k] *= phase[k];
}

void check_finite(const FieldPair& pair, int step) {
  if (!pair.signal.all_finite() || !pair.idler.all_finite())
    throw NumericError("split-step produced non-finite values at step " +
                       std::to_string(step));
}

} // namespace

FieldPair propagate_crystal_splitstep(const FieldPair& in, const CrystalParams& params,
                                      int steps) {
  params.validate();
  if (steps < 1) throw ConfigError("split-step count must be >= 1");
  in.check_consistent();
  if (in.signal.space_domain != SpaceDomain::position ||
      in.signal.time_domain != TimeDomain::time)
    throw std::logic_error("propagate_crystal_splitstep expects an (x, t) domain pair");

  const Grid& g = *in.signal.grid;
  const SplitStepTables tables = build_tables(g, params, steps);

  FieldPair pair = in;
  to_domain(pair.signal, SpaceDomain::wavevector, TimeDomain::frequency);
  to_domain(pair.idler, SpaceDomain::wavevector, TimeDomain::frequency);
  apply_phase(pair.signal, tables.half_s);
  apply_phase(pair.idler, tables.half_i);

  const std::size_t n = g.n_modes();
  for (int step = 0; step < steps; ++step) {
    to_domain(pair.signal, SpaceDomain::position, TimeDomain::time);
    to_domain(pair.idler, SpaceDomain::position, TimeDomain::time);
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> s = pair.signal.values[k];
      const std::complex<double> i = pair.idler.values[k];
      pair.signal.values[k] = tables.cosh_g[k] * s + tables.sinh_g[k] * std::conj(i);
      pair.idler.values[k] = tables.cosh_g[k] * i + tables.sinh_g[k] * std::conj(s);
    }
    to_domain(pair.signal, SpaceDomain::wavevector, TimeDomain::frequency);
    to_domain(pair.idler, SpaceDomain::wavevector, TimeDomain::frequency);
    const bool last = step + 1 == steps;
    apply_phase(pair.signal, last ? tables.half_s : tables.full_s);
    apply_phase(pair.idler, last ? tables.half_i : tables.full_i);
    check_finite(pair, step);
  }

  apply_phase(pair.signal, tables.restore_s);
  apply_phase(pair.idler, tables.restore_i);
  to_domain(pair.signal, SpaceDomain::position, TimeDomain::time);
  to_domain(pair.idler, SpaceDomain::position, TimeDomain::time);
  return pair;
}

} // namespace entim
