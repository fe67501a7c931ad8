#include "entim/reference_models.hpp"

#include "entim/errors.hpp"
#include "entim/photon_statistics.hpp"

#include <algorithm>
#include <cmath>

namespace entim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Pair amplitude P(q) = U_S(q, 0) V_I(-q, 0) on the Omega = 0 row.
std::vector<std::complex<double>> pair_amplitude_row(const GainTable& table) {
  const int n = table.grid->n_x();
  std::vector<std::complex<double>> p(n);
  for (int ix = 0; ix < n; ++ix) p[ix] = table.pair_amplitude(0, ix);
  return p;
}

} // namespace

double g_pure(const ImagingSetup& setup, const GainTable& table, int signal_index,
              int idler_index) {
  const int n = setup.grid->n_x();
  std::complex<double> sum = 0.0;
  for (int kq = 0; kq < n; ++kq) {
    const int mq = Grid::mirror_index(kq, n);
    sum += kernel_spectrum(setup, Beam::signal, signal_index, kq) *
           kernel_spectrum(setup, Beam::idler, idler_index, mq) *
           table.pair_amplitude(0, kq);
  }
  return std::norm(sum);
}

double g_mixture_w(const ImagingSetup& setup, const GainTable& table, int signal_index,
                   int idler_index) {
  const int n = setup.grid->n_x();
  double sum = 0.0;
  for (int kq = 0; kq < n; ++kq) {
    const int mq = Grid::mirror_index(kq, n);
    sum += std::norm(kernel_spectrum(setup, Beam::signal, signal_index, kq)) *
           std::norm(kernel_spectrum(setup, Beam::idler, idler_index, mq)) *
           std::norm(table.pair_amplitude(0, kq));
  }
  return sum;
}

double g_mixture_wprime(const ImagingSetup& setup, const GainTable& table,
                        int signal_index, int idler_index) {
  const int n = setup.grid->n_x();
  // Position-diagonal pair strength of the short-crystal state: variance
  // n(n+1) of the shared thermal number at the collinear tuning.
  const double strength = std::norm(table.pair_amplitude(0, 0));
  double sum = 0.0;
  for (int jx = 0; jx < n; ++jx)
    sum += std::norm(kernel_position(setup, Beam::signal, signal_index, jx)) *
           std::norm(kernel_position(setup, Beam::idler, idler_index, jx));
  return strength * sum;
}

std::vector<double> oracle_curve(const ImagingSetup& setup, const GainTable& table,
                                 SourceModel model) {
  setup.validate();
  const int n = setup.grid->n_x();
  const int fixed = setup.fixed_index();
  std::vector<double> g(n);
  const bool array_is_idler = setup.array_beam() == Beam::idler;
  for (int j = 0; j < n; ++j) {
    const int js = array_is_idler ? fixed : j;
    const int ji = array_is_idler ? j : fixed;
    switch (model) {
      case SourceModel::pure: g[j] = g_pure(setup, table, js, ji); break;
      case SourceModel::mixture_w: g[j] = g_mixture_w(setup, table, js, ji); break;
      case SourceModel::mixture_wprime:
        g[j] = g_mixture_wprime(setup, table, js, ji);
        break;
    }
  }
  return g;
}

FieldPair sample_mixture_fields(SourceModel model, const GainTable& table,
                                const GridPtr& grid, Rng& rng) {
  if (model == SourceModel::pure)
    throw std::logic_error("sample_mixture_fields handles the classical mixtures only");
  const int nx = grid->n_x();
  const int nt = grid->n_t();

  if (model == SourceModel::mixture_w) {
    FieldPair pair = make_field_pair(grid, SpaceDomain::wavevector, TimeDomain::frequency);
    for (int it = 0; it < nt; ++it) {
      const int mt = Grid::mirror_index(it, nt);
      for (int ix = 0; ix < nx; ++ix) {
        const int mx = Grid::mirror_index(ix, nx);
        const std::size_t k = table.idx(it, ix);
        const double mean = std::norm(table.v_signal[k]);
        const double amp =
            std::sqrt(static_cast<double>(sample_thermal_number(mean, rng)));
        const double phi1 = kTwoPi * rng.uniform();
        const double phi2 = kTwoPi * rng.uniform();
        pair.signal.at(it, ix) = amp * std::complex<double>{std::cos(phi1), std::sin(phi1)};
        pair.idler.at(mt, mx) = amp * std::complex<double>{std::cos(phi2), std::sin(phi2)};
      }
    }
    return pair;
  }

  // Wprime: local thermal pairs per near-field cell at the q = 0 mean.
  FieldPair pair = make_field_pair(grid, SpaceDomain::position, TimeDomain::time);
  const double mean0 = std::norm(table.v_signal[table.idx(0, 0)]);
  const std::size_t n_cells = grid->n_modes();
  for (std::size_t k = 0; k < n_cells; ++k) {
    const double amp =
        std::sqrt(static_cast<double>(sample_thermal_number(mean0, rng)));
    const double phi1 = kTwoPi * rng.uniform();
    const double phi2 = kTwoPi * rng.uniform();
    pair.signal.values[k] = amp * std::complex<double>{std::cos(phi1), std::sin(phi1)};
    pair.idler.values[k] = amp * std::complex<double>{std::cos(phi2), std::sin(phi2)};
  }
  return pair;
}

BiphotonHistogram biphoton_coincidences(const ImagingSetup& setup,
                                        const GainTable& table, long n_events,
                                        Rng& rng) {
  setup.validate();
  if (n_events < 1) throw ConfigError("biphoton mode needs n_events >= 1");
  const int n = setup.grid->n_x();
  BiphotonHistogram h;
  h.n = n;
  h.events = n_events;
  h.density.assign(static_cast<std::size_t>(n) * n, 0.0);
  h.counts.assign(static_cast<std::size_t>(n) * n, 0);

  const std::vector<std::complex<double>> pair_amp = pair_amplitude_row(table);
  const bool idler_focal = setup.z_config == ArmGeometry::focal;
  std::vector<std::complex<double>> row(n);
  for (int js = 0; js < n; ++js) {
    // w(q) = h~_S(js, q) P(q); idler kernel applied per column below.
    for (int kq = 0; kq < n; ++kq)
      row[kq] = kernel_spectrum(setup, Beam::signal, js, kq) * pair_amp[kq];
    if (idler_focal) {
      // h~_I(ji, -q) picks q at the mirror of ji.
      for (int ji = 0; ji < n; ++ji) {
        const int kq = Grid::mirror_index(ji, n);
        h.density[static_cast<std::size_t>(js) * n + ji] = std::norm(row[kq]);
      }
    } else {
      // h~_I(ji, -q) = -(1/sqrt N) e^{+i q x_ji}: an inverse unitary DFT.
      setup.grid->plan_x().inverse(row.data());
      for (int ji = 0; ji < n; ++ji)
        h.density[static_cast<std::size_t>(js) * n + ji] = std::norm(row[ji]);
    }
  }

  double total = 0.0;
  for (double d : h.density) total += d;
  if (!(total > 0.0)) throw ConfigError("biphoton density is identically zero");
  for (double& d : h.density) d /= total;

  std::vector<double> cdf(h.density.size());
  double running = 0.0;
  for (std::size_t i = 0; i < h.density.size(); ++i) {
    running += h.density[i];
    cdf[i] = running;
  }
  cdf.back() = 1.0;

  for (long e = 0; e < n_events; ++e) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t cell = static_cast<std::size_t>(it - cdf.begin());
    ++h.counts[cell < h.counts.size() ? cell : h.counts.size() - 1];
  }
  return h;
}

std::vector<double> sum_coordinate_marginal(const BiphotonHistogram& h) {
  std::vector<double> m(h.n, 0.0);
  for (int js = 0; js < h.n; ++js)
    for (int ji = 0; ji < h.n; ++ji)
      m[(js + ji) % h.n] += h.at(js, ji);
  return m;
}

std::vector<double> sum_coordinate_marginal_density(const BiphotonHistogram& h) {
  std::vector<double> m(h.n, 0.0);
  for (int js = 0; js < h.n; ++js)
    for (int ji = 0; ji < h.n; ++ji)
      m[(js + ji) % h.n] += h.density[static_cast<std::size_t>(js) * h.n + ji];
  return m;
}

} // namespace entim
