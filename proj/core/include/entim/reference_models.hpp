#ifndef ENTIM_REFERENCE_MODELS_HPP
#define ENTIM_REFERENCE_MODELS_HPP

#include "entim/gain.hpp"
#include "entim/optics.hpp"
#include "entim/rng.hpp"

#include <cstdint>
#include <vector>

namespace entim {

/// Source options: the entangled output state, or the two separable
/// number-correlated mixtures that keep only the far-field (W) or only
/// the near-field (Wprime) intensity correlation.
enum class SourceModel { pure, mixture_w, mixture_wprime };

/// Quasi-monochromatic (Omega = 0) quadrature oracles for the intensity
/// fluctuation correlation G(x_S, x_I). Pure state: coherent q sum
///   G = | sum_q h~_S(x_S, q) h~_I(x_I, -q) U_S(q) V_I(-q) |^2
/// (Gaussian moment factorization of the output state; reduces to the
/// far-field fringe product at z=f and to the object image at z=2f).
/// Mixture W: the same sum with every modulus squared (incoherent).
/// Mixture Wprime: incoherent near-field sum over position kernels with
/// the q=0 pair strength.
double g_pure(const ImagingSetup& setup, const GainTable& table, int signal_index,
              int idler_index);
double g_mixture_w(const ImagingSetup& setup, const GainTable& table, int signal_index,
                   int idler_index);
double g_mixture_wprime(const ImagingSetup& setup, const GainTable& table,
                        int signal_index, int idler_index);

/// G over the array-arm detector lattice with the point arm fixed at
/// setup.fixed_point; lattice (DFT) pixel order.
std::vector<double> oracle_curve(const ImagingSetup& setup, const GainTable& table,
                                 SourceModel model);

/// One stochastic realization of a classical mixture as a field pair.
/// W: per (q,-q) lattice pair one shared thermal photon number (drawn
/// from the discrete law, so the shared-intensity variance is n(n+1))
/// and independent uniform phases per beam; returned in (q, Omega).
/// Wprime: the same construction indexed by near-field cell with the
/// (q=0, Omega=0) mean; returned in (x, t). No vacuum term: detection of
/// classical runs must skip the Wigner offset.
FieldPair sample_mixture_fields(SourceModel model, const GainTable& table,
                                const GridPtr& grid, Rng& rng);

/// Microscopic (coincidence-counting) mode: samples detection pairs from
/// the normalized biphoton density |A(x_S, x_I)|^2, A being the coherent
/// amplitude of g_pure, by inverse CDF on the precomputed lattice density.
struct BiphotonHistogram {
  int n = 0;                          // lattice size per axis
  long events = 0;
  std::vector<std::uint32_t> counts;  // (j_S, j_I) row-major, lattice order
  std::vector<double> density;        // normalized |A|^2, same layout

  std::uint32_t at(int j_s, int j_i) const {
    return counts[static_cast<std::size_t>(j_s) * n + j_i];
  }
};

BiphotonHistogram biphoton_coincidences(const ImagingSetup& setup,
                                        const GainTable& table, long n_events,
                                        Rng& rng);

/// Counts marginalized onto u = (j_S + j_I) mod n, the lattice variable
/// the far-field fringes live on.
std::vector<double> sum_coordinate_marginal(const BiphotonHistogram& h);
std::vector<double> sum_coordinate_marginal_density(const BiphotonHistogram& h);

} // namespace entim

#endif
