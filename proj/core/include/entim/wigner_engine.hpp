#ifndef ENTIM_WIGNER_ENGINE_HPP
#define ENTIM_WIGNER_ENGINE_HPP

#include "entim/gain.hpp"
#include "entim/grid.hpp"
#include "entim/rng.hpp"

#include <cstdint>

namespace entim {

/// Stochastic engine choice and its knobs. The plane-wave engine applies
/// the closed-form gain per (q, Omega) mode; the finite-pump engine
/// integrates the coupled propagation through the crystal with a Gaussian
/// pump of waist w_p and duration tau_p.
struct EngineConfig {
  enum class Kind { planewave, finite_pump };
  Kind engine = Kind::planewave;
  int steps = 64; // split-step count, finite-pump only
  std::uint64_t seed = 1;
  long pulses = 1;

  void validate() const; // throws ConfigError
};

/// Wigner sample of the two-beam input vacuum in the (q, Omega) domain:
/// each mode of each beam gets an independent circular complex Gaussian
/// with <|alpha|^2> = 1/2 (symmetric-ordering half photon), <alpha^2> = 0.
/// Draw order is fixed (signal modes then idler modes) for reproducibility.
FieldPair sample_vacuum(const GridPtr& grid, Rng& rng);

/// c-number transcription of the plane-wave input/output transform:
///   alpha_S'(k) = U_S(k) alpha_S(k) + V_S(k) conj(alpha_I(-k))
/// and symmetrically for the idler, with -k the lattice mirror index.
/// Input and output are in the (q, Omega) domain.
FieldPair apply_planewave_gain(const FieldPair& in, const GainTable& table);

/// Symmetric split-step integration of
///   d alpha_S/dz = L_S alpha_S + sigma p(x,t) conj(alpha_I)
///   d alpha_I/dz = L_I alpha_I + sigma p(x,t) conj(alpha_S)
/// over z in [0, l_c], p(x,t) = exp(-x^2/w_p^2) exp(-t^2/tau_p^2), with the
/// linear spectral phases taken from the mismatch polynomial (split evenly
/// between the beams) and the local two-field coupling solved exactly per
/// cell (cosh/sinh rotation, so |U|^2-|V|^2 = 1 holds for any step size).
/// Output phases are referenced to the crystal exit face; in the wide-pump
/// limit the result converges to apply_planewave_gain at O(steps^-2).
/// Input must be in the (x, t) domain; output is returned in (x, t).
FieldPair propagate_crystal_splitstep(const FieldPair& in, const CrystalParams& params,
                                      int steps);

} // namespace entim

#endif
