#ifndef ENTIM_GRID_HPP
#define ENTIM_GRID_HPP

#include "entim/fft.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace entim {

enum class SpaceDomain { position, wavevector }; // x vs q
enum class TimeDomain { time, frequency };       // t vs Omega
enum class Axis { space, time };
enum class Direction { forward, inverse };

/// Transverse-space/time lattice with its conjugate (q, Omega) lattices.
///
/// DFT layout (fixed for every kernel in the project): index 0 holds the
/// zero coordinate/frequency, indices 1..n/2-1 the positive values, index
/// n/2 the Nyquist value +pi/step, indices above n/2 wrap to negative
/// values. Conjugate spacings are dq = 2pi/(n_x dx), dOmega = 2pi/(n_t dt).
/// n_t = 1 selects a quasi-monochromatic lattice with no time axis.
///
/// Grids are immutable after construction; share via shared_ptr.
class Grid {
public:
  Grid(int n_x, double dx, int n_t, double dt);

  int n_x() const { return n_x_; }
  int n_t() const { return n_t_; }
  double dx() const { return dx_; }
  double dt() const { return dt_; }
  double dq() const { return dq_; }
  double domega() const { return domega_; }
  double space_window() const { return n_x_ * dx_; }
  double time_window() const { return n_t_ * dt_; }
  std::size_t n_modes() const { return static_cast<std::size_t>(n_x_) * n_t_; }

  /// Signed lattice values per the layout above.
  double x(int j) const { return signed_index(j, n_x_) * dx_; }
  double q(int k) const { return signed_index(k, n_x_) * dq_; }
  double t(int j) const { return signed_index(j, n_t_) * dt_; }
  double omega(int k) const { return signed_index(k, n_t_) * domega_; }

  /// Lattice index of -q (or -Omega): the involution k -> (n-k) mod n.
  /// Indices 0 and n/2 are their own mirrors.
  static int mirror_index(int k, int n) { return k == 0 ? 0 : n - k; }

  /// Nearest lattice index for a signed coordinate value; throws ConfigError
  /// if the value is off-lattice by more than `tol` steps.
  static int index_of(double value, double step, int n, double tol = 1e-6);

  const FftPlan& plan_x() const { return *plan_x_; }
  const FftPlan& plan_t() const { return *plan_t_; }

private:
  static int signed_index(int k, int n) { return k < (n + 1) / 2 ? k : k - n; }

  int n_x_;
  double dx_;
  int n_t_;
  double dt_;
  double dq_;
  double domega_;
  std::shared_ptr<const FftPlan> plan_x_;
  std::shared_ptr<const FftPlan> plan_t_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validates sizes (powers of two, n_x >= 2, n_t >= 1) and spacings (> 0).
GridPtr make_grid(int n_x, double dx, int n_t, double dt);

/// One complex field envelope on a grid, shape (n_t, n_x) row-major,
/// tagged with the domain of each axis. Transforms flip the tag of the
/// axis they act on; mixing tags up is a logic error, not a config error.
struct Field {
  GridPtr grid;
  SpaceDomain space_domain = SpaceDomain::position;
  TimeDomain time_domain = TimeDomain::time;
  std::vector<std::complex<double>> values;

  std::complex<double>& at(int it, int ix) {
    return values[static_cast<std::size_t>(it) * grid->n_x() + ix];
  }
  const std::complex<double>& at(int it, int ix) const {
    return values[static_cast<std::size_t>(it) * grid->n_x() + ix];
  }

  double total_power() const;
  bool all_finite() const;
};

Field make_field(GridPtr grid, SpaceDomain sd = SpaceDomain::position,
                 TimeDomain td = TimeDomain::time);

/// Unitary discrete transform along one axis. Forward maps x->q (t->Omega)
/// with kernel e^{-i q x} (e^{-i Omega t}); inverse is the conjugate.
Field transform(const Field& field, Axis axis, Direction direction);

/// Same transform without the copy; used by the per-pulse hot path.
void transform_in_place(Field& field, Axis axis, Direction direction);

/// Convenience: bring a field to the requested pair of domains.
void to_domain(Field& field, SpaceDomain sd, TimeDomain td);

/// Signal/idler envelope pair sharing one grid and one domain tag.
struct FieldPair {
  Field signal;
  Field idler;

  /// Throws std::logic_error unless grids and tags agree.
  void check_consistent() const;
};

FieldPair make_field_pair(GridPtr grid, SpaceDomain sd = SpaceDomain::position,
                          TimeDomain td = TimeDomain::time);

} // namespace entim

#endif
