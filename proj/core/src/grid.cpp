#include "entim/grid.hpp"

#include "entim/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }
} // namespace

Grid::Grid(int n_x, double dx, int n_t, double dt)
    : n_x_(n_x), dx_(dx), n_t_(n_t), dt_(dt) {
  if (!is_power_of_two(n_x_) || n_x_ < 2)
    throw ConfigError("n_x must be a power of two >= 2, got " + std::to_string(n_x_));
  if (!is_power_of_two(n_t_))
    throw ConfigError("n_t must be a power of two >= 1, got " + std::to_string(n_t_));
  if (!(dx_ > 0.0)) throw ConfigError("dx must be positive");
  if (!(dt_ > 0.0)) throw ConfigError("dt must be positive");
  dq_ = kTwoPi / (n_x_ * dx_);
  domega_ = kTwoPi / (n_t_ * dt_);
  plan_x_ = std::make_shared<const FftPlan>(n_x_);
  plan_t_ = std::make_shared<const FftPlan>(n_t_);
}

int Grid::index_of(double value, double step, int n, double tol) {
  const double idx = value / step;
  double rounded = std::round(idx);
  if (std::abs(idx - rounded) > tol)
    throw ConfigError("coordinate " + std::to_string(value) + " is off-lattice");
  int k = static_cast<int>(rounded);
  if (k < -n / 2 || k >= (n + 1) / 2)
    throw ConfigError("coordinate " + std::to_string(value) + " outside the lattice");
  return k < 0 ? k + n : k;
}

GridPtr make_grid(int n_x, double dx, int n_t, double dt) {
  return std::make_shared<const Grid>(n_x, dx, n_t, dt);
}

double Field::total_power() const {
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v);
  return sum;
}

bool Field::all_finite() const {
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Field make_field(GridPtr grid, SpaceDomain sd, TimeDomain td) {
  Field f;
  f.grid = std::move(grid);
  f.space_domain = sd;
  f.time_domain = td;
  f.values.assign(f.grid->n_modes(), {0.0, 0.0});
  return f;
}

namespace {

void check_tag(const Field& field, Axis axis, Direction direction) {
  if (axis == Axis::space) {
    const bool want_position = direction == Direction::forward;
    if ((field.space_domain == SpaceDomain::position) != want_position)
      throw std::logic_error("space-axis transform direction does not match domain tag");
  } else {
    const bool want_time = direction == Direction::forward;
    if ((field.time_domain == TimeDomain::time) != want_time)
      throw std::logic_error("time-axis transform direction does not match domain tag");
  }
}

} // namespace

void transform_in_place(Field& field, Axis axis, Direction direction) {
  check_tag(field, axis, direction);
  const Grid& g = *field.grid;
  if (axis == Axis::space) {
    for (int it = 0; it < g.n_t(); ++it) {
      std::complex<double>* row = &field.at(it, 0);
      if (direction == Direction::forward)
        g.plan_x().forward(row);
      else
        g.plan_x().inverse(row);
    }
    field.space_domain = direction == Direction::forward ? SpaceDomain::wavevector
                                                         : SpaceDomain::position;
  } else {
    if (g.n_t() > 1) {
      std::vector<std::complex<double>> column(g.n_t());
      for (int ix = 0; ix < g.n_x(); ++ix) {
        for (int it = 0; it < g.n_t(); ++it) column[it] = field.at(it, ix);
        if (direction == Direction::forward)
          g.plan_t().forward(column.data());
        else
          g.plan_t().inverse(column.data());
        for (int it = 0; it < g.n_t(); ++it) field.at(it, ix) = column[it];
      }
    }
    field.time_domain = direction == Direction::forward ? TimeDomain::frequency
                                                        : TimeDomain::time;
  }
}

Field transform(const Field& field, Axis axis, Direction direction) {
  Field out = field;
  transform_in_place(out, axis, direction);
  return out;
}

void to_domain(Field& field, SpaceDomain sd, TimeDomain td) {
  if (field.space_domain != sd)
    transform_in_place(field, Axis::space,
                       sd == SpaceDomain::wavevector ? Direction::forward
                                                     : Direction::inverse);
  if (field.time_domain != td)
    transform_in_place(field, Axis::time,
                       td == TimeDomain::frequency ? Direction::forward
                                                   : Direction::inverse);
}

void FieldPair::check_consistent() const {
  if (signal.grid.get() != idler.grid.get())
    throw std::logic_error("signal and idler must share one grid");
  if (signal.space_domain != idler.space_domain ||
      signal.time_domain != idler.time_domain)
    throw std::logic_error("signal and idler must share one domain tag");
}

FieldPair make_field_pair(GridPtr grid, SpaceDomain sd, TimeDomain td) {
  FieldPair pair;
  pair.signal = make_field(grid, sd, td);
  pair.idler = make_field(std::move(grid), sd, td);
  return pair;
}

} // namespace entim
