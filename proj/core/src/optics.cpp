#include "entim/optics.hpp"

#include "entim/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace entim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
} // namespace

void ImagingSetup::validate() const {
  if (!grid) throw ConfigError("imaging setup has no grid");
  if (!(focal_length > 0.0)) throw ConfigError("f must be positive");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (object.size() != static_cast<std::size_t>(grid->n_x()))
    throw ConfigError("object profile size does not match the grid");
  for (const auto& t : object)
    if (std::abs(t) > 1.0 + 1e-12)
      throw ConfigError("object transmission must satisfy |T| <= 1");
  fixed_index();           // throws if the point detector is off-lattice
  spectrum_cache_.clear(); // refresh after any object edit
  object_spectrum();
}

const std::vector<std::complex<double>>& ImagingSetup::object_spectrum() const {
  if (spectrum_cache_.size() != object.size()) {
    spectrum_cache_ = object;
    grid->plan_x().forward(spectrum_cache_.data());
  }
  return spectrum_cache_;
}

int ImagingSetup::fixed_index() const {
  return Grid::index_of(fixed_point, point_pitch(), grid->n_x());
}

double ImagingSetup::object_mean_square() const {
  double sum = 0.0;
  for (const auto& t : object) sum += std::norm(t);
  return sum / static_cast<double>(object.size());
}

namespace {

// Overlap fraction of the cell [x - dx/2, x + dx/2) with the two slit
// openings.
double slit_coverage(double x, double dx, double a, double d) {
  double covered = 0.0;
  for (double center : {-0.5 * d, 0.5 * d}) {
    const double lo = std::max(x - 0.5 * dx, center - 0.5 * a);
    const double hi = std::min(x + 0.5 * dx, center + 0.5 * a);
    if (hi > lo) covered += hi - lo;
  }
  return covered / dx;
}

} // namespace

std::vector<std::complex<double>> double_slit(const Grid& grid, double a, double d) {
  if (!(a > 0.0) || !(a < d)) throw ConfigError("double slit requires 0 < a < d");
  if (d + a >= grid.space_window())
    throw ConfigError("double slit does not fit in the grid window");
  const int n = grid.n_x();
  std::vector<double> coverage(n);
  for (int j = 0; j < n; ++j) coverage[j] = slit_coverage(grid.x(j), grid.dx(), a, d);

  // Edge-weighted sampling: scale the partially covered edge pixels so the
  // lattice aperture keeps the first diffraction null of the continuous
  // slit at q = 2 pi / a (plain pixel sampling shifts it by O(dx/a)).
  const double q_null = 2.0 * M_PI / a;
  const auto is_full = [](double c) { return c >= 1.0 - 1e-12; };
  double full_part = 0.0, edge_part = 0.0, max_partial = 0.0;
  for (int j = 0; j < n; ++j) {
    const double k = std::cos(q_null * grid.x(j)); // T is even: real spectrum
    if (is_full(coverage[j])) {
      full_part += k;
    } else if (coverage[j] > 0.0) {
      edge_part += coverage[j] * k;
      max_partial = std::max(max_partial, coverage[j]);
    }
  }
  double gamma = 1.0;
  if (std::abs(edge_part) > 1e-12 && max_partial > 0.0) {
    const double root = -full_part / edge_part;
    if (root >= 0.0 && root * max_partial <= 1.0) gamma = root;
  }

  std::vector<std::complex<double>> t(n);
  for (int j = 0; j < n; ++j)
    t[j] = is_full(coverage[j]) ? 1.0 : gamma * coverage[j];
  return t;
}

std::vector<std::complex<double>> load_object_profile(const std::string& path,
                                                      const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open object file: " + path);
  std::vector<std::complex<double>> t;
  t.reserve(grid.n_x());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    double v;
    if (ss >> v) {
      if (std::abs(v) > 1.0)
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": object transmission must satisfy |T| <= 1");
      t.emplace_back(v, 0.0);
      std::string rest;
      if (ss >> rest)
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": expected one value per line");
    }
  }
  if (t.size() != static_cast<std::size_t>(grid.n_x()))
    throw ConfigError(path + ": expected " + std::to_string(grid.n_x()) +
                      " samples, got " + std::to_string(t.size()));
  return t;
}

void apply_object(Field& field, const std::vector<std::complex<double>>& object) {
  if (field.space_domain != SpaceDomain::position)
    throw std::logic_error("apply_object expects a position-domain field");
  if (object.size() != static_cast<std::size_t>(field.grid->n_x()))
    throw std::logic_error("object profile size does not match the field");
  for (int it = 0; it < field.grid->n_t(); ++it)
    for (int ix = 0; ix < field.grid->n_x(); ++ix) field.at(it, ix) *= object[ix];
}

Field propagate_f_f(const Field& in, double focal_length, double lambda) {
  if (in.space_domain != SpaceDomain::position)
    throw std::logic_error("propagate_f_f expects a position-domain field");
  (void)focal_length;
  (void)lambda;
  Field out = in;
  const Grid& g = *out.grid;
  for (int it = 0; it < g.n_t(); ++it) g.plan_x().forward(&out.at(it, 0));
  // Focal-plane samples: pixel j sits at x = lambda f q_j / (2 pi).
  out.space_domain = SpaceDomain::position;
  return out;
}

Field propagate_2f_2f(const Field& in, double focal_length, double lambda) {
  if (in.space_domain != SpaceDomain::position)
    throw std::logic_error("propagate_2f_2f expects a position-domain field");
  (void)focal_length;
  (void)lambda;
  Field out = in;
  const Grid& g = *out.grid;
  for (int it = 0; it < g.n_t(); ++it)
    for (int ix = 0; ix < g.n_x(); ++ix)
      out.at(it, ix) = -in.at(it, Grid::mirror_index(ix, g.n_x()));
  return out;
}

std::complex<double> kernel_spectrum(const ImagingSetup& setup, Beam arm,
                                     int det_index, int q_index) {
  const int n = setup.grid->n_x();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  if (arm == Beam::signal) {
    // (1/sqrt N) T~((q_det - q) mod lattice)
    const int k = ((det_index - q_index) % n + n) % n;
    return inv_sqrt_n * setup.object_spectrum()[k];
  }
  if (setup.z_config == ArmGeometry::focal)
    return det_index == q_index ? 1.0 : 0.0;
  // z = 2f: -(1/sqrt N) e^{-i q x_det}
  const double qx = setup.grid->q(q_index) * setup.grid->x(det_index);
  return -inv_sqrt_n * std::complex<double>{std::cos(qx), -std::sin(qx)};
}

std::complex<double> kernel_position(const ImagingSetup& setup, Beam arm,
                                     int det_index, int x_index) {
  const int n = setup.grid->n_x();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  if (arm == Beam::signal) {
    // (1/sqrt N) e^{-i q_det x} T(x)
    const double qx = setup.grid->q(det_index) * setup.grid->x(x_index);
    return inv_sqrt_n * std::complex<double>{std::cos(qx), -std::sin(qx)} *
           setup.object[static_cast<std::size_t>(x_index)];
  }
  if (setup.z_config == ArmGeometry::focal) {
    const double qx = setup.grid->q(det_index) * setup.grid->x(x_index);
    return inv_sqrt_n * std::complex<double>{std::cos(qx), -std::sin(qx)};
  }
  // z = 2f: out(x_det) = -in(-x_det)
  return x_index == Grid::mirror_index(det_index, n) ? -1.0 : 0.0;
}

} // namespace entim
