#include "entim/correlator.hpp"

#include "entim/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace entim {

std::vector<double> detect(const Field& field, double tau_d, double vacuum_offset) {
  if (field.time_domain != TimeDomain::time ||
      field.space_domain != SpaceDomain::position)
    throw std::logic_error("detect expects an (x, t) field at a detection plane");
  const Grid& g = *field.grid;
  if (!(tau_d > 0.0)) throw ConfigError("tau_D must be positive");
  const int window = static_cast<int>(std::llround(tau_d / g.dt()));
  const int m = window < 1 ? 1 : window;
  if (m > g.n_t())
    throw ConfigError("tau_D exceeds the grid time window");

  std::vector<double> intensity(g.n_x(), 0.0);
  // Central window in signed time: indices -floor(m/2) .. ceil(m/2)-1.
  const int first = -(m / 2);
  for (int w = 0; w < m; ++w) {
    const int it = ((first + w) % g.n_t() + g.n_t()) % g.n_t();
    for (int ix = 0; ix < g.n_x(); ++ix) intensity[ix] += std::norm(field.at(it, ix));
  }
  const double inv_m = 1.0 / m;
  for (auto& v : intensity) v = v * inv_m - vacuum_offset;
  return intensity;
}

CorrAccumulator::CorrAccumulator(std::size_t n_pixels)
    : sum_a_(n_pixels, 0.0),
      sum_ab_(n_pixels, 0.0),
      sum_a2_(n_pixels, 0.0),
      sum_a2b_(n_pixels, 0.0),
      sum_ab2_(n_pixels, 0.0),
      sum_a2b2_(n_pixels, 0.0) {}

void CorrAccumulator::accumulate(const std::vector<double>& array_intensity,
                                 double point_intensity) {
  if (array_intensity.size() != sum_a_.size())
    throw std::logic_error("accumulate: array size does not match the accumulator");
  const double b = point_intensity;
  const double b2 = b * b;
  for (std::size_t i = 0; i < sum_a_.size(); ++i) {
    const double a = array_intensity[i];
    const double ab = a * b;
    sum_a_[i] += a;
    sum_ab_[i] += ab;
    sum_a2_[i] += a * a;
    sum_a2b_[i] += a * ab;
    sum_ab2_[i] += ab * b;
    sum_a2b2_[i] += ab * ab;
  }
  sum_b_ += b;
  sum_b2_ += b2;
  ++count_;
}

void CorrAccumulator::merge(const CorrAccumulator& other) {
  if (other.sum_a_.size() != sum_a_.size())
    throw std::logic_error("merge: accumulator sizes differ");
  for (std::size_t i = 0; i < sum_a_.size(); ++i) {
    sum_a_[i] += other.sum_a_[i];
    sum_ab_[i] += other.sum_ab_[i];
    sum_a2_[i] += other.sum_a2_[i];
    sum_a2b_[i] += other.sum_a2b_[i];
    sum_ab2_[i] += other.sum_ab2_[i];
    sum_a2b2_[i] += other.sum_a2b2_[i];
  }
  sum_b_ += other.sum_b_;
  sum_b2_ += other.sum_b2_;
  count_ += other.count_;
}

CorrAccumulator::Finalized CorrAccumulator::finalize() const {
  if (count_ < 2) throw StatsError("finalize requires at least 2 pulses");
  const double n = static_cast<double>(count_);
  const double nm1 = n - 1.0;
  Finalized out;
  out.count = count_;
  const std::size_t pixels = sum_a_.size();
  out.g.resize(pixels);
  out.stderr_g.resize(pixels);
  out.background.resize(pixels);
  out.full_product.resize(pixels);
  out.mean_array.resize(pixels);
  out.mean_point = sum_b_ / n;

  for (std::size_t i = 0; i < pixels; ++i) {
    const double mean_a = sum_a_[i] / n;
    out.mean_array[i] = mean_a;
    out.background[i] = mean_a * out.mean_point;
    out.full_product[i] = sum_ab_[i] / n;
    out.g[i] = (out.full_product[i] - out.background[i]) * (n / nm1);

    // Delete-one jackknife: G_{-i} is quadratic in the per-pulse (a, b),
    // so its spread is an exact function of the accumulated moment sums.
    const double k1 = -n / (nm1 * nm1);
    const double k2 = sum_b_ / (nm1 * nm1);
    const double k3 = sum_a_[i] / (nm1 * nm1);
    const double su = k1 * sum_ab_[i] + k2 * sum_a_[i] + k3 * sum_b_;
    const double su2 = k1 * k1 * sum_a2b2_[i] + k2 * k2 * sum_a2_[i] +
                       k3 * k3 * sum_b2_ + 2.0 * k1 * k2 * sum_a2b_[i] +
                       2.0 * k1 * k3 * sum_ab2_[i] + 2.0 * k2 * k3 * sum_ab_[i];
    const double spread = su2 - su * su / n;
    const double var_jack = (nm1 / n) * (spread > 0.0 ? spread : 0.0);
    out.stderr_g[i] = std::sqrt(var_jack);
  }
  return out;
}

double visibility(const std::vector<double>& pattern, std::size_t lo, std::size_t hi) {
  if (lo >= hi || hi > pattern.size())
    throw StatsError("visibility: empty or out-of-range window");
  double vmax = pattern[lo];
  double vmin = pattern[lo];
  for (std::size_t i = lo; i < hi; ++i) {
    vmax = pattern[i] > vmax ? pattern[i] : vmax;
    vmin = pattern[i] < vmin ? pattern[i] : vmin;
  }
  if (!(vmax > 0.0)) throw StatsError("visibility undefined for a non-positive pattern");
  return (vmax - vmin) / (vmax + vmin);
}

double visibility(const std::vector<double>& pattern) {
  return visibility(pattern, 0, pattern.size());
}

} // namespace entim
