#include "entim/analysis.hpp"

#include "entim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace entim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
} // namespace

std::vector<double> fftshift(const std::vector<double>& lattice_ordered) {
  const int n = static_cast<int>(lattice_ordered.size());
  std::vector<double> out(lattice_ordered.size());
  for (int s = 0; s < n; ++s) out[s] = lattice_ordered[(s + n / 2) % n];
  return out;
}

std::vector<double> shifted_coords(int n, double pitch) {
  std::vector<double> c(n);
  for (int s = 0; s < n; ++s) c[s] = (s - n / 2) * pitch;
  return c;
}

double fringe_component(const std::vector<double>& pattern, double period_samples) {
  if (!(period_samples > 1.0)) throw StatsError("fringe period must exceed one sample");
  double dc = 0.0;
  for (double v : pattern) dc += v;
  if (!(dc > 0.0)) throw StatsError("fringe component undefined for zero-mass pattern");
  // Project the mean-removed pattern so a constant scores exactly zero
  // (no partial-period leakage).
  const double mean = dc / static_cast<double>(pattern.size());
  std::complex<double> comp = 0.0;
  for (std::size_t j = 0; j < pattern.size(); ++j) {
    const double phase = -kTwoPi * static_cast<double>(j) / period_samples;
    comp += (pattern[j] - mean) * std::complex<double>{std::cos(phase), std::sin(phase)};
  }
  return std::abs(comp) / dc;
}

double dominant_period_samples(const std::vector<double>& pattern, int min_bin,
                               int max_bin) {
  const int n = static_cast<int>(pattern.size());
  if (n < 8) throw StatsError("pattern too short for period estimation");
  if (max_bin <= 0) max_bin = n / 2;
  if (min_bin < 1 || min_bin >= max_bin || max_bin > n / 2)
    throw StatsError("period search bins out of range");
  double mean = 0.0;
  for (double v : pattern) mean += v;
  mean /= n;

  // Direct DFT magnitudes; analysis arrays are small.
  std::vector<double> mag(n / 2 + 1, 0.0);
  for (int k = std::max(1, min_bin - 1); k <= std::min(n / 2, max_bin + 1); ++k) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double phase = -kTwoPi * static_cast<double>(j) * k / n;
      acc += (pattern[j] - mean) * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    mag[k] = std::abs(acc);
  }
  int peak = min_bin;
  for (int k = min_bin; k <= max_bin; ++k)
    if (mag[k] > mag[peak]) peak = k;
  if (!(mag[peak] > 0.0)) throw StatsError("no oscillatory component found");

  double refined = static_cast<double>(peak);
  if (peak > 1 && peak < n / 2) {
    const double denom = mag[peak - 1] - 2.0 * mag[peak] + mag[peak + 1];
    if (denom < 0.0) refined += 0.5 * (mag[peak - 1] - mag[peak + 1]) / denom;
  }
  return static_cast<double>(n) / refined;
}

BandContrast image_band_contrast(const std::vector<double>& shifted_pattern,
                                 double pitch, double slit_width,
                                 double slit_distance, double noise_floor) {
  const int n = static_cast<int>(shifted_pattern.size());
  BandContrast out;
  long band_count = 0, gap_count = 0;
  // Sample the feature cores: band pixels within a quarter slit width of
  // the slit centers, gap pixels in the central 30% of the dark zone, so
  // the estimate is not dominated by diffraction-blurred band edges.
  const double gap_half = 0.15 * (slit_distance - slit_width);
  for (int s = 0; s < n; ++s) {
    const double x = (s - n / 2) * pitch;
    const double off = std::abs(std::abs(x) - 0.5 * slit_distance);
    if (off <= 0.25 * slit_width + 0.5 * pitch) {
      out.band_mean += shifted_pattern[s];
      ++band_count;
    } else if (std::abs(x) <= gap_half) {
      out.gap_mean += shifted_pattern[s];
      ++gap_count;
    }
  }
  if (band_count == 0 || gap_count == 0)
    throw StatsError("band contrast: slit geometry unresolved by the lattice");
  out.band_mean /= static_cast<double>(band_count);
  out.gap_mean /= static_cast<double>(gap_count);
  const double denom = out.band_mean + out.gap_mean;
  if (denom <= noise_floor || !(denom > 0.0)) {
    out.contrast = 0.0;
    return out;
  }
  // Noisy estimates can stray outside the physical range (negative gap).
  out.contrast = std::clamp((out.band_mean - out.gap_mean) / denom, 0.0, 1.0);
  return out;
}

std::vector<double> refined_peaks(const std::vector<double>& pattern,
                                  double threshold_frac) {
  const int n = static_cast<int>(pattern.size());
  double vmax = 0.0;
  for (double v : pattern) vmax = v > vmax ? v : vmax;
  if (!(vmax > 0.0)) throw StatsError("peak search on a non-positive pattern");
  const double threshold = threshold_frac * vmax;
  std::vector<double> peaks;
  for (int i = 1; i + 1 < n; ++i) {
    if (pattern[i] >= threshold && pattern[i] > pattern[i - 1] &&
        pattern[i] >= pattern[i + 1]) {
      double pos = static_cast<double>(i);
      const double denom = pattern[i - 1] - 2.0 * pattern[i] + pattern[i + 1];
      if (denom < 0.0) pos += 0.5 * (pattern[i - 1] - pattern[i + 1]) / denom;
      peaks.push_back(pos);
    }
  }
  return peaks;
}

double refined_minimum(const std::vector<double>& pattern, std::size_t lo,
                       std::size_t hi) {
  if (lo >= hi || hi > pattern.size())
    throw StatsError("refined_minimum: empty or out-of-range window");
  std::size_t imin = lo;
  for (std::size_t i = lo; i < hi; ++i)
    if (pattern[i] < pattern[imin]) imin = i;
  double pos = static_cast<double>(imin);
  if (imin > 0 && imin + 1 < pattern.size()) {
    const double denom =
        pattern[imin - 1] - 2.0 * pattern[imin] + pattern[imin + 1];
    if (denom > 0.0)
      pos += 0.5 * (pattern[imin - 1] - pattern[imin + 1]) / denom;
  }
  return pos;
}

} // namespace entim
