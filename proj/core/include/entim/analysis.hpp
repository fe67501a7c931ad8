#ifndef ENTIM_ANALYSIS_HPP
#define ENTIM_ANALYSIS_HPP

#include <vector>

namespace entim {

/// Reorder a lattice-ordered detector array (zero coordinate at index 0,
/// negatives wrapped to the upper half) into monotonic coordinate order.
std::vector<double> fftshift(const std::vector<double>& lattice_ordered);

/// Monotonic detector coordinates matching fftshift output: index s holds
/// (s - n/2) * pitch.
std::vector<double> shifted_coords(int n, double pitch);

/// Relative magnitude of the pattern's Fourier component at the given
/// period (in samples) against its DC component. Pattern must be
/// non-negative with positive total mass.
double fringe_component(const std::vector<double>& pattern, double period_samples);

/// Dominant oscillation period (in samples) of a pattern, via the peak of
/// its DFT magnitude over bins [min_bin, max_bin] with parabolic
/// refinement (max_bin = 0 selects the Nyquist bin n/2).
double dominant_period_samples(const std::vector<double>& pattern, int min_bin,
                               int max_bin = 0);

/// Two-band image contrast of a double-slit reconstruction: mean over the
/// band regions (|x| within the slits) against mean over the central gap.
/// When the whole pattern is consistent with zero (band + gap means below
/// noise_floor) the contrast is reported as 0: no discernible image.
struct BandContrast {
  double band_mean = 0.0;
  double gap_mean = 0.0;
  double contrast = 0.0;
};
BandContrast image_band_contrast(const std::vector<double>& shifted_pattern,
                                 double pitch, double slit_width,
                                 double slit_distance, double noise_floor = 0.0);

/// Positions (fractional indices) of local maxima above threshold_frac of
/// the global maximum, refined by a parabola through the neighbors.
std::vector<double> refined_peaks(const std::vector<double>& pattern,
                                  double threshold_frac);

/// Index of the minimum of |pattern| inside [lo, hi), parabola-refined.
double refined_minimum(const std::vector<double>& pattern, std::size_t lo,
                       std::size_t hi);

} // namespace entim

#endif
