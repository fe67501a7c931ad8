#ifndef ENTIM_CORRELATOR_HPP
#define ENTIM_CORRELATOR_HPP

#include "entim/grid.hpp"

#include <vector>

namespace entim {

/// Detection-time average of the W-intensity |alpha(x, t)|^2 over the
/// central tau_d window, per detector pixel, minus a constant vacuum
/// offset. For quantum (Wigner) runs the offset is the half photon per
/// mode scaled by the arm's transfer norm (1/2 for a lossless arm,
/// (1/2)(1/N) sum |T|^2 behind an object); classical mixture runs pass 0.
/// The offset is a mean-level calibration only; fluctuation covariances
/// across beams need no correction.
std::vector<double> detect(const Field& field, double tau_d, double vacuum_offset);

/// Mergeable running statistics for the intensity correlation of one
/// detector array against one point detector. Per pulse it ingests the
/// array intensities a(x) and the point intensity b, and accumulates the
/// moment sums needed for the covariance estimate
///   G(x) = [ <ab> - <a><b> ] * n/(n-1)
/// and for its exact delete-one jackknife standard error (the jackknife
/// pseudovalues are quadratic in (a, b), so sums up to a^2 b^2 suffice).
/// Merging adds the sums; finalize is invariant under any merge tree to
/// floating-point tolerance.
class CorrAccumulator {
public:
  CorrAccumulator() = default;
  explicit CorrAccumulator(std::size_t n_pixels);

  void accumulate(const std::vector<double>& array_intensity, double point_intensity);
  void merge(const CorrAccumulator& other);

  long count() const { return count_; }
  std::size_t pixels() const { return sum_a_.size(); }

  struct Finalized {
    std::vector<double> g;          // covariance of fluctuations
    std::vector<double> stderr_g;   // delete-one jackknife standard error
    std::vector<double> background; // <a><b>, the first term of the product
    std::vector<double> full_product; // <ab> = g/bias + background
    std::vector<double> mean_array;
    double mean_point = 0.0;
    long count = 0;
  };
  /// Throws StatsError when fewer than 2 pulses were accumulated.
  Finalized finalize() const;

private:
  long count_ = 0;
  std::vector<double> sum_a_, sum_ab_, sum_a2_, sum_a2b_, sum_ab2_, sum_a2b2_;
  double sum_b_ = 0.0, sum_b2_ = 0.0;
};

/// (max - min)/(max + min) over pattern[lo, hi). Throws StatsError for an
/// empty window or a pattern with max <= 0.
double visibility(const std::vector<double>& pattern, std::size_t lo, std::size_t hi);
double visibility(const std::vector<double>& pattern);

} // namespace entim

#endif
