#ifndef ENTIM_EXPERIMENT_HPP
#define ENTIM_EXPERIMENT_HPP

#include "entim/config.hpp"
#include "entim/correlator.hpp"
#include "entim/photon_statistics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace entim {

/// Detected intensities of one pulse: the array arm per pixel (lattice
/// order) and the point detector value.
struct PulseResult {
  std::vector<double> array_intensity;
  double point_intensity = 0.0;
};

/// Immutable per-run state (grid, gain table, bench, offsets). run_pulse
/// is pure given the pulse index, so distinct indices may run on any
/// worker in any order; the random stream is derived from
/// (seed, pulse_index) and results are bit-identical per index.
class ExperimentContext {
public:
  explicit ExperimentContext(RunConfig config);

  const RunConfig& config() const { return config_; }
  const GridPtr& grid() const { return grid_; }
  const GainTable& table() const { return table_; }
  const ImagingSetup& setup() const { return setup_; }

  PulseResult run_pulse(std::uint64_t pulse_index) const;

  /// Monotonic detector coordinates of the array arm (m).
  std::vector<double> detector_coords() const;

private:
  FieldPair source_pair(Rng& rng) const;

  RunConfig config_;
  GridPtr grid_;
  GainTable table_;
  ImagingSetup setup_;
  double signal_offset_ = 0.5;
  double idler_offset_ = 0.5;
};

struct ExperimentResult {
  long pulses = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::vector<double> coords; // monotonic, m
  // Curves in monotonic coordinate order:
  std::vector<double> g, stderr_g, background, full_product, mean_array;
  double mean_point = 0.0;
};

/// Pulse loop with worker-local accumulators merged in worker order.
/// Worker count: config.workers, else ENTIM_WORKERS, else hardware.
ExperimentResult run_experiment(const RunConfig& config);

/// Quadrature oracle curve for the configured model, monotonic order.
ExperimentResult run_oracle(const RunConfig& config);

/// CSV schema: header x_m,G,G_stderr,background,mean_I_array,mean_I_point;
/// one row per detector pixel, '.' decimal, shortest round-trip numbers.
void write_curve_csv(const std::string& path, const ExperimentResult& result);

/// Config echo preceded by '#' header lines (version, seed, wall time).
/// The manifest is itself a valid config file; re-running from it
/// reproduces the CSV.
void write_manifest(const std::string& path, const RunConfig& config,
                    double wall_seconds);

/// The six-way source-vs-geometry matrix evaluated with the quadrature
/// oracles, with the contrast metrics and their pass/fail classification.
struct DiscriminateRow {
  SourceModel model = SourceModel::pure;
  double fringe_visibility = 0.0; // z=f, central window
  double fringe_component_f = 0.0; // z=f, fringe-frequency weight
  double image_contrast = 0.0;    // z=2f band contrast
  double image_flatness = 0.0;    // z=2f (max-min)/mean
  bool pass = false;
};

struct DiscriminateReport {
  std::vector<DiscriminateRow> rows;
  bool all_pass() const;
};

DiscriminateReport run_discriminate(const RunConfig& config);
std::string format_discriminate(const DiscriminateReport& report);

/// Photon-statistics suite: direct sampler moments and GOF against the
/// thermal law, plus the single-beam Wigner thermal check.
struct StatsSuiteReport {
  double mean_n = 0.0;            // per-mode mean at collinear tuning
  double sampler_mean = 0.0;
  double sampler_variance = 0.0;
  double expected_variance = 0.0; // <n>(<n>+1)
  double factorial_moment = 0.0;  // <n(n-1)> estimate
  double expected_factorial = 0.0; // 2<n>^2
  long max_number_difference = 0; // sub-shot-noise signature: exactly 0
  GofResult pmf_gof;
  ThermalTestReport wigner_thermal;
  bool pass = false;
};

StatsSuiteReport run_stats_suite(const RunConfig& config);
std::string format_stats_suite(const StatsSuiteReport& report);

} // namespace entim

#endif
