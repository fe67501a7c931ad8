#include "entim/experiment.hpp"

#include "entim/analysis.hpp"
#include "entim/errors.hpp"
#include "entim/version.hpp"
#include "entim/wigner_engine.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace entim {

ExperimentContext::ExperimentContext(RunConfig config) : config_(std::move(config)) {
  config_.validate();
  grid_ = config_.build_grid();
  table_ = gain_functions(config_.crystal, grid_);
  setup_ = config_.build_setup(grid_);
  if (config_.model == SourceModel::pure) {
    // Half photon per mode, scaled by each arm's transfer norm.
    signal_offset_ = 0.5 * setup_.object_mean_square();
    idler_offset_ = 0.5;
  } else {
    signal_offset_ = 0.0;
    idler_offset_ = 0.0;
  }
}

FieldPair ExperimentContext::source_pair(Rng& rng) const {
  switch (config_.model) {
    case SourceModel::pure: {
      FieldPair pair = sample_vacuum(grid_, rng);
      if (config_.engine.engine == EngineConfig::Kind::planewave) {
        pair = apply_planewave_gain(pair, table_);
        to_domain(pair.signal, SpaceDomain::position, TimeDomain::time);
        to_domain(pair.idler, SpaceDomain::position, TimeDomain::time);
        return pair;
      }
      to_domain(pair.signal, SpaceDomain::position, TimeDomain::time);
      to_domain(pair.idler, SpaceDomain::position, TimeDomain::time);
      return propagate_crystal_splitstep(pair, config_.crystal, config_.engine.steps);
    }
    case SourceModel::mixture_w: {
      FieldPair pair = sample_mixture_fields(SourceModel::mixture_w, table_, grid_, rng);
      to_domain(pair.signal, SpaceDomain::position, TimeDomain::time);
      to_domain(pair.idler, SpaceDomain::position, TimeDomain::time);
      return pair;
    }
    case SourceModel::mixture_wprime:
      return sample_mixture_fields(SourceModel::mixture_wprime, table_, grid_, rng);
  }
  throw std::logic_error("unreachable source model");
}

PulseResult ExperimentContext::run_pulse(std::uint64_t pulse_index) const {
  Rng rng = derive_stream(config_.engine.seed, pulse_index);
  FieldPair pair = source_pair(rng);

  Field signal = std::move(pair.signal);
  apply_object(signal, setup_.object);
  signal = propagate_f_f(signal, setup_.focal_length, setup_.lambda);

  Field idler = std::move(pair.idler);
  idler = setup_.z_config == ArmGeometry::focal
              ? propagate_f_f(idler, setup_.focal_length, setup_.lambda)
              : propagate_2f_2f(idler, setup_.focal_length, setup_.lambda);

  const std::vector<double> i_signal = detect(signal, config_.tau_d, signal_offset_);
  const std::vector<double> i_idler = detect(idler, config_.tau_d, idler_offset_);

  PulseResult out;
  const int fixed = setup_.fixed_index();
  if (config_.scheme == Scheme::a) {
    out.array_intensity = i_idler;
    out.point_intensity = i_signal[static_cast<std::size_t>(fixed)];
  } else {
    out.array_intensity = i_signal;
    out.point_intensity = i_idler[static_cast<std::size_t>(fixed)];
  }
  return out;
}

std::vector<double> ExperimentContext::detector_coords() const {
  return shifted_coords(grid_->n_x(), setup_.array_pitch());
}

namespace {

int resolve_workers(const RunConfig& config) {
  int workers = config.workers;
  if (workers <= 0) {
    if (const char* env = std::getenv("ENTIM_WORKERS")) workers = std::atoi(env);
  }
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 0) workers = 1;
  const long pulses = config.engine.pulses;
  if (static_cast<long>(workers) > pulses) workers = static_cast<int>(pulses);
  return workers;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

} // namespace

ExperimentResult run_experiment(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentContext ctx(config);
  const long pulses = config.engine.pulses;
  const int workers = resolve_workers(config);

  std::vector<CorrAccumulator> accumulators;
  accumulators.reserve(workers);
  for (int w = 0; w < workers; ++w)
    accumulators.emplace_back(static_cast<std::size_t>(ctx.grid()->n_x()));

  std::atomic<long> done{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (long p = w; p < pulses; p += workers) {
          if (failed.load(std::memory_order_relaxed)) return;
          const PulseResult r = ctx.run_pulse(static_cast<std::uint64_t>(p));
          accumulators[static_cast<std::size_t>(w)].accumulate(r.array_intensity,
                                                               r.point_intensity);
          done.fetch_add(1, std::memory_order_relaxed);
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure = e.what();
        failed.store(true);
      }
    });
  }

  long last_decile = -1;
  while (done.load() < pulses && !failed.load()) {
    std::this_thread::sleep_for(std::chrono::milliseconds(200));
    const long decile = 10 * done.load() / (pulses > 0 ? pulses : 1);
    if (decile != last_decile && pulses >= 1000) {
      std::fprintf(stderr, "pulses %ld/%ld\n", done.load(), pulses);
      last_decile = decile;
    }
  }
  for (auto& t : threads) t.join();
  if (failed.load()) throw NumericError("pulse loop failed: " + failure);

  CorrAccumulator total = std::move(accumulators.front());
  for (int w = 1; w < workers; ++w) total.merge(accumulators[static_cast<std::size_t>(w)]);
  const CorrAccumulator::Finalized fin = total.finalize();

  ExperimentResult result;
  result.pulses = pulses;
  result.seed = config.engine.seed;
  result.coords = ctx.detector_coords();
  result.g = fftshift(fin.g);
  result.stderr_g = fftshift(fin.stderr_g);
  result.background = fftshift(fin.background);
  result.full_product = fftshift(fin.full_product);
  result.mean_array = fftshift(fin.mean_array);
  result.mean_point = fin.mean_point;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

ExperimentResult run_oracle(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  config.validate();
  const GridPtr grid = config.build_grid();
  const GainTable table = gain_functions(config.crystal, grid);
  const ImagingSetup setup = config.build_setup(grid);
  const std::vector<double> curve = oracle_curve(setup, table, config.model);

  ExperimentResult result;
  result.pulses = 0;
  result.seed = config.engine.seed;
  result.coords = shifted_coords(grid->n_x(), setup.array_pitch());
  result.g = fftshift(curve);
  result.stderr_g.assign(curve.size(), 0.0);
  result.background.assign(curve.size(), 0.0);
  result.full_product.assign(curve.size(), 0.0);
  result.mean_array.assign(curve.size(), 0.0);
  result.mean_point = 0.0;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

void write_curve_csv(const std::string& path, const ExperimentResult& result) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write CSV file: " + path);
  out << "x_m,G,G_stderr,background,mean_I_array,mean_I_point\n";
  for (std::size_t i = 0; i < result.coords.size(); ++i) {
    out << format_double(result.coords[i]) << ',' << format_double(result.g[i]) << ','
        << format_double(result.stderr_g[i]) << ','
        << format_double(result.background[i]) << ','
        << format_double(result.mean_array[i]) << ','
        << format_double(result.mean_point) << '\n';
  }
}

void write_manifest(const std::string& path, const RunConfig& config,
                    double wall_seconds) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write manifest file: " + path);
  out << "# entim run manifest (re-parseable as a config file)\n";
  out << "# version = " << kVersion << "\n";
  out << "# wall_seconds = " << format_double(wall_seconds) << "\n";
  out << echo_config(config);
}

namespace {

RunConfig with_geometry(RunConfig base, SourceModel model, ArmGeometry z) {
  base.model = model;
  base.z_config = z;
  return base;
}

} // namespace

bool DiscriminateReport::all_pass() const {
  for (const auto& row : rows)
    if (!row.pass) return false;
  return !rows.empty();
}

DiscriminateReport run_discriminate(const RunConfig& config) {
  DiscriminateReport report;
  const int n = config.nx;
  // Fringe period in detector samples: (lambda f/d) / (lambda f/(N dx)).
  const double period = static_cast<double>(n) * config.dx / config.slit_distance;

  for (SourceModel model :
       {SourceModel::pure, SourceModel::mixture_w, SourceModel::mixture_wprime}) {
    DiscriminateRow row;
    row.model = model;

    const ExperimentResult far = run_oracle(with_geometry(config, model, ArmGeometry::focal));
    const std::size_t center = far.g.size() / 2;
    const std::size_t half = static_cast<std::size_t>(period) + 1;
    const std::size_t lo = center > half ? center - half : 0;
    const std::size_t hi = center + half < far.g.size() ? center + half : far.g.size();
    row.fringe_visibility = visibility(far.g, lo, hi);
    row.fringe_component_f = fringe_component(far.g, period);

    const ExperimentResult near_field =
        run_oracle(with_geometry(config, model, ArmGeometry::image));
    row.image_contrast = image_band_contrast(near_field.g, config.dx, config.slit_width,
                                             config.slit_distance)
                             .contrast;
    double gmax = near_field.g.front(), gmin = near_field.g.front(), gsum = 0.0;
    for (double v : near_field.g) {
      gmax = v > gmax ? v : gmax;
      gmin = v < gmin ? v : gmin;
      gsum += v;
    }
    const double gmean = gsum / static_cast<double>(near_field.g.size());
    row.image_flatness = gmean > 0.0 ? (gmax - gmin) / gmean : 0.0;

    switch (model) {
      case SourceModel::pure:
        row.pass = row.fringe_visibility > 0.9 && row.image_contrast > 0.9;
        break;
      case SourceModel::mixture_w:
        row.pass = row.fringe_visibility > 0.9 && row.image_contrast < 0.05 &&
                   row.image_flatness <= 1e-10;
        break;
      case SourceModel::mixture_wprime:
        row.pass = row.fringe_component_f < 0.01 && row.image_contrast > 0.9;
        break;
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string format_discriminate(const DiscriminateReport& report) {
  std::ostringstream out;
  out << "model,fringe_visibility,fringe_component_f,image_contrast,image_flatness,pass\n";
  for (const auto& row : report.rows) {
    const char* name = row.model == SourceModel::pure
                           ? "pure"
                           : (row.model == SourceModel::mixture_w ? "W" : "Wprime");
    out << name << ',' << format_double(row.fringe_visibility) << ','
        << format_double(row.fringe_component_f) << ','
        << format_double(row.image_contrast) << ','
        << format_double(row.image_flatness) << ',' << (row.pass ? "yes" : "no")
        << '\n';
  }
  return out.str();
}

StatsSuiteReport run_stats_suite(const RunConfig& config) {
  config.validate();
  StatsSuiteReport report;
  Rng rng(config.engine.seed);

  // Collinear per-mode mean of the configured crystal.
  const GainCoeffs g0 = planewave_gain(config.crystal.delta0, config.crystal.sigma_lc());
  report.mean_n = std::norm(g0.v);

  constexpr long kDraws = 100000;
  std::vector<long> numbers;
  numbers.reserve(kDraws);
  double sum = 0.0, sum2 = 0.0, fact = 0.0;
  for (long i = 0; i < kDraws; ++i) {
    const PairNumbers pn = sample_pair_numbers(report.mean_n, rng);
    const long diff = pn.n_signal - pn.n_idler;
    if (std::abs(diff) > report.max_number_difference)
      report.max_number_difference = std::abs(diff);
    numbers.push_back(pn.n_signal);
    const double x = static_cast<double>(pn.n_signal);
    sum += x;
    sum2 += x * x;
    fact += x * (x - 1.0);
  }
  report.sampler_mean = sum / kDraws;
  report.sampler_variance = sum2 / kDraws - report.sampler_mean * report.sampler_mean;
  report.expected_variance = report.mean_n * (report.mean_n + 1.0);
  report.factorial_moment = fact / kDraws;
  report.expected_factorial = 2.0 * report.mean_n * report.mean_n;
  const double mean_for_pmf = report.mean_n;
  report.pmf_gof = chi2_gof_pmf(numbers, [mean_for_pmf](long k) {
    return thermal_pmf(k, mean_for_pmf);
  });

  // Single-beam Wigner thermal check on a small collinear-tuned lattice.
  CrystalParams flat = config.crystal;
  flat.c_walkoff_q = flat.c_diffr_q = flat.c_gvm_t = flat.c_gvd_t = 0.0;
  const GridPtr grid = make_grid(64, config.dx, 1, config.dt);
  const GainTable table = gain_functions(flat, grid);
  report.wigner_thermal = reduced_beam_is_thermal(table, grid, rng, 1600);

  report.pass = report.max_number_difference == 0 && report.pmf_gof.p_value > 0.01 &&
                report.wigner_thermal.pooled_gof.p_value > 0.01 &&
                report.wigner_thermal.profile_consistent;
  return report;
}

std::string format_stats_suite(const StatsSuiteReport& report) {
  std::ostringstream out;
  out << "metric,value,expected\n";
  out << "mean_n," << format_double(report.sampler_mean) << ','
      << format_double(report.mean_n) << '\n';
  out << "variance," << format_double(report.sampler_variance) << ','
      << format_double(report.expected_variance) << '\n';
  out << "factorial_moment," << format_double(report.factorial_moment) << ','
      << format_double(report.expected_factorial) << '\n';
  out << "max_number_difference," << report.max_number_difference << ",0\n";
  out << "pmf_gof_p," << format_double(report.pmf_gof.p_value) << ",>0.01\n";
  out << "wigner_thermal_p," << format_double(report.wigner_thermal.pooled_gof.p_value)
      << ",>0.01\n";
  out << "wigner_profile_max_z," << format_double(report.wigner_thermal.max_profile_z)
      << ",<5\n";
  out << "pass," << (report.pass ? "yes" : "no") << ",\n";
  return out.str();
}

} // namespace entim
