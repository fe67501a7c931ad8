#ifndef ENTIM_CONFIG_HPP
#define ENTIM_CONFIG_HPP

#include "entim/gain.hpp"
#include "entim/optics.hpp"
#include "entim/reference_models.hpp"
#include "entim/wigner_engine.hpp"

#include <string>

namespace entim {

/// Full experiment description, parsed from a flat "key = value" file
/// (one pair per line, '#' comments, SI units, '.' decimal). Unknown and
/// duplicate keys are rejected with line numbers; every value is range-
/// checked against its module's preconditions before a run starts.
struct RunConfig {
  // grid
  int nx = 1024;
  double dx = 4e-6;
  int nt = 64;
  double dt = 0.05e-12;
  // crystal and pump
  CrystalParams crystal;
  // engine
  EngineConfig engine;
  // imaging bench
  Scheme scheme = Scheme::a;
  ArmGeometry z_config = ArmGeometry::focal;
  double focal_length = 5e-2;
  double slit_width = 17e-6;
  double slit_distance = 104e-6;
  std::string object_file; // overrides the double slit when non-empty
  double fixed_point = 0.0;
  // source and detection
  SourceModel model = SourceModel::pure;
  double tau_d = 1.5e-12;
  // run control
  std::string out_dir = ".";
  int workers = 0; // 0: use ENTIM_WORKERS or hardware concurrency

  GridPtr build_grid() const;
  ImagingSetup build_setup(const GridPtr& grid) const;
  void validate() const;
};

/// Parse config text; error messages carry 1-based line numbers and the
/// offending key.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Re-parseable echo of a config (every key, full precision). Feeding the
/// echo back through parse_config reproduces the configuration exactly.
std::string echo_config(const RunConfig& config);

} // namespace entim

#endif
