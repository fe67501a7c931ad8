#include "entim/config.hpp"

#include "entim/errors.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace entim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct RawEntry {
  std::string value;
  std::size_t line = 0;
};

double parse_double(const std::string& key, const RawEntry& e) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + key +
                      "' has a malformed numeric value '" + e.value + "'");
  return v;
}

long long parse_int(const std::string& key, const RawEntry& e) {
  long long v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + key +
                      "' has a malformed integer value '" + e.value + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const RawEntry& e) {
  std::uint64_t v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + key +
                      "' has a malformed unsigned value '" + e.value + "'");
  return v;
}

// Shortest round-trip decimal representation.
std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

const char* const kKnownKeys[] = {
    "nx",        "dx",          "nt",          "dt",          "sigma",
    "l_c",       "delta0",      "c_walkoff_q", "c_diffr_q",   "c_gvm_t",
    "c_gvd_t",   "lambda",      "w_p",         "tau_p",       "engine",
    "steps",     "seed",        "pulses",      "scheme",      "z",
    "f",         "slit_width",  "slit_distance", "object_file", "fixed_point",
    "model",     "tau_D",       "out_dir",     "workers",
};

bool known_key(const std::string& key) {
  for (const char* k : kKnownKeys)
    if (key == k) return true;
  return false;
}

} // namespace

RunConfig parse_config(const std::string& text) {
  std::map<std::string, RawEntry> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    if (!known_key(key))
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    const auto [it, inserted] = entries.emplace(key, RawEntry{value, line_no});
    if (!inserted)
      throw ConfigError("duplicate key '" + key + "' on lines " +
                        std::to_string(it->second.line) + " and " +
                        std::to_string(line_no));
  }

  RunConfig c;
  const auto get = [&](const char* key) -> const RawEntry* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  const auto require = [&](const char* key) -> const RawEntry& {
    const RawEntry* e = get(key);
    if (!e) throw ConfigError(std::string("missing required key '") + key + "'");
    return *e;
  };

  c.nx = static_cast<int>(parse_int("nx", require("nx")));
  c.dx = parse_double("dx", require("dx"));
  c.nt = static_cast<int>(parse_int("nt", require("nt")));
  c.dt = parse_double("dt", require("dt"));

  c.crystal.sigma = parse_double("sigma", require("sigma"));
  c.crystal.l_c = parse_double("l_c", require("l_c"));
  c.crystal.w_p = parse_double("w_p", require("w_p"));
  c.crystal.tau_p = parse_double("tau_p", require("tau_p"));
  c.crystal.lambda = parse_double("lambda", require("lambda"));
  if (const RawEntry* e = get("delta0")) c.crystal.delta0 = parse_double("delta0", *e);
  if (const RawEntry* e = get("c_walkoff_q"))
    c.crystal.c_walkoff_q = parse_double("c_walkoff_q", *e);
  if (const RawEntry* e = get("c_diffr_q"))
    c.crystal.c_diffr_q = parse_double("c_diffr_q", *e);
  if (const RawEntry* e = get("c_gvm_t")) c.crystal.c_gvm_t = parse_double("c_gvm_t", *e);
  if (const RawEntry* e = get("c_gvd_t")) c.crystal.c_gvd_t = parse_double("c_gvd_t", *e);

  if (const RawEntry* e = get("engine")) {
    if (e->value == "planewave")
      c.engine.engine = EngineConfig::Kind::planewave;
    else if (e->value == "finitepump")
      c.engine.engine = EngineConfig::Kind::finite_pump;
    else
      throw ConfigError("line " + std::to_string(e->line) +
                        ": engine must be 'planewave' or 'finitepump'");
  }
  if (const RawEntry* e = get("steps"))
    c.engine.steps = static_cast<int>(parse_int("steps", *e));
  c.engine.seed = parse_u64("seed", require("seed"));
  {
    const RawEntry& e = require("pulses");
    const long long pulses = parse_int("pulses", e);
    if (pulses < 1)
      throw ConfigError("line " + std::to_string(e.line) + ": key 'pulses' must be >= 1");
    c.engine.pulses = static_cast<long>(pulses);
  }

  {
    const RawEntry& e = require("scheme");
    if (e.value == "a")
      c.scheme = Scheme::a;
    else if (e.value == "b")
      c.scheme = Scheme::b;
    else
      throw ConfigError("line " + std::to_string(e.line) + ": scheme must be 'a' or 'b'");
  }
  {
    const RawEntry& e = require("z");
    if (e.value == "f")
      c.z_config = ArmGeometry::focal;
    else if (e.value == "2f")
      c.z_config = ArmGeometry::image;
    else
      throw ConfigError("line " + std::to_string(e.line) + ": z must be 'f' or '2f'");
  }
  c.focal_length = parse_double("f", require("f"));
  if (const RawEntry* e = get("slit_width"))
    c.slit_width = parse_double("slit_width", *e);
  if (const RawEntry* e = get("slit_distance"))
    c.slit_distance = parse_double("slit_distance", *e);
  if (const RawEntry* e = get("object_file")) c.object_file = e->value;
  if (const RawEntry* e = get("fixed_point"))
    c.fixed_point = parse_double("fixed_point", *e);

  {
    const RawEntry& e = require("model");
    if (e.value == "pure")
      c.model = SourceModel::pure;
    else if (e.value == "W")
      c.model = SourceModel::mixture_w;
    else if (e.value == "Wprime")
      c.model = SourceModel::mixture_wprime;
    else
      throw ConfigError("line " + std::to_string(e.line) +
                        ": model must be 'pure', 'W' or 'Wprime'");
  }
  c.tau_d = parse_double("tau_D", require("tau_D"));
  if (const RawEntry* e = get("out_dir")) c.out_dir = e->value;
  if (const RawEntry* e = get("workers"))
    c.workers = static_cast<int>(parse_int("workers", *e));

  c.validate();
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

GridPtr RunConfig::build_grid() const { return make_grid(nx, dx, nt, dt); }

ImagingSetup RunConfig::build_setup(const GridPtr& grid) const {
  ImagingSetup s;
  s.scheme = scheme;
  s.z_config = z_config;
  s.focal_length = focal_length;
  s.lambda = crystal.lambda;
  s.grid = grid;
  s.object = object_file.empty() ? double_slit(*grid, slit_width, slit_distance)
                                 : load_object_profile(object_file, *grid);
  s.fixed_point = fixed_point;
  s.validate();
  return s;
}

void RunConfig::validate() const {
  const auto wrap = [](const char* key, const auto& fn) {
    try {
      fn();
    } catch (const ConfigError& err) {
      throw ConfigError(std::string("key '") + key + "': " + err.what());
    }
  };
  wrap("nx/dx/nt/dt", [&] { build_grid(); });
  wrap("sigma/l_c/w_p/tau_p/lambda", [&] { crystal.validate(); });
  wrap("engine/steps/pulses", [&] { engine.validate(); });
  const GridPtr grid = build_grid();
  wrap("slit_width/slit_distance/object_file/fixed_point/f",
       [&] { build_setup(grid); });
  wrap("tau_D", [&] {
    if (!(tau_d > 0.0)) throw ConfigError("tau_D must be positive");
    if (tau_d > grid->time_window() * (1.0 + 1e-9))
      throw ConfigError("tau_D exceeds the grid time window");
  });
  if (workers < 0) throw ConfigError("key 'workers': must be >= 0");
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream out;
  out << "nx = " << c.nx << "\n";
  out << "dx = " << format_double(c.dx) << "\n";
  out << "nt = " << c.nt << "\n";
  out << "dt = " << format_double(c.dt) << "\n";
  out << "sigma = " << format_double(c.crystal.sigma) << "\n";
  out << "l_c = " << format_double(c.crystal.l_c) << "\n";
  out << "delta0 = " << format_double(c.crystal.delta0) << "\n";
  out << "c_walkoff_q = " << format_double(c.crystal.c_walkoff_q) << "\n";
  out << "c_diffr_q = " << format_double(c.crystal.c_diffr_q) << "\n";
  out << "c_gvm_t = " << format_double(c.crystal.c_gvm_t) << "\n";
  out << "c_gvd_t = " << format_double(c.crystal.c_gvd_t) << "\n";
  out << "lambda = " << format_double(c.crystal.lambda) << "\n";
  out << "w_p = " << format_double(c.crystal.w_p) << "\n";
  out << "tau_p = " << format_double(c.crystal.tau_p) << "\n";
  out << "engine = "
      << (c.engine.engine == EngineConfig::Kind::planewave ? "planewave" : "finitepump")
      << "\n";
  out << "steps = " << c.engine.steps << "\n";
  out << "seed = " << c.engine.seed << "\n";
  out << "pulses = " << c.engine.pulses << "\n";
  out << "scheme = " << (c.scheme == Scheme::a ? "a" : "b") << "\n";
  out << "z = " << (c.z_config == ArmGeometry::focal ? "f" : "2f") << "\n";
  out << "f = " << format_double(c.focal_length) << "\n";
  out << "slit_width = " << format_double(c.slit_width) << "\n";
  out << "slit_distance = " << format_double(c.slit_distance) << "\n";
  if (!c.object_file.empty()) out << "object_file = " << c.object_file << "\n";
  out << "fixed_point = " << format_double(c.fixed_point) << "\n";
  out << "model = "
      << (c.model == SourceModel::pure
              ? "pure"
              : (c.model == SourceModel::mixture_w ? "W" : "Wprime"))
      << "\n";
  out << "tau_D = " << format_double(c.tau_d) << "\n";
  out << "out_dir = " << c.out_dir << "\n";
  out << "workers = " << c.workers << "\n";
  return out.str();
}

} // namespace entim
