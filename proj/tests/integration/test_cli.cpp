// End-to-end checks of the installed CLI binary: exit codes, file
// outputs, determinism across worker counts.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ENTIM_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string small_cfg_text(const std::string& out_dir, int workers) {
  std::ostringstream s;
  s << "nx = 256\ndx = 8e-6\nnt = 1\ndt = 1e-12\n"
    << "sigma = 250.0\nl_c = 4e-3\nlambda = 702e-9\nw_p = 332e-6\ntau_p = 1.5e-12\n"
    << "c_diffr_q = 7.9289193131890201e-10\nc_gvd_t = 2.1778919393789992e-24\n"
    << "seed = 99\npulses = 300\nscheme = a\nz = f\nf = 5e-2\n"
    << "slit_width = 24e-6\nslit_distance = 96e-6\nmodel = pure\ntau_D = 1e-12\n"
    << "out_dir = " << out_dir << "\nworkers = " << workers << "\n";
  return s.str();
}

std::string write_cfg(const std::string& name, const std::string& text) {
  const std::string path = (fs::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << text;
  return path;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

} // namespace

TEST_CASE("cli: run produces the CSV and a re-runnable manifest") {
  const std::string out_dir = (fs::temp_directory_path() / "entim_cli_run").string();
  fs::remove_all(out_dir);
  const std::string cfg = write_cfg("entim_cli_run.cfg", small_cfg_text(out_dir, 2));
  CHECK(run_cli("run --config " + cfg) == 0);

  const auto lines = read_lines(out_dir + "/g_run.csv");
  REQUIRE(lines.size() == 257); // header + one row per pixel
  CHECK(lines[0] == "x_m,G,G_stderr,background,mean_I_array,mean_I_point");

  // Re-run from the manifest: identical CSV.
  const std::string second = out_dir + "_again";
  CHECK(run_cli("run --config " + out_dir + "/manifest.cfg --out " + second) == 0);
  const auto again = read_lines(second + "/g_run.csv");
  REQUIRE(again.size() == lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) CHECK(again[i] == lines[i]);

  fs::remove_all(out_dir);
  fs::remove_all(second);
}

TEST_CASE("cli: worker count does not change the CSV beyond tolerance") {
  const std::string out1 = (fs::temp_directory_path() / "entim_cli_w1").string();
  const std::string out4 = (fs::temp_directory_path() / "entim_cli_w4").string();
  fs::remove_all(out1);
  fs::remove_all(out4);
  const std::string cfg1 = write_cfg("entim_w1.cfg", small_cfg_text(out1, 1));
  const std::string cfg4 = write_cfg("entim_w4.cfg", small_cfg_text(out4, 4));
  CHECK(run_cli("run --config " + cfg1) == 0);
  CHECK(run_cli("run --config " + cfg4) == 0);

  const auto l1 = read_lines(out1 + "/g_run.csv");
  const auto l4 = read_lines(out4 + "/g_run.csv");
  REQUIRE(l1.size() == l4.size());
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 1; i < l1.size(); ++i) {
    std::istringstream a(l1[i]), b(l4[i]);
    std::string cell_a, cell_b;
    std::getline(a, cell_a, ','); // x
    std::getline(b, cell_b, ',');
    std::getline(a, cell_a, ','); // G
    std::getline(b, cell_b, ',');
    const double ga = std::strtod(cell_a.c_str(), nullptr);
    const double gb = std::strtod(cell_b.c_str(), nullptr);
    worst = std::max(worst, std::abs(ga - gb));
    scale = std::max(scale, std::abs(ga));
  }
  CHECK(worst <= 1e-10 * scale);

  fs::remove_all(out1);
  fs::remove_all(out4);
}

TEST_CASE("cli: oracle, discriminate and stats write their tables") {
  const std::string out_dir = (fs::temp_directory_path() / "entim_cli_tables").string();
  fs::remove_all(out_dir);
  const std::string cfg = write_cfg("entim_tables.cfg", small_cfg_text(out_dir, 2));

  CHECK(run_cli("oracle --config " + cfg) == 0);
  CHECK(read_lines(out_dir + "/g_oracle.csv").size() == 257);

  CHECK(run_cli("discriminate --config " + cfg) == 0);
  const auto disc = read_lines(out_dir + "/discriminate.csv");
  REQUIRE(disc.size() == 4); // header + pure/W/Wprime
  CHECK(disc[0].find("model,") == 0);

  CHECK(run_cli("stats --config " + cfg) == 0);
  CHECK(!read_lines(out_dir + "/stats.csv").empty());

  fs::remove_all(out_dir);
}

TEST_CASE("cli: exit codes") {
  // Missing file -> CLI11 usage error (not 0, not 2).
  CHECK(run_cli("run --config /nonexistent.cfg") != 0);

  // Config error -> exit 1.
  const std::string bad = write_cfg("entim_bad.cfg", "nx = 7\n");
  CHECK(run_cli("run --config " + bad) == 1);

  // Numeric failure (gain overflow) -> exit 2.
  std::string text = small_cfg_text((fs::temp_directory_path() / "x").string(), 1);
  const auto pos = text.find("sigma = 250.0");
  text.replace(pos, 13, "sigma = 2.5e5");
  const std::string numeric = write_cfg("entim_numeric.cfg", text);
  CHECK(run_cli("run --config " + numeric) == 2);

  // --pulses override validation.
  const std::string ok = write_cfg(
      "entim_ok.cfg",
      small_cfg_text((fs::temp_directory_path() / "entim_ok_out").string(), 1));
  CHECK(run_cli("run --config " + ok + " --pulses 0") == 1);
}
