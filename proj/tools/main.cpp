// anyonlab: band structure, wavefunctions and exchange statistics of the
// three-body inverse-square model in the attractive window -1/4 < g < 0.
//
// Subcommands: bands | wavefunction | exchange | oracle | wolfes.
// Wave numbers on the command line are given as fractions of pi/a.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anyonlab/report.hpp"

namespace {

using anyonlab::Real;
using anyonlab::report::ConfigError;
using anyonlab::report::Format;
using anyonlab::report::RunConfig;

// key=value file with '#' comments; provides defaults, flags override
void apply_config_file(const std::string& path, RunConfig& cfg, std::string& format) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    try {
      if (key == "model") cfg.model = value;
      else if (key == "g") cfg.g = std::stod(value);
      else if (key == "f") cfg.f = std::stod(value);
      else if (key == "omega") cfg.omega = std::stod(value);
      else if (key == "a") cfg.a = std::stod(value);
      else if (key == "k_points") cfg.k_points = std::stoi(value);
      else if (key == "grid_points") cfg.grid_points = std::stoi(value);
      else if (key == "eps") cfg.eps = std::stod(value);
      else if (key == "format") format = value;
      else if (key == "out") cfg.out = value;
      else if (key == "bands") {
        cfg.bands.clear();
        std::istringstream bs(value);
        std::string tok;
        while (std::getline(bs, tok, ',')) cfg.bands.push_back(std::stoi(tok));
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError("bad value for config key '" + key + "': " + value);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string format = "csv";

  // config file first, so that flags parsed below override its values
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        apply_config_file(argv[i + 1], cfg, format);
      } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return anyonlab::report::exit_config;
      }
    }
  }

  CLI::App app{"exact band structure and fractional exchange statistics of the "
               "three-body inverse-square model"};
  app.require_subcommand(1);

  Real f_val = -0.2;
  std::string config_path;
  int wf_n = 0, wf_cells = 2, wf_rpoints = 0, wf_l = 0;
  Real wf_k = 0.5, wf_phi = 0.5;
  std::vector<Real> k_list{0.0, 0.25, 0.5, 0.75, 1.0};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value config file (flags override)");
    sub->add_option("--g", cfg.g, "pair coupling, -1/4 < g < 0");
    sub->add_option("--f", f_val, "second coupling (wolfes), -1/4 < f < 0");
    sub->add_option("--omega", cfg.omega, "oscillator frequency");
    sub->add_option("--a", cfg.a, "lattice period (default pi/3)");
    sub->add_option("--bands", cfg.bands, "band indices")->delimiter(',');
    sub->add_option("--k-points", cfg.k_points, "points per k sweep");
    sub->add_option("--grid", cfg.grid_points, "samples per cell");
    sub->add_option("--eps", cfg.eps, "oracle matching offset / a");
    sub->add_option("--format", format, "csv | json");
    sub->add_option("--out", cfg.out, "output file");
  };

  auto* bands = app.add_subcommand("bands", "dispersion table with oracle cross-check");
  add_common(bands);

  auto* wf = app.add_subcommand("wavefunction", "sample a Bloch eigenfunction");
  add_common(wf);
  wf->add_option("--n", wf_n, "band index");
  wf->add_option("--k", wf_k, "wave number as a fraction of pi/a");
  wf->add_option("--cells", wf_cells, "number of lattice cells to sample");
  wf->add_option("--r-points", wf_rpoints, "also sample Psi(r, phi) on this many radii");
  wf->add_option("--l", wf_l, "oscillator level for the radial section");
  wf->add_option("--phi", wf_phi, "angular probe as a fraction of pi/3");

  auto* ex = app.add_subcommand("exchange", "exchange phases and momentum ladder");
  add_common(ex);
  ex->add_option("--k-list", k_list, "wave numbers as fractions of pi/a")->delimiter(',');

  auto* orc = app.add_subcommand("oracle", "analytic vs numerical dispersion");
  add_common(orc);

  auto* wol = app.add_subcommand("wolfes", "two-pole extension: edges and dispersion");
  add_common(wol);

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--f") > 0) cfg.f = f_val;
  else if (sub == wol && !cfg.f) cfg.f = f_val;
  cfg.format = (format == "json") ? Format::json : Format::csv;

  if (bands->parsed()) return anyonlab::report::cmd_bands(cfg);
  if (wf->parsed())
    return anyonlab::report::cmd_wavefunction(cfg, wf_n, wf_k, wf_cells, wf_rpoints, wf_l, wf_phi);
  if (ex->parsed()) return anyonlab::report::cmd_exchange(cfg, k_list);
  if (orc->parsed()) return anyonlab::report::cmd_oracle(cfg);
  if (wol->parsed()) {
    cfg.model = "wolfes";
    return anyonlab::report::cmd_wolfes(cfg);
  }
  return anyonlab::report::exit_config;
}
