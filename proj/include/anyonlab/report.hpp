#pragma once
// Run configurations, band/wavefunction/exchange report generation, and
// CSV/JSON export. Output is deterministic: fixed column order, 15
// significant digits, '.' decimal separator, no timestamps.

#include <optional>
#include <string>
#include <vector>

#include "anyonlab/types.hpp"

namespace anyonlab::report {

enum class Format { csv, json };

struct RunConfig {
  std::string model = "calogero";  // calogero | wolfes
  Real g = -0.16;
  std::optional<Real> f;           // wolfes second coupling
  Real omega = 1.0;
  Real a = kPi / 3.0;              // cells map one-to-one onto ordering sectors
  std::vector<int> bands = {0, 1, 2, 3};
  int k_points = 33;
  int grid_points = 256;
  Real eps = 2e-3;                 // oracle matching offset, relative to a
  Format format = Format::csv;
  std::string out;                 // output path
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exit codes shared by every subcommand.
enum ExitCode : int { exit_ok = 0, exit_arbitration = 1, exit_config = 2, exit_io = 3 };

void validate(const RunConfig& cfg);

struct ReportRow {
  int n = 0;
  Real k = 0, lambda = 0, m = 0, E_l0 = 0, theta = 0, p_n0 = 0, oracle_lambda = 0,
       abs_dlambda = 0;
};

// One row per (n, k); k sweeps fan out to workers capped by ANYONLAB_THREADS.
std::vector<ReportRow> band_table(const RunConfig& cfg);

std::string format_real(Real v);  // 15 significant digits, '.' decimal

// Subcommand drivers; each writes cfg.out and returns an ExitCode.
// cmd_wavefunction optionally appends a radial section with the full planar
// eigenfunction Psi(r, phi_probe) for the oscillator level l.
int cmd_bands(const RunConfig& cfg);
int cmd_wavefunction(const RunConfig& cfg, int n, Real k_frac, int cells, int r_points = 0,
                     int l = 0, Real phi_frac = 0.5);
int cmd_exchange(const RunConfig& cfg, const std::vector<Real>& k_fracs);
int cmd_oracle(const RunConfig& cfg);
int cmd_wolfes(const RunConfig& cfg);

}  // namespace anyonlab::report
