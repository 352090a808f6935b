#include "anyonlab/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "anyonlab/exchange.hpp"
#include "anyonlab/oracle.hpp"
#include "anyonlab/radial.hpp"
#include "anyonlab/scarf.hpp"
#include "anyonlab/wolfes.hpp"

namespace anyonlab::report {

using nlohmann::json;

std::string format_real(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void validate(const RunConfig& cfg) {
  if (cfg.model != "calogero" && cfg.model != "wolfes")
    throw ConfigError("model: must be 'calogero' or 'wolfes'");
  if (!(cfg.g > -0.25 && cfg.g < 0.0))
    throw ConfigError("g: band window requires -1/4 < g < 0");
  if (cfg.model == "wolfes") {
    if (!cfg.f) throw ConfigError("f: required for the wolfes model");
    if (!(*cfg.f > -0.25 && *cfg.f < 0.0))
      throw ConfigError("f: band window requires -1/4 < f < 0");
  }
  if (!(cfg.omega > 0)) throw ConfigError("omega: must be positive");
  if (!(cfg.a > 0)) throw ConfigError("a: must be positive");
  if (cfg.bands.empty()) throw ConfigError("bands: at least one band index");
  for (int n : cfg.bands)
    if (n < 0) throw ConfigError("bands: indices must be non-negative");
  if (cfg.k_points < 2) throw ConfigError("k_points: at least 2");
  if (cfg.grid_points < 32) throw ConfigError("grid_points: at least 32");
  if (!(cfg.eps > 0 && cfg.eps < 0.1)) throw ConfigError("eps: must lie in (0, 0.1)");
  if (cfg.out.empty()) throw ConfigError("out: output path required");
}

namespace {

int worker_count(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("ANYONLAB_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<int>(std::min<std::size_t>(n, jobs));
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const int workers = worker_count(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  if (!out) throw IoError("write failure: " + path);
}

std::string rows_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "n,k,lambda,m,E_l0,theta,p_n0,oracle_lambda,abs_dlambda\n";
  for (const auto& r : rows) {
    os << r.n << ',' << format_real(r.k) << ',' << format_real(r.lambda) << ','
       << format_real(r.m) << ',' << format_real(r.E_l0) << ',' << format_real(r.theta) << ','
       << format_real(r.p_n0) << ',' << format_real(r.oracle_lambda) << ','
       << format_real(r.abs_dlambda) << '\n';
  }
  return os.str();
}

json row_json(const ReportRow& r) {
  return json{{"n", r.n},          {"k", r.k},           {"lambda", r.lambda},
              {"m", r.m},          {"E_l0", r.E_l0},     {"theta", r.theta},
              {"p_n0", r.p_n0},    {"oracle_lambda", r.oracle_lambda},
              {"abs_dlambda", r.abs_dlambda}};
}

json config_json(const RunConfig& cfg) {
  json j{{"model", cfg.model}, {"g", cfg.g},           {"omega", cfg.omega},
         {"a", cfg.a},         {"bands", cfg.bands},   {"k_points", cfg.k_points},
         {"grid_points", cfg.grid_points}, {"eps", cfg.eps}};
  if (cfg.f) j["f"] = *cfg.f;
  return j;
}

int run_guarded(const RunConfig& cfg, const std::function<int()>& body) {
  try {
    validate(cfg);
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return exit_io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_arbitration;
  }
}

}  // namespace

std::vector<ReportRow> band_table(const RunConfig& cfg) {
  const auto params = scarf::scarf_from_coupling(cfg.g, cfg.a);
  oracle::Options opt;
  opt.eps_rel = cfg.eps;

  std::vector<std::pair<int, Real>> points;
  for (int n : cfg.bands)
    for (int i = 0; i < cfg.k_points; ++i)
      points.emplace_back(n, (kPi / cfg.a) * i / (cfg.k_points - 1));

  std::vector<ReportRow> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const auto [n, k] = points[i];
    const auto pt = scarf::dispersion_lambda(params, n, k);
    ReportRow r;
    r.n = n;
    r.k = k;
    r.lambda = pt.lambda;
    r.m = pt.m;
    r.E_l0 = radial::energy(radial::radial_from_band(pt, cfg.omega, 0));
    r.theta = exchange::exchange_phase(k, cfg.a, {1, 2}).theta;
    r.p_n0 = exchange::momentum(k, cfg.a, 0);
    r.oracle_lambda = oracle::numerical_dispersion(params, n, k, opt);
    r.abs_dlambda = std::abs(r.lambda - r.oracle_lambda);
    rows[i] = r;
  });
  return rows;
}

int cmd_bands(const RunConfig& cfg) {
  return run_guarded(cfg, [&] {
    const auto rows = band_table(cfg);
    if (cfg.format == Format::csv) {
      write_file(cfg.out, rows_csv(rows));
    } else {
      json j{{"config", config_json(cfg)}, {"rows", json::array()}};
      for (const auto& r : rows) j["rows"].push_back(row_json(r));
      write_file(cfg.out, j.dump(2) + "\n");
    }
    Real worst = 0;
    for (const auto& r : rows) worst = std::max(worst, r.abs_dlambda);
    if (worst > 1e-6) {
      std::cerr << "numerical arbitration failure: max |lambda - oracle| = " << worst << "\n";
      for (const auto& r : rows)
        if (r.abs_dlambda > 1e-6)
          std::cerr << "  n=" << r.n << " k=" << format_real(r.k)
                    << " analytic=" << format_real(r.lambda)
                    << " oracle=" << format_real(r.oracle_lambda) << "\n";
      return static_cast<int>(exit_arbitration);
    }
    return static_cast<int>(exit_ok);
  });
}

int cmd_wavefunction(const RunConfig& cfg, int n, Real k_frac, int cells, int r_points, int l,
                     Real phi_frac) {
  return run_guarded(cfg, [&] {
    if (n < 0) throw ConfigError("n: band index must be non-negative");
    if (k_frac < 0 || k_frac > 1) throw ConfigError("k: fraction of pi/a must lie in [0, 1]");
    if (cells < 1) throw ConfigError("cells: at least 1");
    if (r_points < 0 || l < 0) throw ConfigError("r-points and l must be non-negative");
    if (phi_frac <= 0 || phi_frac >= 1) throw ConfigError("phi: fraction of pi/3 in (0, 1)");
    const auto params = scarf::scarf_from_coupling(cfg.g, cfg.a);
    const Real k = k_frac * kPi / cfg.a;
    const scarf::BlochSolution sol(params, scarf::dispersion_lambda(params, n, k));

    const int total = cfg.grid_points * cells;
    ArrayX xs(total);
    ArrayXc vals(total);
    for (int i = 0; i < total; ++i) {
      // interior sampling, away from the lattice singularities
      const Real frac = (i % cfg.grid_points + 0.5) / cfg.grid_points;
      xs(i) = (i / cfg.grid_points) * cfg.a + (0.02 + 0.96 * frac) * cfg.a;
      vals(i) = sol.evaluate(xs(i));
    }
    ArrayX probe = ArrayX::LinSpaced(24, 0.1 * cfg.a, 0.9 * cfg.a);
    oracle::Options opt;
    opt.eps_rel = cfg.eps;
    const Real deviation = oracle::check_bloch(sol, probe, opt);

    // optional radial section: Psi(r, phi_probe) for oscillator level l
    ArrayX rs;
    ArrayXc psi;
    radial::RadialState rad{};
    if (r_points > 0) {
      rad = radial::radial_from_band(sol.point(), cfg.omega, l);
      rs = ArrayX::LinSpaced(r_points, 0.0, 5.0 / std::sqrt(cfg.omega));
      psi.resize(r_points);
      const Real phi = phi_frac * kPi / 3.0;
      for (int i = 0; i < r_points; ++i)
        psi(i) = radial::full_wavefunction(rad, sol, rs(i), phi);
    }

    if (cfg.format == Format::csv) {
      std::ostringstream os;
      os << "x,re_K,im_K,abs_K\n";
      for (int i = 0; i < total; ++i)
        os << format_real(xs(i)) << ',' << format_real(vals(i).real()) << ','
           << format_real(vals(i).imag()) << ',' << format_real(std::abs(vals(i))) << '\n';
      os << "# bloch_deviation=" << format_real(deviation) << "\n";
      if (r_points > 0) {
        os << "\nr,re_psi,im_psi,abs_psi\n";
        for (int i = 0; i < r_points; ++i)
          os << format_real(rs(i)) << ',' << format_real(psi(i).real()) << ','
             << format_real(psi(i).imag()) << ',' << format_real(std::abs(psi(i))) << '\n';
        os << "# E=" << format_real(radial::energy(rad)) << "\n";
      }
      write_file(cfg.out, os.str());
    } else {
      json j{{"config", config_json(cfg)},
             {"n", n},
             {"k", k},
             {"bloch_deviation", deviation},
             {"samples", json::array()}};
      for (int i = 0; i < total; ++i)
        j["samples"].push_back(json{{"x", xs(i)},
                                    {"re", vals(i).real()},
                                    {"im", vals(i).imag()},
                                    {"abs", std::abs(vals(i))}});
      if (r_points > 0) {
        j["E"] = radial::energy(rad);
        j["psi"] = json::array();
        for (int i = 0; i < r_points; ++i)
          j["psi"].push_back(json{{"r", rs(i)},
                                  {"re", psi(i).real()},
                                  {"im", psi(i).imag()},
                                  {"abs", std::abs(psi(i))}});
      }
      write_file(cfg.out, j.dump(2) + "\n");
    }
    return static_cast<int>(deviation <= 1e-8 ? exit_ok : exit_arbitration);
  });
}

int cmd_exchange(const RunConfig& cfg, const std::vector<Real>& k_fracs) {
  return run_guarded(cfg, [&] {
    if (k_fracs.empty()) throw ConfigError("k-list: at least one value");
    for (Real f : k_fracs)
      if (f < 0 || f > 1) throw ConfigError("k-list: fractions of pi/a must lie in [0, 1]");
    const auto params = scarf::scarf_from_coupling(cfg.g, cfg.a);

    struct Row {
      Real k, theta, theta_measured;
      std::string cls;
      Real p0, p1, p2;
    };
    std::vector<Row> rows(k_fracs.size());
    Real worst = 0;
    for (std::size_t i = 0; i < k_fracs.size(); ++i) {
      const Real k = k_fracs[i] * kPi / cfg.a;
      const auto rep = exchange::exchange_phase(k, cfg.a, {1, 2});
      const scarf::BlochSolution sol(params, scarf::dispersion_lambda(params, 0, k));
      const Real measured = exchange::measured_exchange_phase(sol, 0.37 * cfg.a);
      const char* cls = rep.classification == exchange::Statistics::bosonic ? "bosonic"
                        : rep.classification == exchange::Statistics::fermionic ? "fermionic"
                                                                                : "anyonic";
      rows[i] = {k, rep.theta, measured, cls, exchange::momentum(k, cfg.a, 0),
                 exchange::momentum(k, cfg.a, 1), exchange::momentum(k, cfg.a, 2)};
      Real diff = std::abs(measured - rep.theta);
      diff = std::min(diff, 2.0 * kPi - diff);
      worst = std::max(worst, diff);
    }

    if (cfg.format == Format::csv) {
      std::ostringstream os;
      os << "k,theta,theta_measured,classification,p_n0,p_n1,p_n2\n";
      for (const auto& r : rows)
        os << format_real(r.k) << ',' << format_real(r.theta) << ','
           << format_real(r.theta_measured) << ',' << r.cls << ',' << format_real(r.p0) << ','
           << format_real(r.p1) << ',' << format_real(r.p2) << '\n';
      write_file(cfg.out, os.str());
    } else {
      json j{{"config", config_json(cfg)}, {"rows", json::array()}};
      for (const auto& r : rows)
        j["rows"].push_back(json{{"k", r.k},
                                 {"theta", r.theta},
                                 {"theta_measured", r.theta_measured},
                                 {"classification", r.cls},
                                 {"p_n0", r.p0},
                                 {"p_n1", r.p1},
                                 {"p_n2", r.p2}});
      write_file(cfg.out, j.dump(2) + "\n");
    }
    return static_cast<int>(worst <= 1e-8 ? exit_ok : exit_arbitration);
  });
}

int cmd_oracle(const RunConfig& cfg) {
  return run_guarded(cfg, [&] {
    const auto rows = band_table(cfg);
    std::ostringstream os;
    os << "n,k,lambda_analytic,lambda_oracle,abs_dlambda\n";
    for (const auto& r : rows)
      os << r.n << ',' << format_real(r.k) << ',' << format_real(r.lambda) << ','
         << format_real(r.oracle_lambda) << ',' << format_real(r.abs_dlambda) << '\n';
    if (cfg.format == Format::csv) {
      write_file(cfg.out, os.str());
    } else {
      json j{{"config", config_json(cfg)}, {"rows", json::array()}};
      for (const auto& r : rows)
        j["rows"].push_back(json{{"n", r.n},
                                 {"k", r.k},
                                 {"lambda_analytic", r.lambda},
                                 {"lambda_oracle", r.oracle_lambda},
                                 {"abs_dlambda", r.abs_dlambda}});
      write_file(cfg.out, j.dump(2) + "\n");
    }
    Real worst = 0;
    for (const auto& r : rows) worst = std::max(worst, r.abs_dlambda);
    return static_cast<int>(worst <= 1e-6 ? exit_ok : exit_arbitration);
  });
}

int cmd_wolfes(const RunConfig& cfg) {
  return run_guarded(cfg, [&] {
    const auto params = wolfes::wolfes_from_couplings(cfg.g, cfg.f.value_or(0.0), cfg.a);

    struct EdgeRow {
      int n;
      Real lower, upper;
    };
    std::vector<EdgeRow> edges;
    for (int n : cfg.bands) {
      const auto [lo, hi] = wolfes::wolfes_band_edges(params, n);  // oracle-confirmed
      edges.push_back({n, lo, hi});
    }

    std::vector<std::pair<int, Real>> points;
    for (int n : cfg.bands)
      for (int nu : {2 * n, 2 * n + 1})
        for (int i = 0; i < cfg.k_points; ++i)
          points.emplace_back(nu, (kPi / cfg.a) * i / (cfg.k_points - 1));

    struct Row {
      int nu;
      Real k, lambda_analytic, lambda_oracle, abs_dlambda;
    };
    std::vector<Row> rows(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
      const auto [nu, k] = points[i];
      const Real lam_oracle = wolfes::wolfes_dispersion(params, nu, k);
      const wolfes::WolfesBloch sol(params, nu, k);  // root of the closed-form discriminant
      rows[i] = {nu, k, sol.lambda(), lam_oracle, std::abs(sol.lambda() - lam_oracle)};
    });

    std::ostringstream os;
    os << "nu,k,lambda_analytic,lambda_oracle,abs_dlambda\n";
    for (const auto& r : rows)
      os << r.nu << ',' << format_real(r.k) << ',' << format_real(r.lambda_analytic) << ','
         << format_real(r.lambda_oracle) << ',' << format_real(r.abs_dlambda) << '\n';
    os << "# band_edges (truncation, oracle-confirmed):\n";
    for (const auto& e : edges)
      os << "# n=" << e.n << " lower=" << format_real(e.lower) << " upper=" << format_real(e.upper)
         << "\n";

    if (cfg.format == Format::csv) {
      write_file(cfg.out, os.str());
    } else {
      json j{{"config", config_json(cfg)}, {"edges", json::array()}, {"rows", json::array()}};
      for (const auto& e : edges)
        j["edges"].push_back(json{{"n", e.n}, {"lower", e.lower}, {"upper", e.upper}});
      for (const auto& r : rows)
        j["rows"].push_back(json{{"nu", r.nu},
                                 {"k", r.k},
                                 {"lambda_analytic", r.lambda_analytic},
                                 {"lambda_oracle", r.lambda_oracle},
                                 {"abs_dlambda", r.abs_dlambda}});
      write_file(cfg.out, j.dump(2) + "\n");
    }
    Real worst = 0;
    for (const auto& r : rows) worst = std::max(worst, r.abs_dlambda);
    return static_cast<int>(worst <= 1e-6 ? exit_ok : exit_arbitration);
  });
}

}  // namespace anyonlab::report
