// Command line front end: every subcommand wraps one library entry point
// and reports through CSV/JSON. Exit codes: 0 = all verdicts pass,
// 1 = a verdict failed, 2 = usage or domain error.

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cliffstab/chart.hpp"
#include "cliffstab/conformal_profile.hpp"
#include "cliffstab/curvature.hpp"
#include "cliffstab/moebius.hpp"
#include "cliffstab/spectral.hpp"
#include "cliffstab/surface_geometry.hpp"
#include "cliffstab/verifier.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
  double r = 0.05;
  std::size_t n = 64;
  std::string backend = "fourier";
  std::string out;
  bool as_json = false;
};

void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::function<void(std::ostream&)>& writer) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create " + dir.string() + ": " +
                             ec.message());
  }
  const auto path = dir / name;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  writer(os);
  os.flush();
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

int run_verify_all(const GlobalOpts& g) {
  const auto rep = cliffstab::verify_example(
      g.r, g.n, cliffstab::ToleranceProfile{},
      cliffstab::parse_backend(g.backend));
  if (!g.out.empty()) cliffstab::emit_report(rep, g.out);
  if (g.as_json) {
    std::cout << cliffstab::report_json(rep);
  } else {
    for (const auto& c : rep.verdicts) {
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << std::left
                << std::setw(26) << c.name << " residual "
                << std::setprecision(3) << std::scientific << c.residual
                << " (tol " << c.tolerance << ")  " << c.detail << "\n"
                << std::defaultfloat;
    }
    std::cout << (rep.overall ? "overall: PASS" : "overall: FAIL") << "\n";
    if (!g.out.empty()) {
      std::cout << "report written to " << g.out << "\n";
    }
  }
  return rep.overall ? 0 : 1;
}

int run_ricci_scan(const GlobalOpts& g) {
  const cliffstab::ConformalProfile prof(cliffstab::make_bump(g.r));
  const auto certified = cliffstab::scan_nonnegativity(prof, g.n);
  const bool feasible = certified.value >= -1e-9;

  const auto scan = cliffstab::ricci_scan(
      prof, std::max<std::size_t>(g.n, 2), cliffstab::chart_t_limit - 1e-3);
  if (!g.out.empty()) {
    write_file(g.out, "ricci_scan.csv", [&](std::ostream& os) {
      cliffstab::write_ricci_scan_csv(scan, os);
    });
  }
  if (g.as_json) {
    json doc{{"r", g.r},
             {"resolution", g.n},
             {"min", json{{"t", certified.t}, {"value", certified.value}}},
             {"feasible", feasible}};
    std::cout << doc.dump(2) << "\n";
  } else if (g.out.empty()) {
    cliffstab::write_ricci_scan_csv(scan, std::cout);
  }
  return feasible ? 0 : 1;
}

int run_spectrum(const GlobalOpts& g, double c, std::size_t nmodes) {
  const auto grid = cliffstab::make_grid(g.n);
  const auto rep = cliffstab::jacobi_spectrum(
      c, grid, nmodes, cliffstab::parse_backend(g.backend));
  json doc{{"c", rep.c},
           {"eigenvalues", rep.eigenvalues},
           {"index", rep.index},
           {"nullity", rep.nullity},
           {"cmc_stable", rep.cmc_stable},
           {"minimal_index", rep.minimal_index},
           {"tol_zero", rep.tol_zero},
           {"backend", cliffstab::backend_name(rep.backend)}};
  std::cout << doc.dump(2) << "\n";
  if (!g.out.empty()) {
    write_file(g.out, "spectrum.json",
               [&](std::ostream& os) { os << doc.dump(2) << "\n"; });
  }
  return 0;
}

cliffstab::MobiusParam<4> parse_shift(const std::string& spec) {
  cliffstab::MobiusParam<4> b;
  std::stringstream ss(spec);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= 4) throw CLI::ValidationError("--map", "expected 4 components");
    b.a[k++] = std::stod(item);
  }
  if (k != 4) throw CLI::ValidationError("--map", "expected 4 components");
  return b;
}

int run_balance(const GlobalOpts& g, const std::string& map_spec,
                const std::string& rho_spec, double tol,
                std::size_t max_iter) {
  const auto grid = cliffstab::make_grid(g.n);

  cliffstab::GridFunction rho;
  if (rho_spec != "uniform") {
    if (rho_spec.rfind("file:", 0) != 0) {
      throw CLI::ValidationError("--rho", "expected uniform or file:<csv>");
    }
    const std::string path = rho_spec.substr(5);
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open rho file " + path);
    double v = 0.0;
    while (is >> v) {
      rho.push_back(v);
      if (is.peek() == ',') is.ignore();
    }
    if (rho.size() != grid.size()) {
      std::ostringstream msg;
      msg << "rho file has " << rho.size() << " values, grid needs "
          << grid.size();
      throw std::invalid_argument(msg.str());
    }
  }

  cliffstab::BalanceProblem<4> problem =
      rho.empty() ? cliffstab::torus_embedding_problem(grid)
                  : cliffstab::torus_embedding_problem(grid, rho);
  if (map_spec != "clifford") {
    if (map_spec.rfind("shifted:", 0) != 0) {
      throw CLI::ValidationError("--map",
                                 "expected clifford or shifted:<a1,a2,a3,a4>");
    }
    const auto b = parse_shift(map_spec.substr(8));
    for (auto& s : problem.samples) s = cliffstab::mobius_apply(b, s);
  }

  const auto result = cliffstab::balance(problem, tol, max_iter);
  json doc{{"a", result.param.a},
           {"residual", result.residual},
           {"iterations", result.iterations}};
  std::cout << doc.dump(2) << "\n";
  if (!g.out.empty()) {
    write_file(g.out, "balance.json",
               [&](std::ostream& os) { os << doc.dump(2) << "\n"; });
  }
  return 0;
}

int run_willmore_check(const GlobalOpts& g, std::vector<double> ts) {
  const cliffstab::ConformalProfile prof(cliffstab::make_bump(g.r));
  if (ts.empty()) {
    ts = {0.0, g.r, -g.r, 2.0 * g.r, -2.0 * g.r, 0.2, -0.2};
  }

  const double tol_gap = 1e-8;
  bool pass = true;
  json rows = json::array();
  for (double t : ts) {
    const double wr = cliffstab::willmore_energy_round(t, g.n);
    const double wp = cliffstab::willmore_energy_conformal(prof, t, g.n);
    const double gap = std::abs(wp - wr) / wr;
    pass = pass && gap <= tol_gap;
    rows.push_back(json{
        {"t", t}, {"round", wr}, {"perturbed", wp}, {"relative_gap", gap}});
  }

  if (!g.out.empty()) {
    const double t_max = cliffstab::chart_t_limit - 1e-3;
    write_file(g.out, "willmore_round.csv", [&](std::ostream& os) {
      cliffstab::write_willmore_csv(cliffstab::willmore_scan_round(257, t_max),
                                    os);
    });
    write_file(g.out, "willmore_perturbed.csv", [&](std::ostream& os) {
      cliffstab::write_willmore_csv(
          cliffstab::willmore_scan_conformal(prof, 257, t_max), os);
    });
  }

  if (g.as_json) {
    json doc{{"r", g.r}, {"pairs", rows}, {"pass", pass}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << std::setw(12) << "t" << std::setw(22) << "round"
              << std::setw(22) << "perturbed" << std::setw(16) << "rel_gap"
              << "\n";
    for (const auto& row : rows) {
      std::cout << std::setw(12) << std::setprecision(4) << std::fixed
                << row["t"].get<double>() << std::setw(22)
                << std::setprecision(12) << std::defaultfloat
                << row["round"].get<double>() << std::setw(22)
                << row["perturbed"].get<double>() << std::setw(16)
                << std::setprecision(3) << std::scientific
                << row["relative_gap"].get<double>() << std::defaultfloat
                << "\n";
    }
    std::cout << (pass ? "invariance holds" : "invariance violated") << "\n";
  }
  return pass ? 0 : 1;
}

int run_bump_design(const GlobalOpts& g) {
  const auto bump = cliffstab::make_bump(g.r);
  const cliffstab::ConformalProfile prof(bump);
  const auto rep = cliffstab::verify_conditions(bump, 1e-12);

  double zeta_min = 0.0;
  double zeta_argmin = 0.0;
  for (std::size_t k = 0; k <= 4096; ++k) {
    const double t = 2.0 * g.r * static_cast<double>(k) / 4096.0;
    const double z = prof.zeta(t);
    if (z < zeta_min) {
      zeta_min = z;
      zeta_argmin = t;
    }
  }

  const auto item = [](const cliffstab::BumpConditionReport::Item& it) {
    return json{{"pass", it.pass}, {"residual", it.residual}};
  };
  json doc{{"r", g.r},
           {"amplitude", bump.negative_amplitude},
           {"zeta_min", json{{"t", zeta_argmin}, {"value", zeta_min}}},
           {"w_at_r", prof.w(g.r)},
           {"w_at_2r", prof.w(2.0 * g.r)},
           {"w1_at_r", prof.w1(g.r)},
           {"tail_constant", cliffstab::tail_constant(prof)},
           {"conditions",
            json{{"starts_at_one", item(rep.starts_at_one)},
                 {"decreasing_inner", item(rep.decreasing_inner)},
                 {"vanishes_at_r", item(rep.vanishes_at_r)},
                 {"negative_outer", item(rep.negative_outer)},
                 {"zero_tail", item(rep.zero_tail)},
                 {"zero_mean", item(rep.zero_mean)},
                 {"bounded_by_one", item(rep.bounded_by_one)},
                 {"even_symmetry", item(rep.even_symmetry)}}},
           {"all_conditions", rep.all()}};

  if (!g.out.empty()) {
    write_file(g.out, "profile.csv", [&](std::ostream& os) {
      cliffstab::write_profile_csv(prof, os);
    });
  }
  if (g.as_json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "bump half-width r = " << g.r << "\n"
              << "negative amplitude A = " << bump.negative_amplitude << "\n"
              << "min zeta = " << zeta_min << " at t = " << zeta_argmin
              << " (closed form -35/32 at 3r/2)\n"
              << "w(r) = " << prof.w(g.r) << ", w(2r) = " << prof.w(2.0 * g.r)
              << ", w'(r) = " << prof.w1(g.r) << "\n"
              << "tail constant C = " << cliffstab::tail_constant(prof) << "\n"
              << "conditions: " << (rep.all() ? "all pass" : "FAILURES")
              << "\n";
  }
  return rep.all() ? 0 : 1;
}

int run_max_r(const GlobalOpts& g, std::size_t resolution, double r_tol) {
  const auto res = cliffstab::max_feasible_r(resolution, r_tol);
  if (g.as_json) {
    json doc{{"r", res.r},
             {"min_eigenvalue", res.min_eigenvalue},
             {"capped_at_domain", res.capped_at_domain}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "max feasible r = " << std::setprecision(12) << res.r
              << " (scan min " << std::setprecision(3) << std::scientific
              << res.min_eigenvalue << std::defaultfloat << ")"
              << (res.capped_at_domain ? " [entire (0, pi/8) feasible]" : "")
              << "\n";
  }
  return res.r > 0.0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Curvature, spectra, and balancing toolkit for conformally perturbed "
      "round 3-spheres"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--r", g.r, "bump half-width, in (0, pi/8)")
      ->capture_default_str();
  app.add_option("--n", g.n, "grid points per side / scan resolution")
      ->capture_default_str();
  app.add_option("--backend", g.backend, "laplacian backend: fourier | fd")
      ->capture_default_str();
  app.add_option("--out", g.out, "directory for report and CSV files");
  app.add_flag("--json", g.as_json, "machine-readable stdout");

  auto* verify = app.add_subcommand(
      "verify-all", "run the full verification pipeline and report verdicts");
  verify->fallthrough();

  auto* ricci = app.add_subcommand(
      "ricci-scan", "scan normalized Ricci eigenvalues of the perturbed metric");
  ricci->fallthrough();

  double c = 2.0;
  std::size_t nmodes = 16;
  auto* spectrum = app.add_subcommand(
      "spectrum", "eigenvalues and stability counts of L = Laplacian + c");
  spectrum->fallthrough();
  spectrum->add_option("--c", c, "constant potential")->capture_default_str();
  spectrum->add_option("--nmodes", nmodes, "eigenvalues to report")
      ->capture_default_str();

  std::string map_spec = "clifford";
  std::string rho_spec = "uniform";
  double bal_tol = 1e-10;
  std::size_t max_iter = 200;
  auto* bal = app.add_subcommand(
      "balance", "find the dilation balancing the weighted sphere map");
  bal->fallthrough();
  bal->add_option("--map", map_spec, "clifford | shifted:<a1,a2,a3,a4>")
      ->capture_default_str();
  bal->add_option("--rho", rho_spec, "uniform | file:<csv>")
      ->capture_default_str();
  bal->add_option("--tol", bal_tol, "residual target")->capture_default_str();
  bal->add_option("--max-iter", max_iter, "iteration budget")
      ->capture_default_str();

  std::vector<double> ts;
  auto* willmore = app.add_subcommand(
      "willmore-check", "compare round and perturbed Willmore energies");
  willmore->fallthrough();
  willmore->add_option("--t", ts, "parallel-torus parameters")
      ->delimiter(',');

  auto* bump = app.add_subcommand(
      "bump-design", "profile facts and condition report for the bump");
  bump->fallthrough();

  std::size_t resolution = 4096;
  double r_tol = 1e-6;
  auto* maxr = app.add_subcommand(
      "max-r", "largest bump half-width passing the nonnegativity scan");
  maxr->fallthrough();
  maxr->add_option("--resolution", resolution, "scan resolution per radius")
      ->capture_default_str();
  maxr->add_option("--r-tol", r_tol, "bisection width target")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems exit 2, help exits 0
  }

  try {
    if (app.got_subcommand(verify)) return run_verify_all(g);
    if (app.got_subcommand(ricci)) return run_ricci_scan(g);
    if (app.got_subcommand(spectrum)) return run_spectrum(g, c, nmodes);
    if (app.got_subcommand(bal))
      return run_balance(g, map_spec, rho_spec, bal_tol, max_iter);
    if (app.got_subcommand(willmore)) return run_willmore_check(g, ts);
    if (app.got_subcommand(bump)) return run_bump_design(g);
    if (app.got_subcommand(maxr)) return run_max_r(g, resolution, r_tol);
  } catch (const cliffstab::NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cliffstab::BalanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
