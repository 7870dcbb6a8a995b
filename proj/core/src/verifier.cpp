#include "cliffstab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cliffstab/chart.hpp"
#include "cliffstab/surface_geometry.hpp"

namespace cliffstab {

namespace {

using json = nlohmann::json;

double norm4(const std::array<double, 4>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct ChainInputs {
  TorusShape shape;   // central torus, chosen metric
  double ric_nn;      // normalized Ric(N, N) at t = 0
  double willmore;    // W(0) in the chosen metric
};

ChainValues chain_impl(const ChainInputs& in, const BalanceProblem<4>& balanced,
                       const TorusGrid& g, double balance_tol) {
  const auto mean = center_of_mass(balanced, MobiusParam<4>{});
  const double res = norm4(mean);
  if (res > balance_tol) {
    std::ostringstream msg;
    msg << "map is not balanced: |mean| = " << res << " exceeds "
        << balance_tol;
    throw std::invalid_argument(msg.str());
  }

  const EnergyPair en = conformal_energy(balanced, g, MobiusParam<4>{});
  const double area = in.shape.area_density * g.area();
  const double H = in.shape.mean_curvature;
  const double euler_term = 0.0;  // 4 pi chi with chi = 0

  ChainValues cv;
  cv.balance_residual = res;
  cv.stability_vs_energy = {(in.shape.second_form_norm2 + in.ric_nn) * area,
                            en.dirichlet};
  cv.gauss_rewrite = {
      (4.0 * H * H + 2.0 * in.shape.normal_sectional -
       2.0 * in.shape.gauss_curvature + in.ric_nn) *
          area,
      en.dirichlet};
  const double curvature_lhs = (2.0 * H * H + in.ric_nn) * area;
  cv.euler_bound = {curvature_lhs, euler_term};
  cv.gauss_bonnet_form = {curvature_lhs + 2.0 * in.willmore - euler_term,
                          en.two_area};
  return cv;
}

void add_check(std::vector<CheckResult>& out, std::string name, bool pass,
               double residual, double tolerance, std::string detail) {
  out.push_back(CheckResult{std::move(name), pass, residual, tolerance,
                            std::move(detail)});
}

void build_verdicts(VerificationReport& rep) {
  auto& v = rep.verdicts;
  const ToleranceProfile& tol = rep.tolerances;

  {
    const auto& b = rep.bump;
    const double residual = std::max(
        {b.starts_at_one.residual, b.vanishes_at_r.residual,
         b.zero_mean.residual, b.zero_tail.residual, b.bounded_by_one.residual,
         b.even_symmetry.residual, std::max(b.decreasing_inner.residual, 0.0)});
    std::string detail = "all eight profile conditions hold";
    if (!b.all()) {
      detail = "failed:";
      if (!b.starts_at_one.pass) detail += " starts_at_one";
      if (!b.decreasing_inner.pass) detail += " decreasing_inner";
      if (!b.vanishes_at_r.pass) detail += " vanishes_at_r";
      if (!b.negative_outer.pass) detail += " negative_outer";
      if (!b.zero_tail.pass) detail += " zero_tail";
      if (!b.zero_mean.pass) detail += " zero_mean";
      if (!b.bounded_by_one.pass) detail += " bounded_by_one";
      if (!b.even_symmetry.pass) detail += " even_symmetry";
    }
    add_check(v, "bump_conditions", b.all(), residual, tol.geometric, detail);
  }

  add_check(v, "ricci_min_nonnegative",
            rep.ricci_min.value >= -tol.ricci_slack,
            std::max(0.0, -rep.ricci_min.value), tol.ricci_slack,
            "scan minimum " + fmt(rep.ricci_min.value) + " at t = " +
                fmt(rep.ricci_min.t));

  add_check(v, "ricci_tail_scaling",
            rep.ricci_tail_residual <= tol.curvature, rep.ricci_tail_residual,
            tol.curvature,
            "tail eigenvalues vs 2/C, C = " + fmt(rep.clifford.tail_constant));

  add_check(v, "central_mean_curvature",
            std::abs(rep.clifford.mean_curvature) <= tol.geometric,
            std::abs(rep.clifford.mean_curvature), tol.geometric,
            "perturbed H at t = 0");

  add_check(v, "central_second_form",
            std::abs(rep.clifford.second_form_norm2 - 2.0) <= tol.geometric,
            std::abs(rep.clifford.second_form_norm2 - 2.0), tol.geometric,
            "perturbed |sigma|^2 at t = 0 vs 2");

  add_check(v, "central_ricci_normal",
            std::abs(rep.clifford.ricci_normal) <= tol.curvature,
            std::abs(rep.clifford.ricci_normal), tol.curvature,
            "normalized Ric(N,N) at t = 0");

  {
    const auto& s = rep.spectrum_perturbed;
    const bool pass = s.index == 1 && s.nullity == 4 && s.cmc_stable;
    const double second = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0;
    std::ostringstream d;
    d << "index " << s.index << ", nullity " << s.nullity << ", cmc_stable "
      << (s.cmc_stable ? "true" : "false");
    add_check(v, "spectrum_perturbed", pass, std::abs(second), s.tol_zero,
              d.str());
  }
  {
    const auto& s = rep.spectrum_round;
    const bool pass = s.index == 5 && s.nullity == 4 && !s.cmc_stable;
    const double second = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0;
    std::ostringstream d;
    d << "control: index " << s.index << ", nullity " << s.nullity
      << ", cmc_stable " << (s.cmc_stable ? "true" : "false");
    add_check(v, "spectrum_round_control", pass, std::abs(second + 2.0),
              s.tol_zero, d.str());
  }

  {
    double worst = 0.0;
    for (const auto& pair : rep.willmore) {
      worst = std::max(worst, pair.relative_gap);
    }
    add_check(v, "willmore_invariance", worst <= tol.quadrature, worst,
              tol.quadrature,
              "max relative gap over " + fmt(static_cast<double>(rep.willmore.size())) +
                  " samples");
  }

  {
    const double res =
        std::max(std::abs(rep.chain_round.stability_vs_energy.lhs -
                          rep.chain_round.gauss_rewrite.lhs),
                 std::abs(rep.chain_perturbed.stability_vs_energy.lhs -
                          rep.chain_perturbed.gauss_rewrite.lhs));
    add_check(v, "chain_gauss_rewrite", res <= tol.curvature, res,
              tol.curvature, "lhs rewritten via the Gauss equation");
  }

  {
    const bool violated = rep.chain_round.stability_vs_energy.slack() < 0.0 &&
                          rep.chain_round.euler_bound.slack() < 0.0;
    add_check(v, "chain_round_control", violated,
              rep.chain_round.stability_vs_energy.slack(), 0.0,
              "round metric must violate the stability bound (expected "
              "control): slack " +
                  fmt(rep.chain_round.stability_vs_energy.slack()));
  }

  {
    const double res =
        std::max(std::abs(rep.chain_perturbed.stability_vs_energy.slack()),
                 std::abs(rep.chain_perturbed.euler_bound.slack()));
    add_check(v, "chain_perturbed_equality", res <= tol.quadrature, res,
              tol.quadrature, "perturbed metric reaches the equality case");
  }

  {
    const double res = std::abs(rep.chain_perturbed.gauss_bonnet_form.slack());
    add_check(v, "chain_energy_identity", res <= tol.quadrature, res,
              tol.quadrature,
              "curvature side + 2W reproduces twice the pullback area");
  }

  add_check(v, "balance_uniform",
            rep.balance_residual_uniform <= tol.balance &&
                rep.balance_param_norm <= 1e-10,
            rep.balance_residual_uniform, tol.balance,
            "|a| = " + fmt(rep.balance_param_norm));

  add_check(v, "balance_shifted",
            rep.balance_residual_shifted <= tol.balance,
            rep.balance_residual_shifted, tol.balance,
            "dilation |b| = 0.3 re-balanced");

  rep.overall = std::all_of(v.begin(), v.end(),
                            [](const CheckResult& c) { return c.pass; });
}

json item_json(const BumpConditionReport::Item& it) {
  return json{{"pass", it.pass}, {"residual", it.residual}};
}

json chain_entry_json(const ChainEntry& e) {
  return json{{"lhs", e.lhs}, {"rhs", e.rhs}, {"slack", e.slack()}};
}

json chain_json(const ChainValues& cv) {
  return json{{"stability_vs_energy", chain_entry_json(cv.stability_vs_energy)},
              {"gauss_rewrite", chain_entry_json(cv.gauss_rewrite)},
              {"gauss_bonnet_form", chain_entry_json(cv.gauss_bonnet_form)},
              {"euler_bound", chain_entry_json(cv.euler_bound)},
              {"balance_residual", cv.balance_residual}};
}

json spectrum_json(const SpectrumReport& s) {
  return json{{"c", s.c},
              {"eigenvalues", s.eigenvalues},
              {"index", s.index},
              {"nullity", s.nullity},
              {"cmc_stable", s.cmc_stable},
              {"minimal_index", s.minimal_index},
              {"tol_zero", s.tol_zero},
              {"backend", backend_name(s.backend)}};
}

void write_text_file(const std::filesystem::path& path,
                     const std::function<void(std::ostream&)>& writer) {
  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  writer(os);
  os.flush();
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

ChainValues inequality_chain_round(const BalanceProblem<4>& balanced,
                                   const TorusGrid& g, double balance_tol) {
  // Round S^3 has Ric = 2 g, so the normal term is the constant 2.
  return chain_impl(
      ChainInputs{round_torus_shape(0.0), 2.0, willmore_energy_round(0.0, g.n)},
      balanced, g, balance_tol);
}

ChainValues inequality_chain_conformal(const ConformalProfile& p,
                                       const BalanceProblem<4>& balanced,
                                       const TorusGrid& g,
                                       double balance_tol) {
  return chain_impl(
      ChainInputs{conformal_torus_shape(p, 0.0), ricci_eigenvalues(p, 0.0).t,
                  willmore_energy_conformal(p, 0.0, g.n)},
      balanced, g, balance_tol);
}

VerificationReport verify_example(double r, std::size_t n,
                                  const ToleranceProfile& tol,
                                  LaplacianBackend backend) {
  const BumpSpec bump = make_bump(r);  // rejects bad r before any work
  const TorusGrid g = make_grid(n);
  const ConformalProfile prof(bump);

  VerificationReport rep;
  rep.r = r;
  rep.n = n;
  rep.backend = backend;
  rep.tolerances = tol;
  rep.euler_characteristic = 0;

  rep.bump = verify_conditions(bump, tol.geometric);

  const auto scan = ricci_scan(prof, 4096, chart_t_limit);
  rep.ricci_min = min_eigenvalue(scan);
  rep.ricci_tail_residual = tail_eigenvalue_residual(prof);

  const TorusShape central = conformal_torus_shape(prof, 0.0);
  rep.clifford.mean_curvature = central.mean_curvature;
  rep.clifford.second_form_norm2 = central.second_form_norm2;
  rep.clifford.ricci_normal = ricci_eigenvalues(prof, 0.0).t;
  rep.clifford.tail_constant = tail_constant(prof);

  const std::size_t nmodes = std::min<std::size_t>(16, g.size());
  rep.spectrum_perturbed = jacobi_spectrum(2.0, g, nmodes, backend);
  rep.spectrum_round = jacobi_spectrum(4.0, g, nmodes, backend);

  for (double t : {0.0, r, -r, 2.0 * r, -2.0 * r, 0.2, -0.2}) {
    WillmorePair pair;
    pair.t = t;
    pair.round_value = willmore_energy_round(t, n);
    pair.perturbed_value = willmore_energy_conformal(prof, t, n);
    pair.relative_gap =
        std::abs(pair.perturbed_value - pair.round_value) / pair.round_value;
    rep.willmore.push_back(pair);
  }

  const BalanceProblem<4> uniform = torus_embedding_problem(g);
  const BalanceResult<4> bal_uniform = balance(uniform, tol.balance, 200);
  rep.balance_param_norm = norm4(bal_uniform.param.a);
  rep.balance_residual_uniform = bal_uniform.residual;

  MobiusParam<4> b;
  b.a = {0.3, 0.0, 0.0, 0.0};
  const BalanceResult<4> bal_shifted =
      balance(shifted_torus_problem(g, b), tol.balance, 200);
  rep.balance_residual_shifted = bal_shifted.residual;

  rep.chain_round = inequality_chain_round(uniform, g, tol.balance);
  rep.chain_perturbed = inequality_chain_conformal(prof, uniform, g, tol.balance);

  build_verdicts(rep);
  return rep;
}

std::string report_json(const VerificationReport& rep) {
  json doc;
  doc["inputs"] = json{{"r", rep.r},
                       {"n", rep.n},
                       {"backend", backend_name(rep.backend)},
                       {"tolerances",
                        json{{"geometric", rep.tolerances.geometric},
                             {"curvature", rep.tolerances.curvature},
                             {"quadrature", rep.tolerances.quadrature},
                             {"spectra_discrete", rep.tolerances.spectra_discrete},
                             {"ricci_slack", rep.tolerances.ricci_slack},
                             {"balance", rep.tolerances.balance}}}};
  doc["euler_characteristic"] = rep.euler_characteristic;

  doc["bump_conditions"] =
      json{{"starts_at_one", item_json(rep.bump.starts_at_one)},
           {"decreasing_inner", item_json(rep.bump.decreasing_inner)},
           {"vanishes_at_r", item_json(rep.bump.vanishes_at_r)},
           {"negative_outer", item_json(rep.bump.negative_outer)},
           {"zero_tail", item_json(rep.bump.zero_tail)},
           {"zero_mean", item_json(rep.bump.zero_mean)},
           {"bounded_by_one", item_json(rep.bump.bounded_by_one)},
           {"even_symmetry", item_json(rep.bump.even_symmetry)}};

  doc["ricci"] = json{{"min", json{{"t", rep.ricci_min.t},
                                   {"value", rep.ricci_min.value}}},
                      {"tail_residual", rep.ricci_tail_residual}};

  doc["central_torus"] =
      json{{"mean_curvature", rep.clifford.mean_curvature},
           {"second_form_norm2", rep.clifford.second_form_norm2},
           {"ricci_normal", rep.clifford.ricci_normal},
           {"tail_constant", rep.clifford.tail_constant}};

  doc["spectra"] = json{{"perturbed", spectrum_json(rep.spectrum_perturbed)},
                        {"round", spectrum_json(rep.spectrum_round)}};

  json willmore = json::array();
  for (const auto& pair : rep.willmore) {
    willmore.push_back(json{{"t", pair.t},
                            {"round", pair.round_value},
                            {"perturbed", pair.perturbed_value},
                            {"relative_gap", pair.relative_gap}});
  }
  doc["willmore"] = willmore;

  doc["chain"] = json{{"round", chain_json(rep.chain_round)},
                      {"perturbed", chain_json(rep.chain_perturbed)}};

  doc["balance"] =
      json{{"uniform", json{{"param_norm", rep.balance_param_norm},
                            {"residual", rep.balance_residual_uniform}}},
           {"shifted", json{{"residual", rep.balance_residual_shifted}}}};

  json checks = json::array();
  for (const auto& c : rep.verdicts) {
    checks.push_back(json{{"name", c.name},
                          {"pass", c.pass},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
  }
  doc["verdicts"] = json{{"overall", rep.overall}, {"checks", checks}};

  return doc.dump(2) + "\n";
}

void emit_report(const VerificationReport& rep,
                 const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             ": " + ec.message());
  }

  write_text_file(dir / "report.json",
                  [&](std::ostream& os) { os << report_json(rep); });

  const ConformalProfile prof(make_bump(rep.r));
  write_text_file(dir / "profile.csv", [&](std::ostream& os) {
    write_profile_csv(prof, os);
  });

  const double csv_t_max = chart_t_limit - 1e-3;
  write_text_file(dir / "ricci_scan.csv", [&](std::ostream& os) {
    write_ricci_scan_csv(ricci_scan(prof, 513, csv_t_max), os);
  });
  write_text_file(dir / "willmore_round.csv", [&](std::ostream& os) {
    write_willmore_csv(willmore_scan_round(257, csv_t_max), os);
  });
  write_text_file(dir / "willmore_perturbed.csv", [&](std::ostream& os) {
    write_willmore_csv(willmore_scan_conformal(prof, 257, csv_t_max), os);
  });
}

}  // namespace cliffstab
