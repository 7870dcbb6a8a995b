#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "cliffstab/conformal_profile.hpp"
#include "cliffstab/curvature.hpp"
#include "cliffstab/grid.hpp"
#include "cliffstab/moebius.hpp"
#include "cliffstab/spectral.hpp"

namespace cliffstab {

// One config block for every verdict tolerance so runs are reproducible.
struct ToleranceProfile {
  double geometric = 1e-12;         // exact identities (closed forms)
  double curvature = 1e-10;         // curvature formula comparisons
  double quadrature = 1e-8;         // grid-quadrature comparisons
  double spectra_discrete = 1e-2;   // discretized-spectrum comparisons
  double ricci_slack = 1e-9;        // allowed undershoot of the Ricci scan
  double balance = 1e-8;            // balancing residual target
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// One inequality with both sides kept; slack = rhs - lhs, so nonnegative
// slack means the bound holds.
struct ChainEntry {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack() const { return rhs - lhs; }
};

// The stability chain on the central torus, against a balanced sphere map:
//   stability_vs_energy:  int (|sigma|^2 + Ric(N,N)) dA  <=  int |grad Psi|^2 dA
//   gauss_rewrite:        same lhs via 4H^2 + 2Ks - 2K + Ric(N,N)
//   gauss_bonnet_form:    int (2H^2 + Ric(N,N)) dA + 2W - 4 pi chi  <=  2 area(Psi* g)
//   euler_bound:          int (2H^2 + Ric(N,N)) dA  <=  4 pi chi
// chi = 0 for the torus.
struct ChainValues {
  ChainEntry stability_vs_energy;
  ChainEntry gauss_rewrite;
  ChainEntry gauss_bonnet_form;
  ChainEntry euler_bound;
  double balance_residual = 0.0;
};

// Evaluates the chain for the round metric (expected-negative control: the
// first bound is violated) and for the perturbed metric (all bounds hold,
// the first and last with equality). The map must already be balanced to
// balance_tol or std::invalid_argument is thrown.
ChainValues inequality_chain_round(const BalanceProblem<4>& balanced,
                                   const TorusGrid& g,
                                   double balance_tol = 1e-8);
ChainValues inequality_chain_conformal(const ConformalProfile& p,
                                       const BalanceProblem<4>& balanced,
                                       const TorusGrid& g,
                                       double balance_tol = 1e-8);

struct WillmorePair {
  double t = 0.0;
  double round_value = 0.0;
  double perturbed_value = 0.0;
  double relative_gap = 0.0;
};

struct CliffordChecks {
  double mean_curvature = 0.0;     // H-bar at t = 0
  double second_form_norm2 = 0.0;  // |sigma-bar|^2 at t = 0
  double ricci_normal = 0.0;       // normalized Ric-bar(N, N) at t = 0
  double tail_constant = 0.0;      // C with g-bar = C g on the tail
};

struct VerificationReport {
  double r = 0.0;
  std::size_t n = 0;
  LaplacianBackend backend = LaplacianBackend::fourier;
  ToleranceProfile tolerances;

  BumpConditionReport bump;
  RicciScanMinimum ricci_min;
  double ricci_tail_residual = 0.0;
  CliffordChecks clifford;
  SpectrumReport spectrum_perturbed;  // c = 2
  SpectrumReport spectrum_round;      // c = 4
  std::vector<WillmorePair> willmore;
  ChainValues chain_round;
  ChainValues chain_perturbed;
  double balance_param_norm = 0.0;    // |a| for the uniform problem
  double balance_residual_uniform = 0.0;
  double balance_residual_shifted = 0.0;
  int euler_characteristic = 0;

  std::vector<CheckResult> verdicts;
  bool overall = false;
};

// End-to-end pipeline: bump -> profile -> Ricci scan -> central-torus
// geometry -> spectra -> Willmore pairs -> chain -> balancing. Throws
// std::domain_error for r outside (0, pi/8) before any computation.
VerificationReport verify_example(double r, std::size_t n,
                                  const ToleranceProfile& tol = {},
                                  LaplacianBackend backend = LaplacianBackend::fourier);

// Deterministic JSON (sorted keys, fixed float formatting): equal inputs
// give byte-identical output.
std::string report_json(const VerificationReport& rep);

// Writes report.json plus CSV side files (profile.csv, ricci_scan.csv,
// willmore_round.csv, willmore_perturbed.csv) into dir, creating it if
// needed. I/O failures surface as std::runtime_error with the path in the
// message.
void emit_report(const VerificationReport& rep,
                 const std::filesystem::path& dir);

}  // namespace cliffstab
