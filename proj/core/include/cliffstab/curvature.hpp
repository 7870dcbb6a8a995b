#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "cliffstab/chart.hpp"
#include "cliffstab/conformal_profile.hpp"

namespace cliffstab {

// Diagonal Ricci components of g_bar = e^{2w} g in the (t, theta, phi)
// chart. The profile depends on t only, so the off-diagonal terms vanish
// identically; the fd oracle in the test suite double-checks that.
struct RicciDiagonal {
  double tt = 0.0;
  double thth = 0.0;
  double phph = 0.0;
};

// Eigenvalues of the Ricci endomorphism ric = g_bar^{-1} Ric(g_bar),
// i.e. the coordinate components divided by the metric diagonal.
struct RicciEigenvalues {
  double t = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  double min() const;
};

// Hessian of w as a (0,2)-tensor in chart coordinates (diagonal; the
// theta/phi entries come from the Christoffel terms of the round metric).
struct HessianDiagonal {
  double tt = 0.0;
  double thth = 0.0;
  double phph = 0.0;
};

// Scalar-data overloads take (w, w', w'') directly, so degenerate profiles
// (zero, constant) can be evaluated without constructing a bump.
HessianDiagonal hessian_w(double w1, double w2, double t);
HessianDiagonal hessian_w(const ConformalProfile& p, double t);

// Laplace-Beltrami of w for the round metric, analyst's sign (Delta = trace
// of the Hessian): w'' - 2 tan(2t) w'.
double laplacian_w(double w1, double w2, double t);
double laplacian_w(const ConformalProfile& p, double t);

// The coordinate components depend on (w', w'') only; the conformal factor
// itself enters through the metric normalization.
RicciDiagonal ricci_components(double w1, double w2, double t);
RicciDiagonal ricci_components(const ConformalProfile& p, double t);
RicciEigenvalues ricci_eigenvalues(double w, double w1, double w2, double t);
RicciEigenvalues ricci_eigenvalues(const ConformalProfile& p, double t);

// Scalar curvature of g_bar at parameter t.
double scalar_curvature(const ConformalProfile& p, double t);

// Uniform scan of the normalized eigenvalues over t in [0, t_max], endpoint
// pulled just inside the chart. Rows are (t, eig_t, eig_theta, eig_phi).
struct RicciScanRow {
  double t = 0.0;
  RicciEigenvalues eig;
};

std::vector<RicciScanRow> ricci_scan(const ConformalProfile& p,
                                     std::size_t samples,
                                     double t_max = chart_t_limit);

// Minimum normalized eigenvalue over the scan, with its location.
struct RicciScanMinimum {
  double t = 0.0;
  double value = 0.0;
};

RicciScanMinimum min_eigenvalue(const std::vector<RicciScanRow>& scan);

// Nonnegativity certificate: uniform grid on [-2r, 2r] (resolution >= 64
// points) combined with the exact tail value 2/C (on the tail g_bar is the
// round metric scaled by the constant C, so all normalized eigenvalues
// equal 2/C there). Returns the overall minimum and its location.
RicciScanMinimum scan_nonnegativity(const ConformalProfile& p,
                                    std::size_t resolution);

// On the tail |t| >= 2r the metric is the round one scaled by the constant
// tail factor, so every normalized eigenvalue equals 2/C exactly. Returns
// the largest deviation over a dense tail sample.
double tail_eigenvalue_residual(const ConformalProfile& p,
                                std::size_t samples = 257);

// CSV columns: t, eig_t, eig_theta, eig_phi.
void write_ricci_scan_csv(const std::vector<RicciScanRow>& scan,
                          std::ostream& os);

// Largest r in (0, pi/8) whose bump keeps the nonnegativity scan above
// -1e-9, located by bisection between a feasible and an infeasible radius.
// Feasibility is not assumed monotone: the bracket is seeded from a
// descending probe of the domain. If the whole admissible range is
// feasible the search reports the domain cap instead of a crossing; if
// even r = 1e-4 fails, something is broken upstream and a runtime_error
// says so.
struct FeasibleRadius {
  double r = 0.0;
  double min_eigenvalue = 0.0;
  bool capped_at_domain = false;
};

FeasibleRadius max_feasible_r(std::size_t scan_resolution = 2048,
                              double r_tol = 1e-6);

}  // namespace cliffstab
