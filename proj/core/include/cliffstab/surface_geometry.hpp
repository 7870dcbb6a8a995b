#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "cliffstab/chart.hpp"
#include "cliffstab/conformal_profile.hpp"

namespace cliffstab {

// Extrinsic data of the parallel torus T_t = {t = const} with unit normal
// N = +d/dt. Principal directions are the theta and phi circles.
struct TorusShape {
  double kappa_theta = 0.0;
  double kappa_phi = 0.0;
  double mean_curvature = 0.0;        // H = (k1 + k2)/2
  double second_form_norm2 = 0.0;     // |sigma|^2 = k1^2 + k2^2
  double area_density = 0.0;          // sqrt(det induced metric) per dtheta dphi
  double gauss_curvature = 0.0;       // intrinsic K of the torus
  double normal_sectional = 0.0;      // Ks: ambient sectional curvature of the tangent plane
};

// Shape data for the round metric at parameter t.
TorusShape round_torus_shape(double t);

// Shape data for g_bar = e^{2w} g: principal curvatures transform as
// kbar_i = e^{-w} (k_i + w'), the area density picks up e^{2w}, the normal
// curvature sum keeps the Gauss relation |sigma|^2 = 4H^2 + 2 Ks - 2 K.
// The scalar overload takes the conformal data (w, w') directly; a zero
// pair reproduces the round shape.
TorusShape conformal_torus_shape(double w, double w1, double t);
TorusShape conformal_torus_shape(const ConformalProfile& p, double t);

// Residual of the Gauss equation |sigma|^2 - (4 H^2 + 2 Ks - 2 K) for a
// shape record; zero for consistent data.
double gauss_equation_residual(const TorusShape& s);

// Willmore energy of the parallel torus: integral of (H^2 + Ks) dA over the
// (theta, phi) fundamental domain, by trapezoidal quadrature on an n x n
// periodic grid. The integrand is constant in (theta, phi) for this family,
// so the quadrature is exact up to rounding; the grid is kept so the same
// code path covers future non-symmetric integrands.
double willmore_energy_round(double t, std::size_t n = 128);
double willmore_energy_conformal(const ConformalProfile& p, double t,
                                 std::size_t n = 128);

// Pointwise conformal invariance of the density (k1 - k2)^2 dA: returns the
// residual between round and conformal densities at t.
double willmore_density_residual(const ConformalProfile& p, double t);

// Area of T_t: 2 pi^2 cos(2t) for round, times the conformal factor else.
double torus_area_round(double t);
double torus_area_conformal(const ConformalProfile& p, double t);

// Scan rows for the willmore-check output, one flavor per metric. CSV
// columns: t, kappa_theta, kappa_phi, mean_curvature, second_form_norm2,
// willmore.
struct WillmoreScanRow {
  double t = 0.0;
  TorusShape shape;
  double willmore = 0.0;
};

std::vector<WillmoreScanRow> willmore_scan_round(std::size_t samples,
                                                 double t_max,
                                                 std::size_t quad_n = 128);
std::vector<WillmoreScanRow> willmore_scan_conformal(const ConformalProfile& p,
                                                     std::size_t samples,
                                                     double t_max,
                                                     std::size_t quad_n = 128);

void write_willmore_csv(const std::vector<WillmoreScanRow>& scan,
                        std::ostream& os);

}  // namespace cliffstab
