#include "cliffstab/surface_geometry.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "cliffstab/grid.hpp"

namespace cliffstab {

namespace {

double clamp_scan_end(double t_max) {
  return std::min(t_max, chart_t_limit - 1e-9);
}

// int (H^2 + Ks) dA over the fundamental domain for a shape record, by
// trapezoidal quadrature on an n x n periodic grid. The integrand is
// constant in (theta, phi) for the parallel-torus family, so this is exact
// up to rounding, but the quadrature path is kept real.
double willmore_quadrature(const TorusShape& shape, std::size_t n) {
  const TorusGrid g = make_grid(n);
  const double density =
      (shape.mean_curvature * shape.mean_curvature + shape.normal_sectional) *
      shape.area_density;
  return integrate(g, sample(g, [&](double, double) { return density; }));
}

}  // namespace

TorusShape round_torus_shape(double t) {
  require_in_chart(t);
  const double c = std::cos(2.0 * t);
  // cos(2t)/(1 +- sin 2t) in half-angle form; the naive quotient degrades
  // to 0/0 when sin(2t) rounds to 1 near the chart edge.
  const double tanp = std::tan(t + 0.25 * std::numbers::pi);
  TorusShape shape;
  shape.kappa_theta = 1.0 / tanp;
  shape.kappa_phi = -tanp;
  // Averaged rather than the closed form -tan(2t): deriving H from the same
  // kappa values keeps the Gauss relation closed to the last ulp even where
  // the curvatures are large. Costs one ulp of exactness at t = 0.
  shape.mean_curvature = 0.5 * (shape.kappa_theta + shape.kappa_phi);
  shape.second_form_norm2 = shape.kappa_theta * shape.kappa_theta +
                            shape.kappa_phi * shape.kappa_phi;
  shape.area_density = c;
  shape.gauss_curvature = 0.0;
  // K = Ks + k1 k2 with K = 0; equals 1 identically on this family.
  shape.normal_sectional = -shape.kappa_theta * shape.kappa_phi;
  return shape;
}

TorusShape conformal_torus_shape(double w, double w1, double t) {
  const TorusShape base = round_torus_shape(t);
  const double scale = std::exp(-w);
  TorusShape shape;
  shape.kappa_theta = scale * (base.kappa_theta + w1);
  shape.kappa_phi = scale * (base.kappa_phi + w1);
  shape.mean_curvature = 0.5 * (shape.kappa_theta + shape.kappa_phi);
  shape.second_form_norm2 = shape.kappa_theta * shape.kappa_theta +
                            shape.kappa_phi * shape.kappa_phi;
  shape.area_density = std::exp(2.0 * w) * base.area_density;
  // The induced metric rescales by the constant e^{2w(t)}, so it stays flat.
  shape.gauss_curvature = 0.0;
  shape.normal_sectional = -shape.kappa_theta * shape.kappa_phi;
  return shape;
}

TorusShape conformal_torus_shape(const ConformalProfile& p, double t) {
  return conformal_torus_shape(p.w(t), p.w1(t), t);
}

double gauss_equation_residual(const TorusShape& s) {
  const double rhs = 4.0 * s.mean_curvature * s.mean_curvature +
                     2.0 * s.normal_sectional - 2.0 * s.gauss_curvature;
  return s.second_form_norm2 - rhs;
}

double willmore_energy_round(double t, std::size_t n) {
  return willmore_quadrature(round_torus_shape(t), n);
}

double willmore_energy_conformal(const ConformalProfile& p, double t,
                                 std::size_t n) {
  return willmore_quadrature(conformal_torus_shape(p, t), n);
}

double willmore_density_residual(const ConformalProfile& p, double t) {
  const TorusShape base = round_torus_shape(t);
  const TorusShape bar = conformal_torus_shape(p, t);
  const double d0 = base.kappa_theta - base.kappa_phi;
  const double d1 = bar.kappa_theta - bar.kappa_phi;
  return std::abs(d1 * d1 * bar.area_density - d0 * d0 * base.area_density);
}

double torus_area_round(double t) {
  return round_torus_shape(t).area_density * chart_period * chart_period;
}

double torus_area_conformal(const ConformalProfile& p, double t) {
  return conformal_torus_shape(p, t).area_density * chart_period *
         chart_period;
}

namespace {

template <typename ShapeAt>
std::vector<WillmoreScanRow> scan_impl(std::size_t samples, double t_max,
                                       std::size_t quad_n, ShapeAt&& shape_at) {
  if (samples < 2)
    throw std::invalid_argument("willmore scan needs >= 2 samples");
  const double end = clamp_scan_end(t_max);
  std::vector<WillmoreScanRow> rows;
  rows.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t =
        end * static_cast<double>(k) / static_cast<double>(samples - 1);
    WillmoreScanRow row;
    row.t = t;
    row.shape = shape_at(t);
    row.willmore = willmore_quadrature(row.shape, quad_n);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<WillmoreScanRow> willmore_scan_round(std::size_t samples,
                                                 double t_max,
                                                 std::size_t quad_n) {
  return scan_impl(samples, t_max, quad_n,
                   [](double t) { return round_torus_shape(t); });
}

std::vector<WillmoreScanRow> willmore_scan_conformal(const ConformalProfile& p,
                                                     std::size_t samples,
                                                     double t_max,
                                                     std::size_t quad_n) {
  return scan_impl(samples, t_max, quad_n,
                   [&](double t) { return conformal_torus_shape(p, t); });
}

void write_willmore_csv(const std::vector<WillmoreScanRow>& scan,
                        std::ostream& os) {
  os.precision(17);
  os << "t,kappa_theta,kappa_phi,mean_curvature,second_form_norm2,willmore\n";
  for (const auto& row : scan) {
    os << row.t << ',' << row.shape.kappa_theta << ',' << row.shape.kappa_phi
       << ',' << row.shape.mean_curvature << ','
       << row.shape.second_form_norm2 << ',' << row.willmore << '\n';
  }
}

}  // namespace cliffstab
