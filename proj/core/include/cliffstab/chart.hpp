#pragma once

#include <array>
#include <numbers>

namespace cliffstab {

using Vec4 = std::array<double, 4>;

// Coordinates (theta, phi, t) on the unit 3-sphere minus two orthogonal
// great circles. t is the signed distance to the Clifford torus, |t| < pi/4;
// theta and phi are periodic with period sqrt(2)*pi.
struct ChartPoint {
  double theta = 0.0;
  double phi = 0.0;
  double t = 0.0;
};

// Diagonal coefficients of the round metric in chart coordinates,
//   g = a2 dtheta^2 + b2 dphi^2 + c2 dt^2.
struct RoundMetricCoeffs {
  double a2 = 1.0;  // 1 + sin(2t)
  double b2 = 1.0;  // 1 - sin(2t)
  double c2 = 1.0;
};

inline constexpr double chart_period = std::numbers::sqrt2 * std::numbers::pi;
inline constexpr double chart_t_limit = 0.25 * std::numbers::pi;
// Margin keeping evaluations away from the coordinate degeneracy at |t| = pi/4.
inline constexpr double chart_t_guard = 1e-12;

// Throws std::domain_error unless |t| < pi/4 - guard.
void require_in_chart(double t);

// Reduce an angle into [0, chart_period).
double reduce_angle(double x);

// Validated constructor: reduces the angles, rejects t outside the chart.
ChartPoint make_chart_point(double theta, double phi, double t);

// Embedding of the chart into the unit sphere in R^4:
//   sin(t + pi/4) (cos s2*theta, sin s2*theta, 0, 0)
// + cos(t + pi/4) (0, 0, cos s2*phi, sin s2*phi),   s2 = sqrt(2).
Vec4 embed(const ChartPoint& p);

RoundMetricCoeffs round_metric_coeffs(double t);

// Point of the Clifford torus (the t = 0 slice). Reading R^4 as C^2, both
// complex factors have |z_i|^2 = 1/2, i.e. radius 1/sqrt(2).
Vec4 clifford_point(double theta, double phi);

}  // namespace cliffstab
