#include "cliffstab/chart.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cliffstab {

void require_in_chart(double t) {
  if (!(std::abs(t) < chart_t_limit - chart_t_guard)) {
    std::ostringstream msg;
    msg << "t = " << t << " outside the chart range |t| < pi/4";
    throw std::domain_error(msg.str());
  }
}

double reduce_angle(double x) {
  double y = std::fmod(x, chart_period);
  if (y < 0.0) y += chart_period;
  // fmod of a value epsilon below a multiple of the period can round back
  // up to the period itself; fold that representative to zero.
  if (y >= chart_period) y = 0.0;
  return y;
}

ChartPoint make_chart_point(double theta, double phi, double t) {
  require_in_chart(t);
  return ChartPoint{reduce_angle(theta), reduce_angle(phi), t};
}

Vec4 embed(const ChartPoint& p) {
  const double s2 = std::numbers::sqrt2;
  const double radial = p.t + 0.25 * std::numbers::pi;
  const double u = std::sin(radial);
  const double v = std::cos(radial);
  return Vec4{u * std::cos(s2 * p.theta), u * std::sin(s2 * p.theta),
              v * std::cos(s2 * p.phi), v * std::sin(s2 * p.phi)};
}

RoundMetricCoeffs round_metric_coeffs(double t) {
  require_in_chart(t);
  const double s = std::sin(2.0 * t);
  return RoundMetricCoeffs{1.0 + s, 1.0 - s, 1.0};
}

Vec4 clifford_point(double theta, double phi) {
  return embed(ChartPoint{theta, phi, 0.0});
}

}  // namespace cliffstab
