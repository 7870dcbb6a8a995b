#include "cliffstab/conformal_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cliffstab/chart.hpp"

namespace cliffstab {

namespace {

constexpr double bump_r_limit = 0.125 * std::numbers::pi;  // pi/8

// Quintic step S(s) = s^3 (10 - 15 s + 6 s^2): S(0)=0, S(1)=1, with two
// vanishing derivatives at both ends, so 1 - S joins C^2 across t = r.
Polynomial positive_lobe() {
  return Polynomial({1.0, 0.0, 0.0, -10.0, 15.0, -6.0});
}

// Negative lobe shape -140 (u(1-u))^3 has integral exactly -1 over [0,1]
// and two vanishing derivatives at both ends; scaled by the amplitude A.
Polynomial negative_lobe(double amplitude) {
  Polynomial p({0.0, 0.0, 0.0, -140.0, 420.0, -420.0, 140.0});
  p *= amplitude;
  return p;
}

}  // namespace

BumpSpec make_bump(double r) {
  if (!(r > 0.0 && r < bump_r_limit)) {
    std::ostringstream msg;
    msg << "bump half-width r = " << r << " outside (0, pi/8)";
    throw std::domain_error(msg.str());
  }
  // The positive lobe has mean 1/2, the negative shape unit integral, so
  // amplitude 1/2 cancels the mean exactly.
  return BumpSpec{r, 0.5};
}

ConformalProfile::ConformalProfile(const BumpSpec& bump) : bump_(bump) {
  if (!(bump.r > 0.0 && bump.r < bump_r_limit)) {
    std::ostringstream msg;
    msg << "bump half-width r = " << bump.r << " outside (0, pi/8)";
    throw std::domain_error(msg.str());
  }
  const double r = bump.r;

  zeta_first_ = positive_lobe();
  zeta_second_ = negative_lobe(bump.negative_amplitude);

  dzeta_first_ = zeta_first_.derivative();
  dzeta_first_ *= 1.0 / r;
  dzeta_second_ = zeta_second_.derivative();
  dzeta_second_ *= 1.0 / r;

  // w' = int zeta: antiderivatives in the scaled variables pick up one
  // factor of r each; the second piece starts from the accumulated w'(r).
  w1_first_ = zeta_first_.antiderivative();
  w1_first_ *= r;
  const double w1_at_r = w1_first_(1.0);

  w1_second_ = zeta_second_.antiderivative();
  w1_second_ *= r;
  w1_second_ += Polynomial({w1_at_r});
  // Closed form for the accumulated integral: the first lobe has mean 1/2
  // and the negative shape unit integral, so w'(2r) = r (1/2 - A). Using
  // it instead of the Horner value at the seam keeps the balanced tail
  // slope exactly zero; the seam evaluation carries ~1 ulp of noise that
  // would otherwise be amplified by tan factors near the chart edge.
  w1_tail_ = r * (0.5 - bump.negative_amplitude);

  // w = int w': one more factor of r, plus the affine continuation across
  // the joins.
  w_first_ = w1_first_.antiderivative();
  w_first_ *= r;
  const double w_at_r = w_first_(1.0);

  w_second_ = zeta_second_.antiderivative().antiderivative();
  w_second_ *= r * r;
  w_second_ += Polynomial({w_at_r, r * w1_at_r});
  w_tail_ = w_second_(1.0);
}

ConformalProfile profile(const BumpSpec& bump) { return ConformalProfile(bump); }

double ConformalProfile::eval_piecewise(const Polynomial& first,
                                        const Polynomial& second,
                                        double tail_at_2r, double tail_slope,
                                        double t, bool odd) const {
  const double r = bump_.r;
  const double a = std::abs(t);
  double value;
  if (a <= r) {
    value = first(a / r);
  } else if (a < 2.0 * r) {
    value = second((a - r) / r);
  } else {
    // The seam t = 2r itself takes the tail branch so the closed-form
    // tail values hold exactly from the seam onward.
    value = tail_at_2r + tail_slope * (a - 2.0 * r);
  }
  if (odd && t < 0.0) value = -value;
  return value;
}

double ConformalProfile::zeta(double t) const {
  return eval_piecewise(zeta_first_, zeta_second_, 0.0, 0.0, t, false);
}

double ConformalProfile::zeta_prime(double t) const {
  return eval_piecewise(dzeta_first_, dzeta_second_, 0.0, 0.0, t, true);
}

double ConformalProfile::w(double t) const {
  return eval_piecewise(w_first_, w_second_, w_tail_, w1_tail_, t, false);
}

double ConformalProfile::w1(double t) const {
  return eval_piecewise(w1_first_, w1_second_, w1_tail_, 0.0, t, true);
}

double ConformalProfile::w2(double t) const { return zeta(t); }

bool BumpConditionReport::all() const {
  return starts_at_one.pass && decreasing_inner.pass && vanishes_at_r.pass &&
         negative_outer.pass && zero_tail.pass && zero_mean.pass &&
         bounded_by_one.pass && even_symmetry.pass;
}

BumpConditionReport verify_conditions(const BumpSpec& bump, double tol) {
  const ConformalProfile p(bump);
  const double r = bump.r;
  constexpr std::size_t m = 512;  // interior samples per segment

  BumpConditionReport rep;

  rep.starts_at_one.residual = std::abs(p.zeta(0.0) - 1.0);
  rep.starts_at_one.pass = rep.starts_at_one.residual <= tol;

  // Most-positive slope over the first lobe; nonpositive means decreasing.
  double worst_slope = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= m; ++k) {
    const double t = r * static_cast<double>(k) / static_cast<double>(m);
    worst_slope = std::max(worst_slope, p.zeta_prime(t));
  }
  rep.decreasing_inner.residual = std::max(worst_slope, 0.0);
  rep.decreasing_inner.pass = worst_slope <= tol;

  rep.vanishes_at_r.residual = std::abs(p.zeta(r));
  rep.vanishes_at_r.pass = rep.vanishes_at_r.residual <= tol;

  // Strict negativity on the open second lobe (endpoints excluded; the
  // join values are zero by construction).
  double outer_max = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < m; ++k) {
    const double t = r + r * static_cast<double>(k) / static_cast<double>(m);
    outer_max = std::max(outer_max, p.zeta(t));
  }
  rep.negative_outer.residual = outer_max;
  rep.negative_outer.pass = outer_max < 0.0;

  double tail_max = 0.0;
  const double tail_end = chart_t_limit - chart_t_guard;
  for (std::size_t k = 0; k <= m; ++k) {
    const double t = 2.0 * r + (tail_end - 2.0 * r) * static_cast<double>(k) /
                                   static_cast<double>(m);
    tail_max = std::max(tail_max, std::abs(p.zeta(t)));
  }
  rep.zero_tail.residual = tail_max;
  rep.zero_tail.pass = tail_max <= tol;

  // Integrate zeta itself rather than reading back w'(2r), so the check
  // stays independent of the antiderivative plumbing. Five-point
  // Gauss-Legendre per lobe is exact for polynomials up to degree nine.
  const auto gauss5 = [&p](double lo, double hi) {
    static constexpr double node[5] = {-0.9061798459386640,
                                       -0.5384693101056831, 0.0,
                                       0.5384693101056831, 0.9061798459386640};
    static constexpr double wt[5] = {0.2369268850561891, 0.4786286704993665,
                                     0.5688888888888889, 0.4786286704993665,
                                     0.2369268850561891};
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) acc += wt[i] * p.zeta(mid + half * node[i]);
    return half * acc;
  };
  rep.zero_mean.residual = std::abs(gauss5(0.0, r) + gauss5(r, 2.0 * r));
  rep.zero_mean.pass = rep.zero_mean.residual <= tol;

  double overshoot = -std::numeric_limits<double>::infinity();
  double asym = 0.0;
  for (std::size_t k = 0; k <= 2 * m; ++k) {
    const double t = tail_end * static_cast<double>(k) / static_cast<double>(2 * m);
    overshoot = std::max(overshoot, p.zeta(t) - 1.0);
    asym = std::max(asym, std::abs(p.zeta(-t) - p.zeta(t)));
  }
  rep.bounded_by_one.residual = std::max(overshoot, 0.0);
  rep.bounded_by_one.pass = overshoot <= tol;
  rep.even_symmetry.residual = asym;
  rep.even_symmetry.pass = asym <= tol;

  return rep;
}

double tail_constant(const ConformalProfile& p) {
  return std::exp(2.0 * p.tail_value());
}

void write_profile_csv(const ConformalProfile& p, std::ostream& os,
                       std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("profile csv needs >= 2 samples");
  const double limit = chart_t_limit - 1e-9;
  os.precision(17);
  os << "t,zeta,w,w1,w2\n";
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = -limit + 2.0 * limit * static_cast<double>(k) /
                                  static_cast<double>(samples - 1);
    os << t << ',' << p.zeta(t) << ',' << p.w(t) << ',' << p.w1(t) << ','
       << p.w2(t) << '\n';
  }
}

}  // namespace cliffstab
