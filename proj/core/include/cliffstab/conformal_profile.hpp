#pragma once

#include <iosfwd>

#include "cliffstab/polynomial.hpp"

namespace cliffstab {

// Even C^2 bump zeta on (-pi/4, pi/4):
//   [0, r]   zeta(t) = 1 - S(t/r),  S(s) = s^3 (10 - 15 s + 6 s^2)
//   [r, 2r]  zeta(t) = -A * 140 * (u (1-u))^3,  u = (t - r)/r
//   [2r, ..) zeta = 0
// extended evenly. The positive lobe has mean 1/2 over [0, r] and the
// negative lobe shape has unit integral over [r, 2r], so A = 1/2 makes
// the integral of zeta over [0, 2r] vanish exactly.
struct BumpSpec {
  double r = 0.0;                   // lobe half-width, 0 < r < pi/8
  double negative_amplitude = 0.5;  // A
};

// Validated factory for the standard bump. Throws std::domain_error for
// r outside (0, pi/8).
BumpSpec make_bump(double r);

// The conformal factor w and its derivatives as exact piecewise-polynomial
// antiderivatives of zeta:
//   w(t) = int_0^t int_0^s zeta(x) dx ds,   w'' = zeta.
// w is even, w' is odd, and w is constant on [2r, pi/4).
class ConformalProfile {
 public:
  explicit ConformalProfile(const BumpSpec& bump);

  const BumpSpec& bump() const { return bump_; }

  double zeta(double t) const;
  double zeta_prime(double t) const;
  double w(double t) const;
  double w1(double t) const;  // dw/dt
  double w2(double t) const;  // d2w/dt2, equals zeta
  double tail_value() const { return w_tail_; }

 private:
  // Evaluates one of the piecewise quantities at t. Pieces are polynomials
  // in the scaled variables s = |t|/r and u = (|t| - r)/r with the r
  // scalings folded into the coefficients; the tail is affine in |t| - 2r
  // (slope zero for a well-formed bump, nonzero when the amplitude has
  // been doctored away from the zero-mean value). `odd` flips the sign for
  // negative t.
  double eval_piecewise(const Polynomial& first, const Polynomial& second,
                        double tail_at_2r, double tail_slope, double t,
                        bool odd) const;

  BumpSpec bump_;
  Polynomial zeta_first_, zeta_second_;
  Polynomial dzeta_first_, dzeta_second_;
  Polynomial w1_first_, w1_second_;
  Polynomial w_first_, w_second_;
  double w1_tail_ = 0.0;  // w'(2r); exactly 0 when the lobes cancel
  double w_tail_ = 0.0;   // w(2r)
};

ConformalProfile profile(const BumpSpec& bump);

struct BumpConditionReport {
  struct Item {
    bool pass = false;
    double residual = 0.0;
  };
  Item starts_at_one;        // zeta(0) = 1
  Item decreasing_inner;     // zeta decreasing on (0, r)
  Item vanishes_at_r;        // zeta(r) = 0
  Item negative_outer;       // zeta < 0 on (r, 2r)
  Item zero_tail;            // zeta = 0 on [2r, pi/4)
  Item zero_mean;            // int_0^{2r} zeta = 0
  Item bounded_by_one;       // zeta <= 1 everywhere
  Item even_symmetry;        // zeta(-t) = zeta(t)

  bool all() const;
};

// Checks the bump conditions on a dense grid together with the exact
// polynomial facts (joins, integral in closed form). Failures are reported,
// not thrown, so doctored inputs can be inspected.
BumpConditionReport verify_conditions(const BumpSpec& bump, double tol);

// Constant C = e^{2 w(2r)} with g_bar = C g on the tail |t| >= 2r.
double tail_constant(const ConformalProfile& p);

// CSV columns: t, zeta, w, w1, w2.
void write_profile_csv(const ConformalProfile& p, std::ostream& os,
                       std::size_t samples = 513);

}  // namespace cliffstab
