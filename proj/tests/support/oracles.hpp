#pragma once

// Independent numerical oracles for the tests. Everything the library
// states in closed form is re-derived here by brute force -- adaptive
// quadrature, nested finite differences on the raw metric, derivatives of
// the ambient embedding -- so that agreement between the two is evidence,
// not circularity. Nothing in this header calls the closed-form curvature
// routines it is used to check.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>

#include "cliffstab/chart.hpp"

namespace oracles {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;
using MetricField = std::function<Mat3(const Vec3&)>;

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature with interval-halving error control.

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a,
                    double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("adaptive simpson: depth exhausted");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-13) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = detail::simpson(a, fa, b, fb, fm);
  return detail::adapt(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

// ---------------------------------------------------------------------------
// Finite-difference Ricci tensor of an arbitrary 3x3 metric field, by the
// textbook Christoffel route:
//   Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
//   Ric_ij     = d_k Gamma^k_ij - d_i Gamma^k_kj
//              + Gamma^k_kl Gamma^l_ij - Gamma^k_il Gamma^l_kj
// with every derivative a central difference of step h. The plain version
// carries O(h^2) truncation; the Richardson version cancels it to O(h^4),
// which matters inside bump lobes where fourth derivatives reach ~26/r^2.

namespace detail {

inline Mat3 inverse3(const Mat3& g) {
  const double det =
      g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
      g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
      g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  if (std::abs(det) < 1e-300) throw std::runtime_error("singular metric");
  const double inv = 1.0 / det;
  Mat3 out;
  out[0][0] = inv * (g[1][1] * g[2][2] - g[1][2] * g[2][1]);
  out[0][1] = inv * (g[0][2] * g[2][1] - g[0][1] * g[2][2]);
  out[0][2] = inv * (g[0][1] * g[1][2] - g[0][2] * g[1][1]);
  out[1][0] = inv * (g[1][2] * g[2][0] - g[1][0] * g[2][2]);
  out[1][1] = inv * (g[0][0] * g[2][2] - g[0][2] * g[2][0]);
  out[1][2] = inv * (g[0][2] * g[1][0] - g[0][0] * g[1][2]);
  out[2][0] = inv * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  out[2][1] = inv * (g[0][1] * g[2][0] - g[0][0] * g[2][1]);
  out[2][2] = inv * (g[0][0] * g[1][1] - g[0][1] * g[1][0]);
  return out;
}

// d g / d x_dir by central difference.
inline Mat3 metric_partial(const MetricField& g, const Vec3& x, int dir,
                           double h) {
  Vec3 xp = x;
  Vec3 xm = x;
  xp[static_cast<std::size_t>(dir)] += h;
  xm[static_cast<std::size_t>(dir)] -= h;
  const Mat3 gp = g(xp);
  const Mat3 gm = g(xm);
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (gp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
           gm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
          (2.0 * h);
  return out;
}

using Christoffel = std::array<Mat3, 3>;  // [k][i][j]

inline Christoffel christoffel(const MetricField& g, const Vec3& x, double h) {
  const Mat3 ginv = inverse3(g(x));
  std::array<Mat3, 3> dg;  // dg[d][i][j] = d_d g_ij
  for (int d = 0; d < 3; ++d)
    dg[static_cast<std::size_t>(d)] = metric_partial(g, x, d, h);
  Christoffel gam{};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (std::size_t l = 0; l < 3; ++l)
          acc += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        gam[k][i][j] = 0.5 * acc;
      }
  return gam;
}

inline Mat3 ricci_once(const MetricField& g, const Vec3& x, double h) {
  std::array<Christoffel, 3> dgam;  // dgam[d] = d_d Gamma
  for (int d = 0; d < 3; ++d) {
    Vec3 xp = x;
    Vec3 xm = x;
    xp[static_cast<std::size_t>(d)] += h;
    xm[static_cast<std::size_t>(d)] -= h;
    const Christoffel gp = christoffel(g, xp, h);
    const Christoffel gm = christoffel(g, xm, h);
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          dgam[static_cast<std::size_t>(d)][k][i][j] =
              (gp[k][i][j] - gm[k][i][j]) / (2.0 * h);
  }
  const Christoffel gam = christoffel(g, x, h);
  Mat3 ric{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        acc += dgam[k][k][i][j] - dgam[i][k][k][j];
        for (std::size_t l = 0; l < 3; ++l)
          acc += gam[k][k][l] * gam[l][i][j] - gam[k][i][l] * gam[l][k][j];
      }
      ric[i][j] = acc;
    }
  return ric;
}

}  // namespace detail

inline Mat3 fd_ricci(const MetricField& g, const Vec3& x, double h) {
  return detail::ricci_once(g, x, h);
}

// One Richardson level: R(h), R(h/2) are both O(h^2) accurate with a
// common leading coefficient, so (4 R(h/2) - R(h)) / 3 is O(h^4).
inline Mat3 fd_ricci_richardson(const MetricField& g, const Vec3& x,
                                double h) {
  const Mat3 coarse = detail::ricci_once(g, x, h);
  const Mat3 fine = detail::ricci_once(g, x, 0.5 * h);
  Mat3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      out[i][j] = (4.0 * fine[i][j] - coarse[i][j]) / 3.0;
  return out;
}

// ---------------------------------------------------------------------------
// Surface data of the parallel torus at height t, measured from the ambient
// embedding alone: tangent vectors and second derivatives by central
// differences, the normal as the (FD) velocity of t. The library's closed
// forms never enter.

struct EmbeddedShape {
  double e = 0.0;           // |Phi_theta|^2
  double g = 0.0;           // |Phi_phi|^2
  double f = 0.0;           // <Phi_theta, Phi_phi>
  double kappa_theta = 0.0;  // -<Phi_thth, N> / E
  double kappa_phi = 0.0;    // -<Phi_phph, N> / G
  double area_density = 0.0;  // sqrt(EG - F^2)
};

inline EmbeddedShape embedded_shape(double t, double theta, double phi,
                                    double h) {
  using cliffstab::Vec4;
  const auto at = [&](double th, double ph, double tt) {
    return cliffstab::embed(cliffstab::ChartPoint{th, ph, tt});
  };
  const auto sub = [](const Vec4& a, const Vec4& b, double s) {
    Vec4 out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = (a[i] - b[i]) * s;
    return out;
  };
  const auto dot = [](const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
  };

  const Vec4 center = at(theta, phi, t);
  const Vec4 dth = sub(at(theta + h, phi, t), at(theta - h, phi, t),
                       1.0 / (2.0 * h));
  const Vec4 dph = sub(at(theta, phi + h, t), at(theta, phi - h, t),
                       1.0 / (2.0 * h));
  Vec4 dt = sub(at(theta, phi, t + h), at(theta, phi, t - h), 1.0 / (2.0 * h));
  const double nlen = std::sqrt(dot(dt, dt));
  for (auto& c : dt) c /= nlen;

  // Second differences; the ambient component along the surface normal is
  // the full second fundamental form because N is tangent to the sphere.
  Vec4 d2th = at(theta + h, phi, t);
  Vec4 d2ph = at(theta, phi + h, t);
  const Vec4 mth = at(theta - h, phi, t);
  const Vec4 mph = at(theta, phi - h, t);
  for (std::size_t i = 0; i < 4; ++i) {
    d2th[i] = (d2th[i] - 2.0 * center[i] + mth[i]) / (h * h);
    d2ph[i] = (d2ph[i] - 2.0 * center[i] + mph[i]) / (h * h);
  }

  EmbeddedShape s;
  s.e = dot(dth, dth);
  s.g = dot(dph, dph);
  s.f = dot(dth, dph);
  s.kappa_theta = -dot(d2th, dt) / s.e;
  s.kappa_phi = -dot(d2ph, dt) / s.g;
  s.area_density = std::sqrt(s.e * s.g - s.f * s.f);
  return s;
}

// ---------------------------------------------------------------------------
// Brioschi formula for the Gauss curvature of a 2D metric E, F, G given as
// callables of (theta, phi), all derivatives by central differences.

inline double brioschi_gauss(const std::function<double(double, double)>& E,
                             const std::function<double(double, double)>& F,
                             const std::function<double(double, double)>& G,
                             double th, double ph, double h) {
  const auto d1 = [h](const std::function<double(double, double)>& f,
                      double x, double y, bool wrt_first) {
    return wrt_first ? (f(x + h, y) - f(x - h, y)) / (2.0 * h)
                     : (f(x, y + h) - f(x, y - h)) / (2.0 * h);
  };
  const auto d2 = [h](const std::function<double(double, double)>& f,
                      double x, double y, int code) {
    if (code == 0)  // d^2/dx^2
      return (f(x + h, y) - 2.0 * f(x, y) + f(x - h, y)) / (h * h);
    if (code == 1)  // d^2/dy^2
      return (f(x, y + h) - 2.0 * f(x, y) + f(x, y - h)) / (h * h);
    return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) +
            f(x - h, y - h)) /
           (4.0 * h * h);
  };

  const double E0 = E(th, ph), F0 = F(th, ph), G0 = G(th, ph);
  const double Eu = d1(E, th, ph, true), Ev = d1(E, th, ph, false);
  const double Fu = d1(F, th, ph, true), Fv = d1(F, th, ph, false);
  const double Gu = d1(G, th, ph, true), Gv = d1(G, th, ph, false);
  const double Evv = d2(E, th, ph, 1);
  const double Guu = d2(G, th, ph, 0);
  const double Fuv = d2(F, th, ph, 2);

  const double m11 = -0.5 * Evv + Fuv - 0.5 * Guu;
  const double a[3][3] = {{m11, 0.5 * Eu, Fu - 0.5 * Ev},
                          {Fv - 0.5 * Gu, E0, F0},
                          {0.5 * Gv, F0, G0}};
  const double b[3][3] = {{0.0, 0.5 * Ev, 0.5 * Gu},
                          {0.5 * Ev, E0, F0},
                          {0.5 * Gu, F0, G0}};
  const auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double denom = E0 * G0 - F0 * F0;
  return (det3(a) - det3(b)) / (denom * denom);
}

}  // namespace oracles
