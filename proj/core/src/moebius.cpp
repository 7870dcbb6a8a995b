#include "cliffstab/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "cliffstab/chart.hpp"
#include "cliffstab/fourier.hpp"

namespace cliffstab {

namespace {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
double dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
double norm(const Vec<N>& a) {
  return std::sqrt(dot(a, a));
}

template <std::size_t N>
Vec<N> axpy(double alpha, const Vec<N>& x, const Vec<N>& y) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = alpha * x[i] + y[i];
  return r;
}

template <std::size_t N>
Vec<N> scale(const Vec<N>& a, double s) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] * s;
  return r;
}

template <std::size_t N>
Vec<N> clamp_ball(Vec<N> a) {
  const double limit = 1.0 - mobius_ball_margin;
  const double len = norm(a);
  if (len > limit) a = scale(a, limit / len);
  return a;
}

// Solves the small dense system J x = b by Gaussian elimination with
// partial pivoting; empty result for a (numerically) singular Jacobian.
template <std::size_t N>
std::optional<Vec<N>> solve(std::array<std::array<double, N>, N> J, Vec<N> b) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < N; ++row) {
      if (std::abs(J[row][col]) > std::abs(J[pivot][col])) pivot = row;
    }
    if (std::abs(J[pivot][col]) < 1e-14) return std::nullopt;
    std::swap(J[col], J[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < N; ++row) {
      const double f = J[row][col] / J[col][col];
      for (std::size_t k = col; k < N; ++k) J[row][k] -= f * J[col][k];
      b[row] -= f * b[col];
    }
  }
  Vec<N> x{};
  for (std::size_t row = N; row-- > 0;) {
    double acc = b[row];
    for (std::size_t k = row + 1; k < N; ++k) acc -= J[row][k] * x[k];
    x[row] = acc / J[row][row];
  }
  return x;
}

}  // namespace

template <std::size_t N>
std::array<double, N> mobius_apply(const MobiusParam<N>& m,
                                   const std::array<double, N>& x) {
  const double alen = norm(m.a);
  if (alen == 0.0) return x;

  const Vec<N> pole = scale(m.a, 1.0 / alen);
  const double xp = dot(x, pole);
  // Stereographic projection from the antipode -pole maps the antipode
  // itself to infinity; the plane dilation fixes infinity, so the antipode
  // is a fixed point and is returned directly.
  if (1.0 + xp <= 1e-15) return scale(pole, -1.0);

  // Project onto the equatorial hyperplane pole^perp.
  Vec<N> y = scale(axpy(-xp, pole, x), 1.0 / (1.0 + xp));

  // In this projection the pole sits at the origin, so pulling mass toward
  // the pole shrinks the plane: factor (1-|a|)/(1+|a|) < 1, approaching 0
  // as |a| -> 1.
  y = scale(y, (1.0 - alen) / (1.0 + alen));

  // Inverse projection from -pole.
  const double y2 = dot(y, y);
  Vec<N> out = axpy(2.0 / (1.0 + y2), y, scale(pole, (1.0 - y2) / (1.0 + y2)));
  return scale(out, 1.0 / norm(out));
}

template <std::size_t N>
void validate_problem(const BalanceProblem<N>& p) {
  if (p.samples.empty() || p.samples.size() != p.weights.size()) {
    throw std::invalid_argument("balance problem sizes are inconsistent");
  }
  for (const auto& s : p.samples) {
    if (std::abs(norm(s) - 1.0) > 1e-12) {
      throw std::invalid_argument("balance sample is off the unit sphere");
    }
  }
  for (double w : p.weights) {
    if (!(w > 0.0)) throw std::invalid_argument("balance weight must be > 0");
  }
}

template <std::size_t N>
std::array<double, N> center_of_mass(const BalanceProblem<N>& p,
                                     const MobiusParam<N>& m) {
  Vec<N> acc{};
  double total = 0.0;
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    acc = axpy(p.weights[i], mobius_apply(m, p.samples[i]), acc);
    total += p.weights[i];
  }
  return scale(acc, 1.0 / total);
}

namespace {

// Central-difference Jacobian of G(a) = center_of_mass(p, a).
template <std::size_t N>
std::optional<Vec<N>> newton_step(const BalanceProblem<N>& p, const Vec<N>& a,
                                  const Vec<N>& G) {
  constexpr double h = 1e-6;
  std::array<std::array<double, N>, N> J{};
  for (std::size_t j = 0; j < N; ++j) {
    Vec<N> ap = a, am = a;
    ap[j] += h;
    am[j] -= h;
    const Vec<N> Gp = center_of_mass(p, MobiusParam<N>{clamp_ball(ap)});
    const Vec<N> Gm = center_of_mass(p, MobiusParam<N>{clamp_ball(am)});
    for (std::size_t i = 0; i < N; ++i) J[i][j] = (Gp[i] - Gm[i]) / (2.0 * h);
  }
  return solve(J, G);
}

}  // namespace

template <std::size_t N>
BalanceResult<N> balance(const BalanceProblem<N>& p, double tol,
                         std::size_t max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("balance tol must be > 0");
  validate_problem(p);

  double spread = 0.0;
  for (const auto& s : p.samples) {
    Vec<N> d = axpy(-1.0, p.samples.front(), s);
    spread = std::max(spread, norm(d));
  }
  if (spread <= 1e-12) {
    throw DegenerateMass(
        "all samples coincide; no balancing dilation exists (boundary limit)");
  }

  MobiusParam<N> m{};
  Vec<N> G = center_of_mass(p, m);
  double res = norm(G);
  double eta = 1.0;
  std::size_t it = 0;

  while (res > tol && it < max_iter) {
    ++it;
    bool accepted = false;

    // Newton polish once the fixed-point iteration is in the basin.
    if (res < 1e-3) {
      if (auto delta = newton_step(p, m.a, G)) {
        const Vec<N> cand = clamp_ball(axpy(-1.0, *delta, m.a));
        const Vec<N> Gc = center_of_mass(p, MobiusParam<N>{cand});
        const double rc = norm(Gc);
        if (rc < res) {
          m.a = cand;
          G = Gc;
          res = rc;
          accepted = true;
        }
      }
    }

    if (!accepted) {
      // Step against the mass; halve the damping until the residual drops.
      bool improved = false;
      while (eta >= 1e-14) {
        const Vec<N> cand = clamp_ball(axpy(-eta, G, m.a));
        const Vec<N> Gc = center_of_mass(p, MobiusParam<N>{cand});
        const double rc = norm(Gc);
        if (rc < res) {
          m.a = cand;
          G = Gc;
          res = rc;
          eta = std::min(1.0, eta * 1.5);
          improved = true;
          break;
        }
        eta *= 0.5;
      }
      if (!improved) break;  // no decrease possible at any step size
    }
  }

  if (res > tol) {
    std::ostringstream msg;
    msg << "balance did not reach tol = " << tol << " after " << it
        << " iterations (residual " << res << ")";
    throw NonConvergence(msg.str(), res, it);
  }
  return BalanceResult<N>{m, res, it};
}

template std::array<double, 3> mobius_apply(const MobiusParam<3>&,
                                            const std::array<double, 3>&);
template std::array<double, 4> mobius_apply(const MobiusParam<4>&,
                                            const std::array<double, 4>&);
template void validate_problem(const BalanceProblem<3>&);
template void validate_problem(const BalanceProblem<4>&);
template std::array<double, 3> center_of_mass(const BalanceProblem<3>&,
                                              const MobiusParam<3>&);
template std::array<double, 4> center_of_mass(const BalanceProblem<4>&,
                                              const MobiusParam<4>&);
template BalanceResult<3> balance(const BalanceProblem<3>&, double,
                                  std::size_t);
template BalanceResult<4> balance(const BalanceProblem<4>&, double,
                                  std::size_t);

BalanceProblem<4> torus_embedding_problem(const TorusGrid& g) {
  return torus_embedding_problem(g, GridFunction(g.size(), 1.0));
}

BalanceProblem<4> torus_embedding_problem(const TorusGrid& g,
                                          const GridFunction& rho) {
  if (rho.size() != g.size()) {
    throw std::invalid_argument("rho size does not match grid");
  }
  BalanceProblem<4> p;
  p.samples.reserve(g.size());
  p.weights.reserve(g.size());
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.n; ++j) {
      p.samples.push_back(clifford_point(g.node(i), g.node(j)));
      p.weights.push_back(rho[g.index(i, j)] * g.weight());
    }
  }
  return p;
}

BalanceProblem<4> shifted_torus_problem(const TorusGrid& g,
                                        const MobiusParam<4>& b) {
  BalanceProblem<4> p = torus_embedding_problem(g);
  for (auto& s : p.samples) s = mobius_apply(b, s);
  return p;
}

EnergyPair conformal_energy(const BalanceProblem<4>& p, const TorusGrid& g,
                            const MobiusParam<4>& m) {
  if (p.samples.size() != g.size()) {
    throw std::invalid_argument("samples are not arranged on the grid");
  }

  // Component functions of the transformed map on the grid.
  std::array<fourier::Gradient, 4> grad;
  for (std::size_t d = 0; d < 4; ++d) {
    GridFunction comp(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
      comp[k] = mobius_apply(m, p.samples[k])[d];
    }
    grad[d] = fourier::gradient(comp, g);
  }

  GridFunction dirichlet_density(g.size());
  GridFunction area_density(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    double E = 0.0, F = 0.0, G2 = 0.0;
    for (std::size_t d = 0; d < 4; ++d) {
      E += grad[d].d_theta[k] * grad[d].d_theta[k];
      F += grad[d].d_theta[k] * grad[d].d_phi[k];
      G2 += grad[d].d_phi[k] * grad[d].d_phi[k];
    }
    dirichlet_density[k] = E + G2;
    area_density[k] = std::sqrt(std::max(E * G2 - F * F, 0.0));
  }
  return EnergyPair{integrate(g, dirichlet_density),
                    2.0 * integrate(g, area_density)};
}

}  // namespace cliffstab
