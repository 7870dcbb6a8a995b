#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cliffstab/grid.hpp"

namespace cliffstab {

// Conformal dilation of the unit sphere S^{N-1} in R^N, parametrized by a
// point a in the open unit ball. a = 0 is the identity; otherwise the map
// pulls mass toward the pole a/|a|, with strength growing as |a| -> 1.
template <std::size_t N>
struct MobiusParam {
  std::array<double, N> a{};
};

// Solver clamp distance from the ball boundary.
inline constexpr double mobius_ball_margin = 1e-12;

// Applies the dilation: stereographic projection from the antipode -a/|a|,
// Euclidean scaling of the equatorial plane, inverse projection. Unit
// vectors map to unit vectors; the poles +-a/|a| are fixed.
template <std::size_t N>
std::array<double, N> mobius_apply(const MobiusParam<N>& m,
                                   const std::array<double, N>& x);

// Weighted samples of a sphere-valued map: samples are unit vectors, the
// weights carry rho * dA per node.
template <std::size_t N>
struct BalanceProblem {
  std::vector<std::array<double, N>> samples;
  std::vector<double> weights;
};

// Throws std::invalid_argument when a sample is off the sphere, a weight
// is nonpositive, or the sizes disagree.
template <std::size_t N>
void validate_problem(const BalanceProblem<N>& p);

// Weighted mean of the transformed samples; lies in the closed unit ball.
template <std::size_t N>
std::array<double, N> center_of_mass(const BalanceProblem<N>& p,
                                     const MobiusParam<N>& m);

class BalanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All samples coincide: no balancing dilation exists (the target is only
// reached in the boundary limit).
class DegenerateMass : public BalanceError {
 public:
  using BalanceError::BalanceError;
};

// Iteration budget exhausted; carries the final residual for diagnostics.
class NonConvergence : public BalanceError {
 public:
  NonConvergence(const std::string& what, double residual,
                 std::size_t iterations)
      : BalanceError(what), residual(residual), iterations(iterations) {}

  double residual = 0.0;
  std::size_t iterations = 0;
};

template <std::size_t N>
struct BalanceResult {
  MobiusParam<N> param;
  double residual = 0.0;
  std::size_t iterations = 0;
};

// Finds m with |center_of_mass(p, m)| <= tol by a damped fixed-point
// iteration on a (step against the mass, step size halved whenever the
// residual fails to decrease) with a finite-difference Newton polish once
// the residual is small. Throws DegenerateMass / NonConvergence.
template <std::size_t N>
BalanceResult<N> balance(const BalanceProblem<N>& p, double tol,
                         std::size_t max_iter);

extern template std::array<double, 3> mobius_apply(
    const MobiusParam<3>&, const std::array<double, 3>&);
extern template std::array<double, 4> mobius_apply(
    const MobiusParam<4>&, const std::array<double, 4>&);
extern template void validate_problem(const BalanceProblem<3>&);
extern template void validate_problem(const BalanceProblem<4>&);
extern template std::array<double, 3> center_of_mass(
    const BalanceProblem<3>&, const MobiusParam<3>&);
extern template std::array<double, 4> center_of_mass(
    const BalanceProblem<4>&, const MobiusParam<4>&);
extern template BalanceResult<3> balance(const BalanceProblem<3>&, double,
                                         std::size_t);
extern template BalanceResult<4> balance(const BalanceProblem<4>&, double,
                                         std::size_t);

// Samples of the flat torus embedding on a grid, with rho identically one
// or a caller-supplied positive grid function.
BalanceProblem<4> torus_embedding_problem(const TorusGrid& g);
BalanceProblem<4> torus_embedding_problem(const TorusGrid& g,
                                          const GridFunction& rho);

// Same samples pre-composed with the dilation of parameter b.
BalanceProblem<4> shifted_torus_problem(const TorusGrid& g,
                                        const MobiusParam<4>& b);

// Dirichlet energy of the (possibly transformed) sphere-valued map whose
// samples sit on the grid, by Fourier differentiation per component, next
// to twice the area of the pullback metric. The two agree for conformal
// maps.
struct EnergyPair {
  double dirichlet = 0.0;
  double two_area = 0.0;
};

EnergyPair conformal_energy(const BalanceProblem<4>& p, const TorusGrid& g,
                            const MobiusParam<4>& m);

}  // namespace cliffstab
