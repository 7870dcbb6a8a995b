#pragma once

#include <cstddef>
#include <vector>

namespace cliffstab {

// Uniform periodic lattice on the flat square torus of side sqrt(2) pi.
// Quadrature weights are uniform (trapezoidal rule on a periodic domain),
// summing to the torus area 2 pi^2. Grid functions are stored row-major:
// value at (theta_i, phi_j) lives at index i * n + j.
struct TorusGrid {
  std::size_t n = 0;
  double period = 0.0;

  double spacing() const { return period / static_cast<double>(n); }
  double node(std::size_t i) const { return spacing() * static_cast<double>(i); }
  double weight() const { return spacing() * spacing(); }
  double area() const { return period * period; }
  std::size_t size() const { return n * n; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * n + j; }
};

// n must be even and at least 8 (mode pairing in the spectral code assumes
// a symmetric Nyquist split). Throws std::domain_error otherwise.
TorusGrid make_grid(std::size_t n);

using GridFunction = std::vector<double>;

// Samples f(theta, phi) at the grid nodes.
template <typename F>
GridFunction sample(const TorusGrid& g, F&& f) {
  GridFunction u(g.size());
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.n; ++j) {
      u[g.index(i, j)] = f(g.node(i), g.node(j));
    }
  }
  return u;
}

// Quadrature of a grid function: sum of values times the uniform weight.
double integrate(const TorusGrid& g, const GridFunction& u);

}  // namespace cliffstab
