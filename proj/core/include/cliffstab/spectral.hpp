#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cliffstab/grid.hpp"

namespace cliffstab {

// Laplacian eigenvalues of the flat square torus of side sqrt(2) pi:
// 2 (m^2 + k^2) over integer modes |m|, |k| <= mmax, ascending with
// multiplicity.
std::vector<double> laplacian_eigs_analytic(std::size_t mmax);

enum class LaplacianBackend {
  fourier,     // exact symbol (2 pi / period)^2 (m^2 + k^2)
  five_point,  // trigonometric symbol of the periodic 5-point stencil
};

// Eigenvalues of the discrete Laplacian on the grid, ascending, n^2 values.
std::vector<double> laplacian_eigs_discrete(const TorusGrid& g,
                                            LaplacianBackend backend);

// Zero-eigenvalue tolerance tiered by backend: the Fourier symbol is exact
// so 1e-8 suffices; the 5-point stencil carries O(h^2) symbol error and
// gets 1e-3 so discretization error cannot corrupt the integer counts.
double backend_tol_zero(LaplacianBackend backend);

// Names used on the command line and in reports: "fourier" and "fd".
std::string backend_name(LaplacianBackend backend);
LaplacianBackend parse_backend(const std::string& name);

// Spectrum of the stability operator L = Laplacian + c with constant
// potential c. `eigenvalues` holds mu = lambda - c for -L, ascending;
// index and nullity are counted over the full grid spectrum, not just the
// reported prefix. cmc_stable is the mean-zero-constrained verdict: every
// negative direction must be the constant mode, i.e. the second-smallest
// mu clears -tol_zero.
struct SpectrumReport {
  double c = 0.0;
  std::vector<double> eigenvalues;
  std::size_t index = 0;
  std::size_t nullity = 0;
  bool cmc_stable = false;
  std::size_t minimal_index = 0;
  int euler_characteristic = 0;
  double tol_zero = 0.0;
  LaplacianBackend backend = LaplacianBackend::fourier;
};

// Throws std::invalid_argument when nmodes exceeds the grid capacity n^2.
SpectrumReport jacobi_spectrum(double c, const TorusGrid& g,
                               std::size_t nmodes,
                               LaplacianBackend backend = LaplacianBackend::fourier);

// Quadratic form Q(u, u) = int |grad u|^2 - c int u^2 with the gradient by
// Fourier differentiation and integrals by grid weights.
double q_form(const GridFunction& u, double c, const TorusGrid& g);

}  // namespace cliffstab
