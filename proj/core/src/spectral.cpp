#include "cliffstab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cliffstab/fourier.hpp"

namespace cliffstab {

std::vector<double> laplacian_eigs_analytic(std::size_t mmax) {
  if (mmax < 1) throw std::invalid_argument("mmax must be >= 1");
  const int m = static_cast<int>(mmax);
  std::vector<double> eigs;
  eigs.reserve((2 * mmax + 1) * (2 * mmax + 1));
  for (int a = -m; a <= m; ++a) {
    for (int b = -m; b <= m; ++b) {
      // Modes e^{i 2pi (a theta + b phi)/period} on the square torus of
      // side sqrt(2) pi: eigenvalue (2pi/period)^2 (a^2+b^2) = 2 (a^2+b^2).
      eigs.push_back(2.0 * static_cast<double>(a * a + b * b));
    }
  }
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

std::vector<double> laplacian_eigs_discrete(const TorusGrid& g,
                                            LaplacianBackend backend) {
  const std::size_t n = g.n;
  std::vector<double> eigs;
  eigs.reserve(n * n);
  const double base = 2.0 * std::numbers::pi / g.period;
  const double h = g.spacing();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      double lambda;
      if (backend == LaplacianBackend::fourier) {
        const double kp = base * fourier::frequency(p, n);
        const double kq = base * fourier::frequency(q, n);
        lambda = kp * kp + kq * kq;
      } else {
        const double sp =
            std::sin(std::numbers::pi * static_cast<double>(p) /
                     static_cast<double>(n));
        const double sq =
            std::sin(std::numbers::pi * static_cast<double>(q) /
                     static_cast<double>(n));
        lambda = 4.0 / (h * h) * (sp * sp + sq * sq);
      }
      eigs.push_back(lambda);
    }
  }
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

double backend_tol_zero(LaplacianBackend backend) {
  return backend == LaplacianBackend::fourier ? 1e-8 : 1e-3;
}

std::string backend_name(LaplacianBackend backend) {
  return backend == LaplacianBackend::fourier ? "fourier" : "fd";
}

LaplacianBackend parse_backend(const std::string& name) {
  if (name == "fourier") return LaplacianBackend::fourier;
  if (name == "fd") return LaplacianBackend::five_point;
  throw std::invalid_argument("unknown backend '" + name +
                              "' (expected fourier or fd)");
}

SpectrumReport jacobi_spectrum(double c, const TorusGrid& g,
                               std::size_t nmodes, LaplacianBackend backend) {
  if (!std::isfinite(c)) throw std::invalid_argument("potential must be finite");
  if (nmodes == 0 || nmodes > g.size()) {
    std::ostringstream msg;
    msg << "nmodes = " << nmodes << " exceeds grid capacity " << g.size();
    throw std::invalid_argument(msg.str());
  }

  const std::vector<double> lambdas = laplacian_eigs_discrete(g, backend);
  const double tol = backend_tol_zero(backend);

  SpectrumReport rep;
  rep.c = c;
  rep.backend = backend;
  rep.tol_zero = tol;
  rep.euler_characteristic = 0;
  rep.eigenvalues.reserve(nmodes);

  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double mu = lambdas[k] - c;
    if (k < nmodes) rep.eigenvalues.push_back(mu);
    if (mu < -tol) {
      ++rep.index;
    } else if (mu <= tol) {
      ++rep.nullity;
    }
  }
  rep.minimal_index = rep.index;

  // Stable under the mean-zero constraint iff every negative direction is
  // the constant mode, i.e. the second-smallest mu already clears -tol.
  const double second = lambdas.size() > 1 ? lambdas[1] - c : 0.0;
  rep.cmc_stable = second >= -tol;
  return rep;
}

double q_form(const GridFunction& u, double c, const TorusGrid& g) {
  if (u.size() != g.size()) {
    throw std::invalid_argument("grid function size does not match grid");
  }
  const fourier::Gradient grad = fourier::gradient(u, g);
  GridFunction grad2(u.size());
  GridFunction usq(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    grad2[k] = grad.d_theta[k] * grad.d_theta[k] + grad.d_phi[k] * grad.d_phi[k];
    usq[k] = u[k] * u[k];
  }
  return integrate(g, grad2) - c * integrate(g, usq);
}

}  // namespace cliffstab
