#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cliffstab/grid.hpp"

namespace cliffstab::fourier {

// In-place-style DFT of arbitrary length: radix-2 Cooley-Tukey when the
// size is a power of two, direct O(n^2) transform otherwise. Forward
// convention sum_j x_j e^{-2 pi i jk/n}, unnormalized; the inverse divides
// by n.
std::vector<std::complex<double>> dft(std::vector<std::complex<double>> x,
                                      bool inverse);

// Signed integer frequency of bin k in a length-n transform:
// 0, 1, ..., n/2, -(n/2 - 1), ..., -1.
int frequency(std::size_t k, std::size_t n);

// Row-major 2-D transform of a real grid function (n x n).
std::vector<std::complex<double>> dft2(const GridFunction& u, std::size_t n);
GridFunction idft2_real(const std::vector<std::complex<double>>& spec,
                        std::size_t n);

// Spectral partial derivatives of a real periodic grid function on the
// square torus. The Nyquist column/row is zeroed in the derivative (the
// real-signal convention), so inputs band-limited below n/2 differentiate
// exactly.
struct Gradient {
  GridFunction d_theta;
  GridFunction d_phi;
};

Gradient gradient(const GridFunction& u, const TorusGrid& g);

}  // namespace cliffstab::fourier
