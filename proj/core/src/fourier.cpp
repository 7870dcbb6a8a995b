#include "cliffstab/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace cliffstab::fourier {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<std::complex<double>>& x, bool inverse) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang =
        (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> step(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> tw(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = x[i + k];
        const std::complex<double> v = x[i + k + len / 2] * tw;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        tw *= step;
      }
    }
  }
}

std::vector<std::complex<double>> dft_direct(
    const std::vector<std::complex<double>>& x, bool inverse) {
  const std::size_t n = x.size();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> y(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * std::numbers::pi *
                         static_cast<double>(j) * static_cast<double>(k) /
                         static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    y[k] = acc;
  }
  return y;
}

}  // namespace

std::vector<std::complex<double>> dft(std::vector<std::complex<double>> x,
                                      bool inverse) {
  const std::size_t n = x.size();
  if (n == 0) return x;
  if (is_power_of_two(n)) {
    fft_radix2(x, inverse);
  } else {
    x = dft_direct(x, inverse);
  }
  if (inverse) {
    for (auto& v : x) v /= static_cast<double>(n);
  }
  return x;
}

int frequency(std::size_t k, std::size_t n) {
  return k <= n / 2 ? static_cast<int>(k)
                    : static_cast<int>(k) - static_cast<int>(n);
}

std::vector<std::complex<double>> dft2(const GridFunction& u, std::size_t n) {
  if (u.size() != n * n) {
    throw std::invalid_argument("grid function size does not match n x n");
  }
  std::vector<std::complex<double>> a(u.begin(), u.end());
  std::vector<std::complex<double>> line(n);
  // rows
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) line[j] = a[i * n + j];
    line = dft(std::move(line), false);
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = line[j];
  }
  // columns
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) line[i] = a[i * n + j];
    line = dft(std::move(line), false);
    for (std::size_t i = 0; i < n; ++i) a[i * n + j] = line[i];
  }
  return a;
}

GridFunction idft2_real(const std::vector<std::complex<double>>& spec,
                        std::size_t n) {
  if (spec.size() != n * n) {
    throw std::invalid_argument("spectrum size does not match n x n");
  }
  std::vector<std::complex<double>> a = spec;
  std::vector<std::complex<double>> line(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) line[i] = a[i * n + j];
    line = dft(std::move(line), true);
    for (std::size_t i = 0; i < n; ++i) a[i * n + j] = line[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) line[j] = a[i * n + j];
    line = dft(std::move(line), true);
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = line[j];
  }
  GridFunction out(n * n);
  for (std::size_t k = 0; k < n * n; ++k) out[k] = a[k].real();
  return out;
}

Gradient gradient(const GridFunction& u, const TorusGrid& g) {
  const std::size_t n = g.n;
  const auto spec = dft2(u, n);
  const double base = 2.0 * std::numbers::pi / g.period;

  std::vector<std::complex<double>> dth(n * n), dph(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    // Nyquist rows/columns get derivative zero (real-signal convention).
    const double ki = (i == n / 2) ? 0.0 : base * frequency(i, n);
    for (std::size_t j = 0; j < n; ++j) {
      const double kj = (j == n / 2) ? 0.0 : base * frequency(j, n);
      const std::complex<double> v = spec[i * n + j];
      dth[i * n + j] = std::complex<double>(0.0, ki) * v;
      dph[i * n + j] = std::complex<double>(0.0, kj) * v;
    }
  }
  return Gradient{idft2_real(dth, n), idft2_real(dph, n)};
}

}  // namespace cliffstab::fourier
