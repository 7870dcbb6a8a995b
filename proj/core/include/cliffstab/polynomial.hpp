#pragma once

#include <cstddef>
#include <vector>

namespace cliffstab {

// Dense polynomial in one variable, coefficients stored in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  double operator()(double x) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  // Antiderivative with zero constant term.
  Polynomial antiderivative() const {
    std::vector<double> a(c_.size() + 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      a[i + 1] = c_[i] / static_cast<double>(i + 1);
    }
    return Polynomial(std::move(a));
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial(std::vector<double>{0.0});
    std::vector<double> d(c_.size() - 1, 0.0);
    for (std::size_t i = 1; i < c_.size(); ++i) {
      d[i - 1] = c_[i] * static_cast<double>(i);
    }
    return Polynomial(std::move(d));
  }

  Polynomial& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }

  const std::vector<double>& coefficients() const { return c_; }

 private:
  std::vector<double> c_;
};

}  // namespace cliffstab
