#ifndef OPERT_POLYNOMIAL_HPP
#define OPERT_POLYNOMIAL_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "opert/scalar.hpp"

namespace opert {

/// Dense polynomial, coefficients lowest degree first. The zero polynomial
/// has no coefficients and degree -1.
template <Scalar T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { normalize(); }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }

  static Polynomial monomial(std::size_t degree) {
    std::vector<T> c(degree + 1, T(0));
    c.back() = T(1);
    return Polynomial(std::move(c));
  }

  /// x^2 + a x + b
  static Polynomial monic_quadratic(const T& a, const T& b) { return Polynomial({b, a, T(1)}); }

  /// x - c
  static Polynomial linear_factor(const T& c) { return Polynomial({T(-c), T(1)}); }

  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Coefficient of x^i; zero beyond the degree.
  T operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }

  const std::vector<T>& coefficients() const noexcept { return coeffs_; }

  T leading() const { return coeffs_.empty() ? T(0) : coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == T(1); }

  /// Horner evaluation.
  T operator()(const T& x) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Multiplication by x.
  Polynomial shifted() const {
    if (coeffs_.empty()) return {};
    std::vector<T> c;
    c.reserve(coeffs_.size() + 1);
    c.push_back(T(0));
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(c));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }

  Polynomial& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    normalize();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Coefficient-wise comparison under the scalar tolerance.
  bool approx_equal(const Polynomial& o, const Tolerance& tol = {}) const {
    const std::size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (!equal((*this)[i], o[i], tol)) return false;
    return true;
  }

  /// p(x^2) as a polynomial in x.
  Polynomial compose_square() const {
    if (coeffs_.empty()) return {};
    std::vector<T> c(2 * coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[2 * i] = coeffs_[i];
    return Polynomial(std::move(c));
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

}  // namespace opert

#endif  // OPERT_POLYNOMIAL_HPP
