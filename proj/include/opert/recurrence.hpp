#ifndef OPERT_RECURRENCE_HPP
#define OPERT_RECURRENCE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "opert/error.hpp"
#include "opert/polynomial.hpp"
#include "opert/scalar.hpp"

namespace opert {

/// Coefficients of x P_n = P_{n+1} + beta_n P_n + gamma_n P_{n-1}.
///
/// beta is stored for 0..n_max and gamma for 1..n_max. gamma(0) reads as 0,
/// which is the convention used by every formula downstream. Non-vanishing of
/// gamma is not enforced here: transformed sequences may legitimately break
/// down and validate_favard reports where.
template <Scalar T>
class RecurrenceCoefficients {
 public:
  RecurrenceCoefficients() = default;

  /// `gamma` holds gamma_1, gamma_2, ... and must have exactly one element
  /// fewer than `beta`.
  RecurrenceCoefficients(std::vector<T> beta, std::vector<T> gamma) : beta_(std::move(beta)) {
    if (beta_.empty()) throw Error(ErrorKind::InvalidParameter, "recurrence needs beta_0");
    if (gamma.size() + 1 != beta_.size())
      throw Error(ErrorKind::InvalidParameter,
                  "recurrence needs beta_0..beta_N and gamma_1..gamma_N (got " + std::to_string(beta_.size()) +
                      " betas, " + std::to_string(gamma.size()) + " gammas)");
    gamma_.reserve(beta_.size());
    gamma_.push_back(T(0));
    gamma_.insert(gamma_.end(), std::make_move_iterator(gamma.begin()), std::make_move_iterator(gamma.end()));
  }

  bool empty() const noexcept { return beta_.empty(); }

  /// Largest index materialized for both sequences.
  std::size_t n_max() const noexcept { return beta_.empty() ? 0 : beta_.size() - 1; }

  const T& beta(std::size_t n) const {
    check(n);
    return beta_[n];
  }

  const T& gamma(std::size_t n) const {
    check(n);
    return gamma_[n];
  }

  std::span<const T> betas() const noexcept { return beta_; }
  /// gamma_1..gamma_N
  std::span<const T> gammas() const noexcept { return std::span<const T>(gamma_).subspan(gamma_.empty() ? 0 : 1); }

  /// Leading part with indices 0..n.
  RecurrenceCoefficients truncated(std::size_t n) const {
    check(n);
    return RecurrenceCoefficients(std::vector<T>(beta_.begin(), beta_.begin() + n + 1),
                                  std::vector<T>(gamma_.begin() + 1, gamma_.begin() + n + 1));
  }

  friend bool operator==(const RecurrenceCoefficients&, const RecurrenceCoefficients&) = default;

 private:
  void check(std::size_t n) const {
    if (beta_.empty() || n > n_max())
      throw Error(ErrorKind::Precondition,
                  "recurrence index " + std::to_string(n) + " beyond n_max " + std::to_string(n_max()));
  }

  std::vector<T> beta_;
  std::vector<T> gamma_;  // gamma_[0] == 0
};

/// P_0..P_N from the three-term recurrence. Uses beta_0..beta_{N-1} and
/// gamma_1..gamma_{N-1}; throws FavardViolation(n) on gamma_n == 0.
template <Scalar T>
std::vector<Polynomial<T>> generate_polynomials(const RecurrenceCoefficients<T>& rec, std::size_t N,
                                                const Tolerance& tol = {}) {
  if (N > 0 && (rec.empty() || N - 1 > rec.n_max()))
    throw Error(ErrorKind::Precondition, "generate_polynomials: N exceeds materialized coefficients");
  std::vector<Polynomial<T>> P;
  P.reserve(N + 1);
  P.push_back(Polynomial<T>::constant(T(1)));
  for (std::size_t n = 0; n < N; ++n) {
    Polynomial<T> next = P[n].shifted() - rec.beta(n) * P[n];
    if (n >= 1) {
      if (is_zero(rec.gamma(n), tol))
        throw Error(ErrorKind::FavardViolation, "gamma_" + std::to_string(n) + " vanishes", n);
      next -= rec.gamma(n) * P[n - 1];
    }
    P.push_back(std::move(next));
  }
  return P;
}

/// Horner evaluation; kept as a free function for symmetry with the rest of
/// the API.
template <Scalar T>
T eval_polynomial(const Polynomial<T>& p, const T& x) {
  return p(x);
}

/// First n in 1..min(N, n_max) with gamma_n == 0.
template <Scalar T>
FirstFailure validate_favard(const RecurrenceCoefficients<T>& rec, std::size_t N, const Tolerance& tol = {}) {
  if (rec.empty()) return FirstFailure::success();
  const std::size_t last = std::min(N, rec.n_max());
  for (std::size_t n = 1; n <= last; ++n)
    if (is_zero(rec.gamma(n), tol)) return FirstFailure::at(n);
  return FirstFailure::success();
}

}  // namespace opert

#endif  // OPERT_RECURRENCE_HPP
