#ifndef OPERT_MOMENTS_HPP
#define OPERT_MOMENTS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "opert/error.hpp"
#include "opert/polynomial.hpp"
#include "opert/recurrence.hpp"
#include "opert/scalar.hpp"

namespace opert {

/// A linear functional on polynomials given by its moments u_n = <u, x^n>,
/// n = 0..n_max.
template <Scalar T>
class MomentFunctional {
 public:
  MomentFunctional() = default;
  explicit MomentFunctional(std::vector<T> moments) : moments_(std::move(moments)) {}

  bool empty() const noexcept { return moments_.empty(); }
  std::size_t n_max() const noexcept { return moments_.empty() ? 0 : moments_.size() - 1; }

  const T& operator[](std::size_t n) const {
    if (n >= moments_.size())
      throw Error(ErrorKind::InsufficientMoments,
                  "moment " + std::to_string(n) + " not available (n_max " + std::to_string(n_max()) + ")", n);
    return moments_[n];
  }

  const std::vector<T>& moments() const noexcept { return moments_; }

  /// Multiplies every moment by c.
  MomentFunctional scaled(const T& c) const {
    std::vector<T> m = moments_;
    for (auto& x : m) x *= c;
    return MomentFunctional(std::move(m));
  }

  MomentFunctional truncated(std::size_t n) const {
    (void)(*this)[n];
    return MomentFunctional(std::vector<T>(moments_.begin(), moments_.begin() + n + 1));
  }

  friend bool operator==(const MomentFunctional&, const MomentFunctional&) = default;

 private:
  std::vector<T> moments_;
};

namespace detail {

// Gaussian elimination on a dense square matrix. Returns the pivots in order;
// stops (and returns the pivots found so far plus a zero) at the first
// column with no usable pivot. With `pivoting` false the k-th pivot is the
// ratio of consecutive leading principal minors.
template <Scalar T>
std::pair<std::vector<T>, int> eliminate(std::vector<std::vector<T>> a, bool pivoting, const Tolerance& tol) {
  const std::size_t n = a.size();
  std::vector<T> pivots;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    if (pivoting) {
      if constexpr (scalar_traits<T>::exact) {
        while (p < n && a[p][k] == T(0)) ++p;
      } else {
        for (std::size_t r = k + 1; r < n; ++r)
          if (abs(a[r][k]) > abs(a[p][k])) p = r;
        if (is_zero(a[p][k], tol)) p = n;
      }
      if (p == n) {
        pivots.push_back(T(0));
        return {pivots, sign};
      }
      if (p != k) {
        std::swap(a[p], a[k]);
        sign = -sign;
      }
    } else if (is_zero(a[k][k], tol)) {
      pivots.push_back(T(0));
      return {pivots, sign};
    }
    const T pivot = a[k][k];
    pivots.push_back(pivot);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a[r][k] == T(0)) continue;
      const T f = a[r][k] / pivot;
      for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
    }
  }
  return {pivots, sign};
}

template <Scalar T>
std::vector<std::vector<T>> hankel_matrix(const MomentFunctional<T>& u, std::size_t n) {
  std::vector<std::vector<T>> h(n + 1, std::vector<T>(n + 1));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) h[i][j] = u[i + j];
  return h;
}

}  // namespace detail

/// det [u_{i+j}]_{i,j=0..n}
template <Scalar T>
T hankel_determinant(const MomentFunctional<T>& u, std::size_t n) {
  if (u.empty() || 2 * n > u.n_max())
    throw Error(ErrorKind::InsufficientMoments, "Hankel determinant of order " + std::to_string(n) + " needs 2n moments");
  auto [pivots, sign] = detail::eliminate(detail::hankel_matrix(u, n), true, Tolerance{0.0});
  T det(sign);
  for (const auto& p : pivots) det *= p;
  return det;
}

/// First n <= N whose leading Hankel block H_n is singular.
template <Scalar T>
FirstFailure is_quasi_definite(const MomentFunctional<T>& u, std::size_t N, const Tolerance& tol = {}) {
  if (u.empty() || 2 * N > u.n_max())
    throw Error(ErrorKind::InsufficientMoments, "quasi-definiteness up to " + std::to_string(N) + " needs 2N moments");
  // Without pivoting, pivot k equals det H_k / det H_{k-1}.
  auto [pivots, sign] = detail::eliminate(detail::hankel_matrix(u, N), false, tol);
  for (std::size_t k = 0; k < pivots.size(); ++k)
    if (is_zero(pivots[k], tol)) return FirstFailure::at(k);
  return FirstFailure::success();
}

/// <u, p q>
template <Scalar T>
T inner_product(const MomentFunctional<T>& u, const Polynomial<T>& p, const Polynomial<T>& q) {
  const Polynomial<T> pq = p * q;
  if (pq.degree() > static_cast<long>(u.n_max()) || u.empty())
    throw Error(ErrorKind::InsufficientMoments, "inner product needs moments up to degree " + std::to_string(pq.degree()));
  T acc(0);
  for (std::size_t i = 0; i < pq.coefficients().size(); ++i) acc += pq.coefficients()[i] * u[i];
  return acc;
}

/// The functional h u: (h u)_n = sum_j h_j u_{n+j}. n_max shrinks by deg h.
template <Scalar T>
MomentFunctional<T> apply_polynomial(const Polynomial<T>& h, const MomentFunctional<T>& u) {
  if (h.is_zero()) return MomentFunctional<T>(std::vector<T>(u.moments().size(), T(0)));
  const std::size_t d = static_cast<std::size_t>(h.degree());
  if (u.empty() || d > u.n_max()) return {};
  std::vector<T> out(u.n_max() - d + 1, T(0));
  for (std::size_t n = 0; n < out.size(); ++n)
    for (std::size_t j = 0; j <= d; ++j) out[n] += h[j] * u[n + j];
  return MomentFunctional<T>(std::move(out));
}

/// The functional v with (x^2 + a x + b) v = k u, <v,1> = 1 and <v,x> = v1.
/// Quasi-definiteness of the result is not checked here.
template <Scalar T>
MomentFunctional<T> propagate_quadratic_modification(const MomentFunctional<T>& u, const T& a, const T& b, const T& k,
                                                     const T& v1, const Tolerance& tol = {}) {
  if (u.empty() || !equal(u[0], T(1), tol))
    throw Error(ErrorKind::Precondition, "propagate_quadratic_modification expects <u,1> = 1");
  std::vector<T> v;
  v.reserve(u.n_max() + 3);
  v.push_back(T(1));
  v.push_back(v1);
  for (std::size_t n = 0; n <= u.n_max(); ++n) v.push_back(k * u[n] - a * v[n + 1] - b * v[n]);
  return MomentFunctional<T>(std::move(v));
}

/// The functional w with (x - c) w = u and <w,1> = m0.
template <Scalar T>
MomentFunctional<T> divide_by_linear(const MomentFunctional<T>& u, const T& c, const T& m0) {
  std::vector<T> w;
  w.reserve(u.moments().size() + 1);
  w.push_back(m0);
  for (std::size_t n = 0; n < u.moments().size(); ++n) w.push_back(u[n] + c * w[n]);
  return MomentFunctional<T>(std::move(w));
}

/// Moments of the functional whose monic orthogonal polynomials follow `rec`,
/// normalized to u_0 = 1: u_n = (J^n)_{00}. Needs coefficients up to index
/// ceil(M/2).
template <Scalar T>
MomentFunctional<T> moments_from_recurrence(const RecurrenceCoefficients<T>& rec, std::size_t M) {
  const std::size_t reach = (M + 1) / 2;
  if (rec.empty() || reach > rec.n_max())
    throw Error(ErrorKind::Precondition, "moments_from_recurrence needs coefficients up to " + std::to_string(reach));
  const std::size_t size = reach + 1;
  // Row vector e_0^T J^n, truncated to the indices that can still reach 0.
  std::vector<T> row(size, T(0)), next(size);
  row[0] = T(1);
  std::vector<T> out;
  out.reserve(M + 1);
  for (std::size_t n = 0; n <= M; ++n) {
    out.push_back(row[0]);
    std::fill(next.begin(), next.end(), T(0));
    for (std::size_t k = 0; k < size; ++k) {
      if (row[k] == T(0)) continue;
      next[k] += row[k] * rec.beta(k);
      if (k + 1 < size) next[k + 1] += row[k];
      if (k >= 1) next[k - 1] += row[k] * rec.gamma(k);
    }
    std::swap(row, next);
  }
  return MomentFunctional<T>(std::move(out));
}

template <Scalar T>
struct OrthogonalSystem {
  std::vector<Polynomial<T>> polynomials;  // P_0..P_N
  std::vector<T> norms;                    // <u, P_n^2>
  RecurrenceCoefficients<T> recurrence;
};

/// Monic orthogonal polynomials of a quasi-definite functional by sequential
/// Gram-Schmidt on the monomials. This path never touches the 1-3 relation
/// formulas and serves as the independent oracle for them.
///
/// Needs moments up to 2N. Recurrence coefficients are returned as far as
/// the moments allow (beta_n needs u_{2n+1}). Throws
/// QuasiDefinitenessFailure(n) when <u, P_n^2> vanishes.
template <Scalar T>
OrthogonalSystem<T> smop_from_moments(const MomentFunctional<T>& u, std::size_t N, const Tolerance& tol = {}) {
  if (u.empty() || 2 * N > u.n_max() || u.n_max() < 1)
    throw Error(ErrorKind::InsufficientMoments, "smop_from_moments(" + std::to_string(N) + ") needs moments up to 2N");
  OrthogonalSystem<T> sys;
  for (std::size_t n = 0; n <= N; ++n) {
    const Polynomial<T> xn = Polynomial<T>::monomial(n);
    Polynomial<T> p = xn;
    for (std::size_t j = 0; j < n; ++j) p -= (inner_product(u, xn, sys.polynomials[j]) / sys.norms[j]) * sys.polynomials[j];
    const T norm = inner_product(u, p, p);
    if (is_zero(norm, tol))
      throw Error(ErrorKind::QuasiDefinitenessFailure, "<u, P_" + std::to_string(n) + "^2> vanishes", n);
    sys.polynomials.push_back(std::move(p));
    sys.norms.push_back(norm);
  }
  const std::size_t last = std::min(N, (u.n_max() - 1) / 2);
  std::vector<T> beta, gamma;
  for (std::size_t n = 0; n <= last; ++n) {
    const auto& p = sys.polynomials[n];
    beta.push_back(inner_product(u, p.shifted(), p) / sys.norms[n]);
    if (n >= 1) gamma.push_back(sys.norms[n] / sys.norms[n - 1]);
  }
  sys.recurrence = RecurrenceCoefficients<T>(std::move(beta), std::move(gamma));
  return sys;
}

}  // namespace opert

#endif  // OPERT_MOMENTS_HPP
