#ifndef OPERT_JACOBI_HPP
#define OPERT_JACOBI_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "opert/banded.hpp"
#include "opert/error.hpp"
#include "opert/onethree.hpp"
#include "opert/recurrence.hpp"
#include "opert/scalar.hpp"

namespace opert {

/// Monic Jacobi matrix of order `size`: diagonal beta_0..beta_{size-1},
/// superdiagonal 1, subdiagonal gamma_1..gamma_{size-1}.
template <Scalar T>
BandedMatrix<T> build_jacobi(const RecurrenceCoefficients<T>& rec, std::size_t size) {
  if (size == 0) return {};
  if (rec.empty() || size - 1 > rec.n_max())
    throw Error(ErrorKind::Precondition, "build_jacobi: size " + std::to_string(size) + " exceeds recurrence");
  BandedMatrix<T> J(size, 1, 1);
  for (std::size_t k = 0; k < size; ++k) {
    J.set(k, k, rec.beta(k));
    if (k + 1 < size) {
      J.set(k, k + 1, T(1));
      J.set(k + 1, k, rec.gamma(k + 1));
    }
  }
  return J;
}

/// Recurrence coefficients read back from a tridiagonal matrix with unit
/// superdiagonal.
template <Scalar T>
RecurrenceCoefficients<T> jacobi_coefficients(const BandedMatrix<T>& J) {
  if (J.size() == 0) throw Error(ErrorKind::Precondition, "empty matrix");
  if (!J.has_profile(1, 1)) throw Error(ErrorKind::BandProfileViolation, "matrix is not tridiagonal");
  std::vector<T> beta, gamma;
  for (std::size_t k = 0; k < J.size(); ++k) {
    beta.push_back(J.at(k, k));
    if (k + 1 < J.size()) {
      if (J.at(k, k + 1) != T(1))
        throw Error(ErrorKind::BandProfileViolation, "superdiagonal entry " + std::to_string(k) + " is not 1", k);
      gamma.push_back(J.at(k + 1, k));
    }
  }
  return RecurrenceCoefficients<T>(std::move(beta), std::move(gamma));
}

/// Q = M P: row k holds t_k, s_k, 1 in columns k-2, k-1, k.
template <Scalar T>
BandedMatrix<T> build_M(const OneThreeRelation<T>& rel, std::size_t size) {
  if (size == 0) return {};
  if (rel.empty() || size - 1 > rel.n_max())
    throw Error(ErrorKind::Precondition, "build_M: size " + std::to_string(size) + " exceeds relation");
  BandedMatrix<T> M(size, 2, 0);
  for (std::size_t k = 0; k < size; ++k) {
    M.set(k, k, T(1));
    if (k >= 1) M.set(k, k - 1, rel.s(k));
    if (k >= 2) M.set(k, k - 2, rel.t(k));
  }
  return M;
}

/// J^2 + a J + b I
template <Scalar T>
BandedMatrix<T> quadratic_of(const BandedMatrix<T>& J, const T& a, const T& b) {
  return (J * J + a * J).plus_identity(b);
}

/// N with J_P^2 + a J_P + b I = N M. J_P and M are passed two orders larger
/// than the result; the last two rows and columns of the solve are discarded
/// because truncating J_P^2 corrupts them. The result must be upper
/// triangular with bandwidth 2 and unit (k, k+2) entries, otherwise
/// BandProfileViolation is thrown.
template <Scalar T>
BandedMatrix<T> factor_N(const BandedMatrix<T>& JP, const BandedMatrix<T>& M, const T& a, const T& b) {
  if (JP.size() != M.size() || JP.size() < 3)
    throw Error(ErrorKind::Precondition, "factor_N needs matching matrices of order >= 3");
  const std::size_t size = JP.size() - 2;
  BandedMatrix<T> N = right_solve_unit_lower(quadratic_of(JP, a, b), M).leading(size);
  if (!N.has_profile(0, 2)) throw Error(ErrorKind::BandProfileViolation, "N is not upper triangular with bandwidth 2");
  for (std::size_t k = 0; k + 2 < size; ++k)
    if (N.at(k, k + 2) != T(1))
      throw Error(ErrorKind::BandProfileViolation, "N(" + std::to_string(k) + "," + std::to_string(k + 2) + ") != 1", k);
  return N.compacted();
}

template <Scalar T>
BandedMatrix<T> factor_N(const RecurrenceCoefficients<T>& rec, const OneThreeRelation<T>& rel, const T& a, const T& b,
                         std::size_t size) {
  return factor_N(build_jacobi(rec, size + 2), build_M(rel, size + 2), a, b);
}

template <Scalar T>
struct IdentityReport {
  std::size_t window = 0;
  T max_deviation{0};
  bool ok = true;
};

/// Compares J_Q^2 + a J_Q + b I with M N on the leading (size-2) window.
template <Scalar T>
IdentityReport<T> verify_quadratic_identity(const BandedMatrix<T>& JQ, const BandedMatrix<T>& M,
                                            const BandedMatrix<T>& N, const T& a, const T& b, const Tolerance& tol = {}) {
  IdentityReport<T> r;
  r.window = JQ.size() >= 2 ? JQ.size() - 2 : 0;
  const auto lhs = quadratic_of(JQ, a, b);
  const auto rhs = M * N;
  r.max_deviation = max_deviation(lhs, rhs, r.window);
  r.ok = equal_on_window(lhs, rhs, r.window, tol);
  return r;
}

/// Compares J_P^2 + a J_P + b I with N M on the leading (size-2) window.
template <Scalar T>
IdentityReport<T> verify_christoffel_identity(const BandedMatrix<T>& JP, const BandedMatrix<T>& M,
                                              const BandedMatrix<T>& N, const T& a, const T& b,
                                              const Tolerance& tol = {}) {
  IdentityReport<T> r;
  r.window = JP.size() >= 2 ? JP.size() - 2 : 0;
  const auto lhs = quadratic_of(JP, a, b);
  const auto rhs = N * M;
  r.max_deviation = max_deviation(lhs, rhs, r.window);
  r.ok = equal_on_window(lhs, rhs, r.window, tol);
  return r;
}

/// M J_P against J_Q M on the leading (size-1) window.
template <Scalar T>
IdentityReport<T> verify_intertwining(const BandedMatrix<T>& JP, const BandedMatrix<T>& JQ, const BandedMatrix<T>& M,
                                      const Tolerance& tol = {}) {
  IdentityReport<T> r;
  r.window = JP.size() >= 1 ? JP.size() - 1 : 0;
  const auto lhs = M * JP;
  const auto rhs = JQ * M;
  r.max_deviation = max_deviation(lhs, rhs, r.window);
  r.ok = equal_on_window(lhs, rhs, r.window, tol);
  return r;
}

template <Scalar T>
struct TruncatedTransform {
  BandedMatrix<T> JP, M, MJP, G, JQ;
};

/// (J_Q)_n from the truncated matrices alone: G = M J_P minus the rank-one
/// correction e_n (t_n d_n^T + s_n e_n^T) on the last row, then
/// J_Q = G M^{-1}. Needs rec to n-1 and rel to n.
template <Scalar T>
TruncatedTransform<T> truncated_transform_steps(const RecurrenceCoefficients<T>& rec, const OneThreeRelation<T>& rel,
                                                std::size_t n) {
  if (n == 0) throw Error(ErrorKind::Precondition, "truncated_transform needs n >= 1");
  if (rel.empty() || rel.n_max() < n)
    throw Error(ErrorKind::Precondition, "truncated_transform needs relation to index " + std::to_string(n));
  TruncatedTransform<T> out;
  out.JP = build_jacobi(rec, n);
  out.M = build_M(rel, n);
  out.MJP = out.M * out.JP;
  out.G = out.MJP;
  const std::size_t last = n - 1;
  out.G.set(last, last, out.G.at(last, last) - rel.s(n));
  if (n >= 2) out.G.set(last, last - 1, out.G.at(last, last - 1) - rel.t(n));
  out.JQ = right_solve_unit_lower(out.G, out.M);
  return out;
}

template <Scalar T>
BandedMatrix<T> truncated_transform(const RecurrenceCoefficients<T>& rec, const OneThreeRelation<T>& rel,
                                    std::size_t n) {
  return truncated_transform_steps(rec, rel, n).JQ;
}

/// Unit lower bidiagonal matrix with L(k, k-1) = sub[k] for 1 <= k < size.
/// sub[0] is ignored.
template <Scalar T>
BandedMatrix<T> unit_lower_bidiagonal(const std::vector<T>& sub, std::size_t size) {
  if (size == 0) return {};
  if (sub.size() < size) throw Error(ErrorKind::Precondition, "unit_lower_bidiagonal: sequence too short");
  BandedMatrix<T> L(size, 1, 0);
  for (std::size_t k = 0; k < size; ++k) {
    L.set(k, k, T(1));
    if (k >= 1) L.set(k, k - 1, sub[k]);
  }
  return L;
}

template <Scalar T>
struct DarbouxStep {
  BandedMatrix<T> U;       // diagonal r_k, superdiagonal 1
  BandedMatrix<T> result;  // L U + x I
};

/// Solves J - mu_tail e e^T - x I = U L for the upper bidiagonal U (unit
/// superdiagonal) and returns it with J' = L U + x I.
///
/// The diagonal fixes r_k = J_kk - x - mu_{k+1} (mu_tail on the last row);
/// the subdiagonal must then satisfy J_{k,k-1} = r_k mu_k. A mismatch means
/// no such factorization exists and is reported as FactorizationBreakdown(k).
template <Scalar T>
DarbouxStep<T> darboux_factor(const BandedMatrix<T>& J, const T& x, const BandedMatrix<T>& L, const T& mu_tail,
                              const Tolerance& tol = {}) {
  const std::size_t n = J.size();
  if (L.size() != n) throw Error(ErrorKind::Precondition, "darboux: matrix sizes differ");
  if (!J.has_profile(1, 1)) throw Error(ErrorKind::BandProfileViolation, "darboux: J is not tridiagonal");
  if (!L.has_profile(1, 0)) throw Error(ErrorKind::BandProfileViolation, "darboux: L is not lower bidiagonal");
  for (std::size_t k = 0; k < n; ++k) {
    if (L.at(k, k) != T(1)) throw Error(ErrorKind::BandProfileViolation, "darboux: L is not unit diagonal", k);
    if (k + 1 < n && J.at(k, k + 1) != T(1))
      throw Error(ErrorKind::BandProfileViolation, "darboux: J superdiagonal is not 1", k);
  }
  DarbouxStep<T> step;
  step.U = BandedMatrix<T>(n, 0, 1);
  std::vector<T> r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const T mu_next = k + 1 < n ? L.at(k + 1, k) : mu_tail;
    r[k] = J.at(k, k) - x - mu_next;
    step.U.set(k, k, r[k]);
    if (k + 1 < n) step.U.set(k, k + 1, T(1));
    if (k >= 1 && !equal(J.at(k, k - 1), r[k] * L.at(k, k - 1), tol))
      throw Error(ErrorKind::FactorizationBreakdown,
                  "no U L factorization: row " + std::to_string(k) + " subdiagonal does not match", k);
  }
  step.result = (L * step.U).plus_identity(x);
  return step;
}

template <Scalar T>
BandedMatrix<T> darboux_lu_step(const BandedMatrix<T>& J, const T& x, const BandedMatrix<T>& L, const T& mu_tail,
                                const Tolerance& tol = {}) {
  return darboux_factor(J, x, L, mu_tail, tol).result;
}

template <Scalar T>
struct LUFactors {
  BandedMatrix<T> L;  // unit lower bidiagonal
  BandedMatrix<T> U;  // upper bidiagonal, unit superdiagonal
};

/// J - x I = L U for a tridiagonal J with unit superdiagonal. Throws
/// FactorizationBreakdown(k) on a zero pivot.
template <Scalar T>
LUFactors<T> lu_factor_shifted(const BandedMatrix<T>& J, const T& x, const Tolerance& tol = {}) {
  const std::size_t n = J.size();
  if (!J.has_profile(1, 1)) throw Error(ErrorKind::BandProfileViolation, "lu_factor_shifted: J is not tridiagonal");
  LUFactors<T> f{BandedMatrix<T>(n, 1, 0), BandedMatrix<T>(n, 0, 1)};
  T d(0);
  for (std::size_t k = 0; k < n; ++k) {
    f.L.set(k, k, T(1));
    T pivot = J.at(k, k) - x;
    if (k >= 1) {
      if (is_zero(d, tol))
        throw Error(ErrorKind::FactorizationBreakdown, "zero pivot at row " + std::to_string(k - 1), k - 1);
      const T l = J.at(k, k - 1) / d;
      f.L.set(k, k - 1, l);
      pivot -= l * J.at(k - 1, k);
    }
    d = pivot;
    f.U.set(k, k, d);
    if (k + 1 < n) f.U.set(k, k + 1, J.at(k, k + 1));
  }
  return f;
}

/// r_0..r_N in (x - x_star) P_n = R_{n+1} + r_n R_n, where R_n = P_n + mu_n P_{n-1}:
/// r_n = beta_n - x_star - mu_{n+1}. `mu` is indexed from 0 (mu[0] unused)
/// and must reach N+1. Throws ZeroChristoffel(n).
template <Scalar T>
std::vector<T> christoffel_coefficients(const RecurrenceCoefficients<T>& rec, const T& x_star, const std::vector<T>& mu,
                                        std::size_t N, const Tolerance& tol = {}) {
  if (mu.size() < N + 2) throw Error(ErrorKind::Precondition, "christoffel_coefficients: mu too short");
  std::vector<T> r;
  r.reserve(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    r.push_back(rec.beta(n) - x_star - mu[n + 1]);
    if (is_zero(r.back(), tol)) throw Error(ErrorKind::ZeroChristoffel, "r_" + std::to_string(n) + " vanishes", n);
  }
  return r;
}

}  // namespace opert

#endif  // OPERT_JACOBI_HPP
