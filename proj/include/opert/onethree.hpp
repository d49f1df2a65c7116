#ifndef OPERT_ONETHREE_HPP
#define OPERT_ONETHREE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "opert/error.hpp"
#include "opert/polynomial.hpp"
#include "opert/recurrence.hpp"
#include "opert/scalar.hpp"

namespace opert {

/// Parameters of Q_n = P_n + s_n P_{n-1} + t_n P_{n-2}, both sequences stored
/// from index 0 with s_0 = t_0 = t_1 = 0.
///
/// t_n != 0 (n >= 2) is not enforced: check_orthogonality reports it, and a
/// handful of degenerate inputs are useful in tests.
template <Scalar T>
class OneThreeRelation {
 public:
  OneThreeRelation() = default;

  OneThreeRelation(std::vector<T> s, std::vector<T> t) : s_(std::move(s)), t_(std::move(t)) {
    if (s_.empty() || s_.size() != t_.size())
      throw Error(ErrorKind::InvalidParameter, "relation needs s and t of equal, nonzero length");
    if (s_[0] != T(0) || t_[0] != T(0) || (t_.size() > 1 && t_[1] != T(0)))
      throw Error(ErrorKind::InvalidParameter, "relation requires s_0 = t_0 = t_1 = 0");
  }

  bool empty() const noexcept { return s_.empty(); }
  std::size_t n_max() const noexcept { return s_.empty() ? 0 : s_.size() - 1; }

  const T& s(std::size_t n) const {
    check(n);
    return s_[n];
  }
  const T& t(std::size_t n) const {
    check(n);
    return t_[n];
  }

  const std::vector<T>& s_values() const noexcept { return s_; }
  const std::vector<T>& t_values() const noexcept { return t_; }

  OneThreeRelation truncated(std::size_t n) const {
    check(n);
    return OneThreeRelation(std::vector<T>(s_.begin(), s_.begin() + n + 1), std::vector<T>(t_.begin(), t_.begin() + n + 1));
  }

  /// Copy with a single parameter replaced; used to build perturbations.
  OneThreeRelation with_s(std::size_t n, const T& value) const {
    OneThreeRelation r = *this;
    r.check(n);
    r.s_[n] = value;
    if (n == 0 && value != T(0)) throw Error(ErrorKind::InvalidParameter, "s_0 is fixed to 0");
    return r;
  }
  OneThreeRelation with_t(std::size_t n, const T& value) const {
    OneThreeRelation r = *this;
    r.check(n);
    r.t_[n] = value;
    if (n <= 1 && value != T(0)) throw Error(ErrorKind::InvalidParameter, "t_0 and t_1 are fixed to 0");
    return r;
  }

  friend bool operator==(const OneThreeRelation&, const OneThreeRelation&) = default;

 private:
  void check(std::size_t n) const {
    if (s_.empty() || n > n_max())
      throw Error(ErrorKind::Precondition,
                  "relation index " + std::to_string(n) + " beyond n_max " + std::to_string(n_max()));
  }

  std::vector<T> s_;
  std::vector<T> t_;
};

/// Initial data for extend_relation.
template <Scalar T>
struct RelationSeeds {
  T s1, s2, s3, t2, t3;
};

/// (x^2 + a x + b) v = k u
template <Scalar T>
struct QuadraticModification {
  T a, b, k;

  Polynomial<T> h() const { return Polynomial<T>::monic_quadratic(a, b); }
};

namespace detail {

template <Scalar T>
void require_indices(const RecurrenceCoefficients<T>& rec, std::size_t rec_n, const OneThreeRelation<T>& rel,
                     std::size_t rel_n, std::string_view what) {
  if (rec.empty() || rec.n_max() < rec_n || rel.empty() || rel.n_max() < rel_n)
    throw Error(ErrorKind::Precondition, std::string(what) + " needs recurrence to index " + std::to_string(rec_n) +
                                             " and relation to index " + std::to_string(rel_n));
}

}  // namespace detail

/// Recurrence coefficients of the Q_n (whether or not they are orthogonal):
///   beta~_n  = beta_n + s_n - s_{n+1}
///   gamma~_n = gamma_n + t_n - t_{n+1} + s_n (beta_{n-1} - beta~_n)
/// for n <= N. Needs rec to N and rel to N+1.
template <Scalar T>
RecurrenceCoefficients<T> transformed_coefficients(const RecurrenceCoefficients<T>& rec, const OneThreeRelation<T>& rel,
                                                   std::size_t N) {
  detail::require_indices(rec, N, rel, N + 1, "transformed_coefficients");
  std::vector<T> bt, gt;
  bt.reserve(N + 1);
  gt.reserve(N);
  for (std::size_t n = 0; n <= N; ++n) bt.push_back(rec.beta(n) + rel.s(n) - rel.s(n + 1));
  for (std::size_t n = 1; n <= N; ++n)
    gt.push_back(rec.gamma(n) + rel.t(n) - rel.t(n + 1) + rel.s(n) * (rec.beta(n - 1) - bt[n]));
  return RecurrenceCoefficients<T>(std::move(bt), std::move(gt));
}

enum class OrthogonalityEquation { GammaTilde1, GammaTilde2, TZero, Uno, Dos };

constexpr std::string_view to_string(OrthogonalityEquation e) {
  switch (e) {
    case OrthogonalityEquation::GammaTilde1: return "gamma_tilde1";
    case OrthogonalityEquation::GammaTilde2: return "gamma_tilde2";
    case OrthogonalityEquation::TZero: return "t_zero";
    case OrthogonalityEquation::Uno: return "uno";
    case OrthogonalityEquation::Dos: return "dos";
  }
  return "unknown";
}

struct OrthogonalityVerdict {
  bool ok = true;
  std::size_t index = 0;
  OrthogonalityEquation equation = OrthogonalityEquation::Uno;

  static OrthogonalityVerdict success() { return {}; }
  static OrthogonalityVerdict fail(std::size_t n, OrthogonalityEquation e) { return {false, n, e}; }
};

/// Checks that the Q_n are orthogonal up to degree N:
///   s_{n-1} gamma~_n = s_n gamma_{n-1} + t_n (beta_{n-2} - beta~_n),  2 <= n <= N
///   t_{n-1} gamma~_n = t_n gamma_{n-2},                              3 <= n <= N
/// together with gamma~_1, gamma~_2 != 0 and t_n != 0. Indices are scanned in
/// increasing order; at a given n the conditions are tested in the order
/// t_n, gamma~, uno, dos.
template <Scalar T>
OrthogonalityVerdict check_orthogonality(const RecurrenceCoefficients<T>& rec, const OneThreeRelation<T>& rel,
                                         std::size_t N, const Tolerance& tol = {}) {
  if (N == 0) return OrthogonalityVerdict::success();
  const auto tr = transformed_coefficients(rec, rel, N);
  using E = OrthogonalityEquation;
  for (std::size_t n = 1; n <= N; ++n) {
    if (n >= 2 && is_zero(rel.t(n), tol)) return OrthogonalityVerdict::fail(n, E::TZero);
    if (n == 1 && is_zero(tr.gamma(1), tol)) return OrthogonalityVerdict::fail(1, E::GammaTilde1);
    if (n == 2 && is_zero(tr.gamma(2), tol)) return OrthogonalityVerdict::fail(2, E::GammaTilde2);
    if (n >= 2) {
      const T lhs = rel.s(n - 1) * tr.gamma(n);
      const T rhs = rel.s(n) * rec.gamma(n - 1) + rel.t(n) * (rec.beta(n - 2) - tr.beta(n));
      if (!equal(lhs, rhs, tol)) return OrthogonalityVerdict::fail(n, E::Uno);
    }
    if (n >= 3) {
      if (!equal(rel.t(n - 1) * tr.gamma(n), rel.t(n) * rec.gamma(n - 2), tol))
        return OrthogonalityVerdict::fail(n, E::Dos);
    }
  }
  return OrthogonalityVerdict::success();
}

template <Scalar T>
struct ConstantSequences {
  std::vector<T> A;  // A_1..A_N stored from position 0
  std::vector<T> B;
};

/// A_n and B_n for 1 <= n <= N (gamma_0 = 0). Needs rec to N+1 and rel to N+2.
/// Throws DivisionByZero(n+1) when t_{n+1} vanishes.
template <Scalar T>
ConstantSequences<T> constant_sequences(const RecurrenceCoefficients<T>& rec, const OneThreeRelation<T>& rel,
                                        std::size_t N, const Tolerance& tol = {}) {
  detail::require_indices(rec, N + 1, rel, N + 2, "constant_sequences");
  ConstantSequences<T> out;
  out.A.reserve(N);
  out.B.reserve(N);
  const auto g = [&](std::size_t n) { return n == 0 ? T(0) : rec.gamma(n); };
  for (std::size_t n = 1; n <= N; ++n) {
    const T& tn1 = rel.t(n + 1);
    if (is_zero(tn1, tol))
      throw Error(ErrorKind::DivisionByZero, "t_" + std::to_string(n + 1) + " vanishes", n + 1);
    const T shift = rel.s(n + 1) * (rec.beta(n) - rec.beta(n + 1) - rel.s(n + 1) + rel.s(n + 2));
    const T bracket_a = g(n + 1) + tn1 - rel.t(n + 2) + shift;
    out.A.push_back(rel.s(n) / tn1 * bracket_a + rel.s(n + 1) - rec.beta(n - 1) - rec.beta(n));
    const T first = g(n + 1) - rel.t(n + 2) + shift;
    const T second = g(n) + rel.t(n) - tn1 + rel.s(n) * (rel.s(n + 1) - rec.beta(n));
    out.B.push_back(first * second / tn1 + rel.t(n) - g(n - 1) +
                    (rel.s(n + 1) - rec.beta(n)) * (rel.s(n) - rec.beta(n - 1)));
  }
  return out;
}

/// For a sequence x_1, x_2, ... stored from position 0: the first n with
/// x_{n+1} != x_n, or success.
template <Scalar T>
FirstFailure is_constant(const std::vector<T>& seq, const Tolerance& tol = {}) {
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (!equal(seq[i], seq[i - 1], tol)) return FirstFailure::at(i);
  return FirstFailure::success();
}

/// (a, b, k) computed twice: from A_1, B_1 and from the transformed
/// coefficients of low index. Both paths must agree. k assumes
/// <u,1> = <v,1> = 1.
template <Scalar T>
QuadraticModification<T> recover_modification(const RecurrenceCoefficients<T>& rec, const OneThreeRelation<T>& rel,
                                              const Tolerance& tol = {}) {
  const auto cs = constant_sequences(rec, rel, 1, tol);
  const auto tr = transformed_coefficients(rec, rel, 2);
  const T& t2 = rel.t(2);
  const T k = tr.gamma(1) * tr.gamma(2) / t2;
  const T r = rel.s(1) * tr.gamma(2) / t2;
  const T a2 = r - tr.beta(0) - tr.beta(1);
  const T b2 = k - tr.beta(0) * r - tr.gamma(1) + tr.beta(0) * tr.beta(1);
  if (!equal(cs.A[0], a2, tol))
    throw Error(ErrorKind::InconsistentModification,
                "a disagrees: A_1 = " + format_scalar(cs.A[0]) + ", second path " + format_scalar(a2));
  if (!equal(cs.B[0], b2, tol))
    throw Error(ErrorKind::InconsistentModification,
                "b disagrees: B_1 = " + format_scalar(cs.B[0]) + ", second path " + format_scalar(b2));
  if (is_zero(k, tol)) throw Error(ErrorKind::InconsistentModification, "k vanishes");
  return {cs.A[0], cs.B[0], k};
}

/// s_n, t_n up to N from the five seeds, for n >= 3:
///   s_{n+1} = -(s_n/t_n) gamma_{n-1} + beta_n + beta_{n-1} + s_3 + (s_2/t_2) gamma_1 - beta_2 - beta_1
///   t_{n+1} = t_n (1 - gamma_{n-2}/t_{n-1}) + gamma_n + s_n (beta_{n-1} - beta_n + s_{n+1} - s_n)
/// Throws Breakdown(n) at the first t_n == 0. Seeds are not checked for
/// orthogonality; use check_orthogonality on the result.
template <Scalar T>
OneThreeRelation<T> extend_relation(const RecurrenceCoefficients<T>& rec, const RelationSeeds<T>& seeds, std::size_t N,
                                    const Tolerance& tol = {}) {
  if (N < 3) throw Error(ErrorKind::Precondition, "extend_relation needs N >= 3");
  if (rec.empty() || rec.n_max() + 1 < N)
    throw Error(ErrorKind::Precondition, "extend_relation needs recurrence to index " + std::to_string(N - 1));
  if (is_zero(seeds.t2, tol)) throw Error(ErrorKind::Breakdown, "t_2 vanishes", 2);
  if (is_zero(seeds.t3, tol)) throw Error(ErrorKind::Breakdown, "t_3 vanishes", 3);
  std::vector<T> s{T(0), seeds.s1, seeds.s2, seeds.s3};
  std::vector<T> t{T(0), T(0), seeds.t2, seeds.t3};
  s.reserve(N + 1);
  t.reserve(N + 1);
  const T c = seeds.s3 + seeds.s2 / seeds.t2 * rec.gamma(1) - rec.beta(2) - rec.beta(1);
  for (std::size_t n = 3; n < N; ++n) {
    const T s_next = -(s[n] / t[n]) * rec.gamma(n - 1) + rec.beta(n) + rec.beta(n - 1) + c;
    s.push_back(s_next);
    const T t_next =
        t[n] * (T(1) - rec.gamma(n - 2) / t[n - 1]) + rec.gamma(n) + s[n] * (rec.beta(n - 1) - rec.beta(n) + s_next - s[n]);
    if (is_zero(t_next, tol)) throw Error(ErrorKind::Breakdown, "t_" + std::to_string(n + 1) + " vanishes", n + 1);
    t.push_back(t_next);
  }
  return OneThreeRelation<T>(std::move(s), std::move(t));
}

/// Coefficients c_j with q = sum c_j basis_j, by back substitution. The basis
/// must have deg basis_j = j and cover deg q.
template <Scalar T>
std::vector<T> expand_in_basis(const Polynomial<T>& q, const std::vector<Polynomial<T>>& basis) {
  if (q.is_zero()) return {};
  const std::size_t n = static_cast<std::size_t>(q.degree());
  if (basis.size() <= n) throw Error(ErrorKind::Precondition, "expand_in_basis: basis too short");
  std::vector<T> c(n + 1, T(0));
  Polynomial<T> rem = q;
  for (std::size_t j = n + 1; j-- > 0;) {
    if (basis[j].degree() != static_cast<long>(j))
      throw Error(ErrorKind::Precondition, "expand_in_basis: basis element " + std::to_string(j) + " has wrong degree");
    c[j] = rem[j] / basis[j].leading();
    if (c[j] != T(0)) rem -= c[j] * basis[j];
  }
  return c;
}

/// Residuals of
///   (gamma~_{n+1}/t_{n+1}) (gamma_n - (t_{n+1}/t_{n+2}) gamma~_{n+2})
///     - (gamma_{n-1} - (t_n/t_{n+1}) gamma~_{n+1})
/// for 1 <= n <= N-2. Both bracketed terms vanish on a valid relation.
template <Scalar T>
std::vector<T> gammasintilde_residuals(const RecurrenceCoefficients<T>& rec, const OneThreeRelation<T>& rel,
                                       std::size_t N) {
  if (N < 3) return {};
  const auto tr = transformed_coefficients(rec, rel, N);
  std::vector<T> out;
  for (std::size_t n = 1; n + 2 <= N; ++n) {
    const T g_prev = n >= 2 ? rec.gamma(n - 1) : T(0);
    const T lhs = tr.gamma(n + 1) / rel.t(n + 1) * (rec.gamma(n) - rel.t(n + 1) / rel.t(n + 2) * tr.gamma(n + 2));
    const T rhs = g_prev - rel.t(n) / rel.t(n + 1) * tr.gamma(n + 1);
    out.push_back(lhs - rhs);
  }
  return out;
}

/// <v, x> for the functional of the Q_n, normalized <v,1> = 1: beta~_0.
template <Scalar T>
T consistent_v1(const RecurrenceCoefficients<T>& rec, const OneThreeRelation<T>& rel) {
  return rec.beta(0) - rel.s(1);
}

}  // namespace opert

#endif  // OPERT_ONETHREE_HPP
