#ifndef OPERT_FAMILIES_HPP
#define OPERT_FAMILIES_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opert/error.hpp"
#include "opert/moments.hpp"
#include "opert/onethree.hpp"
#include "opert/recurrence.hpp"
#include "opert/scalar.hpp"

namespace opert {

enum class FamilyKind { Laguerre, GeneralizedHermite, ChebyshevT, ChebyshevU };

constexpr std::array<FamilyKind, 4> all_families = {FamilyKind::Laguerre, FamilyKind::GeneralizedHermite,
                                                    FamilyKind::ChebyshevT, FamilyKind::ChebyshevU};

constexpr std::string_view family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Laguerre: return "laguerre";
    case FamilyKind::GeneralizedHermite: return "hermite";
    case FamilyKind::ChebyshevT: return "chebyshev-t";
    case FamilyKind::ChebyshevU: return "chebyshev-u";
  }
  return "unknown";
}

inline FamilyKind parse_family(std::string_view name) {
  if (name == "laguerre") return FamilyKind::Laguerre;
  if (name == "hermite" || name == "generalized-hermite") return FamilyKind::GeneralizedHermite;
  if (name == "chebyshev-t") return FamilyKind::ChebyshevT;
  if (name == "chebyshev-u") return FamilyKind::ChebyshevU;
  throw Error(ErrorKind::ParseError, "unknown family '" + std::string(name) + "'");
}

/// Name of the family parameter and of the free parameter of its relation.
constexpr std::string_view parameter_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Laguerre: return "alpha";
    case FamilyKind::GeneralizedHermite: return "mu";
    default: return "";
  }
}
constexpr std::string_view free_parameter_name(FamilyKind k) {
  return k == FamilyKind::Laguerre ? "lambda1" : "t2";
}

/// A classical family with the free parameter of its 1-3 relation.
///   Laguerre(alpha):       u = x^alpha e^{-x},          free = lambda_1
///   GeneralizedHermite(mu): u = |x|^{2 mu} e^{-x^2},    free = t_2
///   ChebyshevT / ChebyshevU: (1 - x^2)^{-/+1/2},        free = t_2
template <Scalar T>
struct FamilySpec {
  FamilyKind kind = FamilyKind::ChebyshevU;
  T parameter{0};
  T free{1};
};

namespace detail {

/// (a)_n = a (a+1) ... (a+n-1)
template <Scalar T>
T rising(const T& a, std::size_t n) {
  T r(1);
  for (std::size_t i = 0; i < n; ++i) r *= a + T(static_cast<long>(i));
  return r;
}

template <Scalar T>
T factorial(std::size_t n) {
  T r(1);
  for (std::size_t i = 2; i <= n; ++i) r *= T(static_cast<long>(i));
  return r;
}

template <Scalar T>
T harmonic(std::size_t n) {
  T h(0);
  for (std::size_t i = 1; i <= n; ++i) h += T(1) / T(static_cast<long>(i));
  return h;
}

template <Scalar T>
bool is_nonpositive_integer(const T& x) {
  for (long m = 0; m <= 4096; ++m)
    if (x == T(-m)) return true;
  return false;
}

template <Scalar T>
void validate(const FamilySpec<T>& spec) {
  switch (spec.kind) {
    case FamilyKind::Laguerre:
      // gamma_n = n (n + alpha) must not vanish.
      if (is_nonpositive_integer(T(spec.parameter + T(1))))
        throw Error(ErrorKind::InvalidParameter, "laguerre alpha must not be a negative integer");
      break;
    case FamilyKind::GeneralizedHermite:
      if (is_nonpositive_integer(T(spec.parameter + T(1) / T(2))))
        throw Error(ErrorKind::InvalidParameter, "hermite mu + 1/2 must not be a non-positive integer");
      break;
    default: break;
  }
}

/// Denominator of the Laguerre lambda_n closed form (times (n-1)!):
/// (n-1)! (alpha - lambda_1) + (lambda_1 - 1) (alpha)_{n-1}; for alpha = 1 it
/// is (lambda_1 - 1) H_{n-1} + 1.
template <Scalar T>
T laguerre_denominator(const T& alpha, const T& lambda1, std::size_t n) {
  if (alpha == T(1)) return (lambda1 - T(1)) * harmonic<T>(n - 1) + T(1);
  return factorial<T>(n - 1) * (alpha - lambda1) + (lambda1 - T(1)) * rising(alpha, n - 1);
}

}  // namespace detail

/// lambda_n of the Laguerre chain with R-coefficients beta_n = 2n + alpha,
/// gamma_n = n (n + alpha - 1):
///   lambda_n = D_{n+1} / D_n,  D_n = (n-1)! (alpha - lambda_1) + (lambda_1 - 1)(alpha)_{n-1}
/// and, for alpha = 1, lambda_n = n ((lambda_1-1) H_n + 1) / ((lambda_1-1) H_{n-1} + 1).
/// Throws BreakdownDenominator(n) when D_n vanishes.
template <Scalar T>
T laguerre_lambda(const T& alpha, const T& lambda1, std::size_t n, const Tolerance& tol = {}) {
  if (n == 0) throw Error(ErrorKind::Precondition, "lambda_n is defined for n >= 1");
  const T den = detail::laguerre_denominator(alpha, lambda1, n);
  if (is_zero(den, tol))
    throw Error(ErrorKind::BreakdownDenominator, "lambda_" + std::to_string(n) + " has a vanishing denominator", n);
  const T num = detail::laguerre_denominator(alpha, lambda1, n + 1);
  if (alpha == T(1)) return T(static_cast<long>(n)) * num / den;
  return num / den;
}

/// Monic recurrence of the family up to index N.
template <Scalar T>
RecurrenceCoefficients<T> family_recurrence(const FamilySpec<T>& spec, std::size_t N) {
  detail::validate(spec);
  std::vector<T> beta, gamma;
  const T half = T(1) / T(2), quarter = T(1) / T(4);
  for (std::size_t n = 0; n <= N; ++n) {
    const T nn(static_cast<long>(n));
    switch (spec.kind) {
      case FamilyKind::Laguerre:
        beta.push_back(T(2) * nn + spec.parameter + T(1));
        if (n >= 1) gamma.push_back(nn * (nn + spec.parameter));
        break;
      case FamilyKind::GeneralizedHermite:
        beta.push_back(T(0));
        if (n >= 1) gamma.push_back(n % 2 == 0 ? T(static_cast<long>(n / 2)) : T(static_cast<long>(n / 2)) + spec.parameter + half);
        break;
      case FamilyKind::ChebyshevT:
        beta.push_back(T(0));
        if (n >= 1) gamma.push_back(n == 1 ? half : quarter);
        break;
      case FamilyKind::ChebyshevU:
        beta.push_back(T(0));
        if (n >= 1) gamma.push_back(quarter);
        break;
    }
  }
  return RecurrenceCoefficients<T>(std::move(beta), std::move(gamma));
}

/// Moments u_0..u_M of the normalized weight.
template <Scalar T>
MomentFunctional<T> family_moments(const FamilySpec<T>& spec, std::size_t M) {
  detail::validate(spec);
  std::vector<T> u;
  u.reserve(M + 1);
  T even(1);  // current even moment u_{2m}
  for (std::size_t n = 0; n <= M; ++n) {
    if (spec.kind == FamilyKind::Laguerre) {
      u.push_back(detail::rising(T(spec.parameter + T(1)), n));
      continue;
    }
    if (n % 2 == 1) {
      u.push_back(T(0));
      continue;
    }
    const std::size_t m = n / 2;
    u.push_back(even);
    const T mm(static_cast<long>(m));
    switch (spec.kind) {
      case FamilyKind::ChebyshevU:  // Catalan(m) / 4^m
        even *= T(2) * (T(2) * mm + T(1)) / (T(4) * (mm + T(2)));
        break;
      case FamilyKind::ChebyshevT:  // binom(2m, m) / 4^m
        even *= T(2) * (T(2) * mm + T(1)) / (T(4) * (mm + T(1)));
        break;
      case FamilyKind::GeneralizedHermite:  // (mu + 1/2)_m
        even *= spec.parameter + T(1) / T(2) + mm;
        break;
      default: break;
    }
  }
  return MomentFunctional<T>(std::move(u));
}

template <Scalar T>
struct RelationParameters {
  T s{0}, t{0};
};

/// s_n, t_n of the family's 1-3 relation in closed form.
///   Laguerre:  s_n = n + lambda_n, t_n = (n-1) lambda_n
///   Hermite:   s_n = 0, t_{2n} = lambda_n (alpha = mu + 1/2, lambda_1 = t_2), t_{2n+1} = n
///   Cheb. U:   t_{2n}   = -(1/4) (n c - 1) / ((n-1) c - 1),                      c = 4 t_2 + 1
///              t_{2n+1} = -(1/4) (2n c + 4 t_2 - 1) / (2(n-1) c + 4 t_2 - 1)
///   Cheb. T:   the same with c = 2 t_2 + 1 and 2 t_2 - 1, t_{2n} for n >= 2.
/// Throws BreakdownDenominator(n) on a vanishing denominator.
template <Scalar T>
RelationParameters<T> closed_form_parameters(const FamilySpec<T>& spec, std::size_t n, const Tolerance& tol = {}) {
  detail::validate(spec);
  RelationParameters<T> p;
  if (n == 0) return p;
  const T quarter = T(1) / T(4);
  const auto ratio = [&](const T& num, const T& den) {
    if (is_zero(den, tol))
      throw Error(ErrorKind::BreakdownDenominator, "closed form for index " + std::to_string(n) + " has a vanishing denominator", n);
    return num / den;
  };
  const std::size_t m = n / 2;
  const T mm(static_cast<long>(m));
  switch (spec.kind) {
    case FamilyKind::Laguerre: {
      const T lam = laguerre_lambda(spec.parameter, spec.free, n, tol);
      p.s = T(static_cast<long>(n)) + lam;
      p.t = T(static_cast<long>(n - 1)) * lam;
      break;
    }
    case FamilyKind::GeneralizedHermite:
      if (n == 1) break;
      p.t = n % 2 == 0 ? laguerre_lambda(T(spec.parameter + T(1) / T(2)), spec.free, m, tol) : mm;
      break;
    case FamilyKind::ChebyshevU:
    case FamilyKind::ChebyshevT: {
      if (n == 1) break;
      const bool U = spec.kind == FamilyKind::ChebyshevU;
      const T c = U ? T(4) * spec.free + T(1) : T(2) * spec.free + T(1);
      const T d = U ? T(4) * spec.free - T(1) : T(2) * spec.free - T(1);
      if (n == 2) {
        p.t = spec.free;
      } else if (n % 2 == 0) {
        p.t = -quarter * ratio(mm * c - T(1), (mm - T(1)) * c - T(1));
      } else {
        p.t = -quarter * ratio(T(2) * mm * c + d, T(2) * (mm - T(1)) * c + d);
      }
      break;
    }
  }
  return p;
}

/// s, t for indices 0..N from the closed forms.
template <Scalar T>
OneThreeRelation<T> family_relation(const FamilySpec<T>& spec, std::size_t N, const Tolerance& tol = {}) {
  std::vector<T> s, t;
  for (std::size_t n = 0; n <= N; ++n) {
    const auto p = closed_form_parameters(spec, n, tol);
    s.push_back(p.s);
    t.push_back(p.t);
  }
  return OneThreeRelation<T>(std::move(s), std::move(t));
}

template <Scalar T>
RelationSeeds<T> family_seeds(const FamilySpec<T>& spec, const Tolerance& tol = {}) {
  const auto p1 = closed_form_parameters(spec, 1, tol);
  const auto p2 = closed_form_parameters(spec, 2, tol);
  const auto p3 = closed_form_parameters(spec, 3, tol);
  return {p1.s, p2.s, p3.s, p2.t, p3.t};
}

/// (a, b, k) of the family's quadratic modification, <u,1> = <v,1> = 1.
template <Scalar T>
QuadraticModification<T> family_modification(const FamilySpec<T>& spec) {
  detail::validate(spec);
  switch (spec.kind) {
    case FamilyKind::Laguerre: return {T(0), T(0), spec.parameter * (spec.parameter - spec.free)};
    case FamilyKind::GeneralizedHermite: return {T(0), T(0), spec.parameter + T(1) / T(2) - spec.free};
    case FamilyKind::ChebyshevU: return {T(0), T(-1), -(T(3) / T(4) + spec.free)};
    case FamilyKind::ChebyshevT: return {T(0), T(-1), -(T(1) + T(2) * spec.free) / T(2)};
  }
  return {};
}

struct ConditionReport {
  bool ok = true;
  std::size_t condition_index = 0;     // n in the family's own condition
  std::size_t relation_index = 0;  // index of the first breakdown in s_n, t_n / Hankel terms
  std::string condition;

  static ConditionReport success() { return {}; }
};

/// Scans the family's quasi-definiteness conditions for the transformed
/// functional and reports the failure with the smallest relation index
/// <= N. Besides the per-n conditions this covers the excluded parameters:
/// t_2 = 0, the pole of t_3 (gamma~_1 = 0) and k = 0.
template <Scalar T>
ConditionReport quasi_definiteness_condition(const FamilySpec<T>& spec, std::size_t N, const Tolerance& tol = {}) {
  detail::validate(spec);
  std::optional<ConditionReport> best;
  const auto flag = [&](std::size_t cond_n, std::size_t rel, std::string what) {
    if (rel > N) return;
    if (!best || rel < best->relation_index) best = ConditionReport{false, cond_n, rel, std::move(what)};
  };
  const T& f = spec.free;
  switch (spec.kind) {
    case FamilyKind::Laguerre:
    case FamilyKind::GeneralizedHermite: {
      const bool lag = spec.kind == FamilyKind::Laguerre;
      const T alpha = lag ? spec.parameter : T(spec.parameter + T(1) / T(2));
      const std::string edge = lag ? "alpha - lambda1 != 0" : "mu + 1/2 - t2 != 0";
      if (is_zero(T(alpha - f), tol)) flag(0, 1, edge);
      // D_m = 0 makes lambda_{m-1} vanish (alpha != 1); for alpha = 1 the
      // factor (lambda_1-1) H_m + 1 vanishing makes lambda_m vanish.
      const std::size_t limit = N + 2;
      for (std::size_t m = 1; m <= limit; ++m) {
        if (alpha == T(1)) {
          if (is_zero(T((f - T(1)) * detail::harmonic<T>(m) + T(1)), tol)) {
            flag(m, lag ? m : 2 * m, "(lambda1 - 1) H_n + 1 != 0");
            break;
          }
        } else if (m >= 2 && is_zero(detail::laguerre_denominator(alpha, f, m), tol)) {
          flag(m, lag ? m - 1 : 2 * (m - 1), "Gamma(n)Gamma(alpha)(alpha - lambda1) + (lambda1 - 1)Gamma(n - 1 + alpha) != 0");
          break;
        }
      }
      break;
    }
    case FamilyKind::ChebyshevU:
    case FamilyKind::ChebyshevT: {
      const bool U = spec.kind == FamilyKind::ChebyshevU;
      const T c = U ? T(4) * f + T(1) : T(2) * f + T(1);
      const T d = U ? T(4) * f - T(1) : T(2) * f - T(1);
      const T g1 = U ? T(1) / T(4) : T(1) / T(2);
      if (is_zero(T(g1 - f), tol)) flag(0, 1, U ? "4 t2 - 1 != 0" : "2 t2 - 1 != 0");
      if (is_zero(family_modification(spec).k, tol)) flag(0, 2, U ? "3/4 + t2 != 0" : "1 + 2 t2 != 0");
      const std::string c1 = U ? "n(4 t2 + 1) - 1 != 0" : "n(2 t2 + 1) - 1 != 0";
      const std::string c2 = U ? "2n(4 t2 + 1) + (4 t2 - 1) != 0" : "2n(2 t2 + 1) + (2 t2 - 1) != 0";
      for (std::size_t n = 1; 2 * n <= N; ++n) {
        const T nn(static_cast<long>(n));
        if (is_zero(T(nn * c - T(1)), tol)) {
          flag(n, 2 * n, c1);
          break;
        }
        if (2 * n + 1 <= N && is_zero(T(T(2) * nn * c + d), tol)) {
          flag(n, 2 * n + 1, c2);
          break;
        }
      }
      break;
    }
  }
  return best ? *best : ConditionReport::success();
}

/// Moments of the transformed functional v from its explicit description,
/// normalized to v_0 = 1:
///   Cheb. U:  v = 2(3/4 + t_2) u_T - (t_2 + 1/4)(delta_1 + delta_{-1})
///   Cheb. T:  v = -((1 + 2 t_2)/2) (1 - x^2)^{-1} u_T + (1/2)(delta_1 + delta_{-1})
///   Laguerre: v = (alpha - lambda_1) x^{-1} u_{alpha-1} + delta_0
///   Hermite:  v = (mu + 1/2 - t_2) x^{-2} u + delta_0
/// where u_T is the Chebyshev-T functional and x^{-1}, x^{-2}, (1-x^2)^{-1}
/// carry no extra mass at the singular points.
template <Scalar T>
MomentFunctional<T> target_functional_moments(const FamilySpec<T>& spec, std::size_t M) {
  detail::validate(spec);
  std::vector<T> v(M + 1, T(0));
  const T& f = spec.free;
  switch (spec.kind) {
    case FamilyKind::ChebyshevU: {
      const auto uT = family_moments(FamilySpec<T>{FamilyKind::ChebyshevT, T(0), T(0)}, M);
      for (std::size_t n = 0; n <= M; ++n)
        v[n] = T(2) * (T(3) / T(4) + f) * uT[n] - (f + T(1) / T(4)) * (n % 2 == 0 ? T(2) : T(0));
      break;
    }
    case FamilyKind::ChebyshevT: {
      const auto uT = family_moments(FamilySpec<T>{FamilyKind::ChebyshevT, T(0), T(0)}, M);
      std::vector<T> r(M + 1, T(0));
      for (std::size_t n = 0; n + 2 <= M; ++n) r[n + 2] = r[n] + uT[n];
      for (std::size_t n = 0; n <= M; ++n)
        v[n] = -((T(1) + T(2) * f) / T(2)) * r[n] + (n % 2 == 0 ? T(1) : T(0));
      break;
    }
    case FamilyKind::Laguerre:
      v[0] = T(1);
      for (std::size_t n = 1; n <= M; ++n) v[n] = (spec.parameter - f) * detail::rising(spec.parameter, n - 1);
      break;
    case FamilyKind::GeneralizedHermite: {
      const auto u = family_moments(spec, M);
      v[0] = T(1);
      for (std::size_t n = 0; n + 2 <= M; ++n) v[n + 2] = (spec.parameter + T(1) / T(2) - f) * u[n];
      break;
    }
  }
  return MomentFunctional<T>(std::move(v));
}

}  // namespace opert

#endif  // OPERT_FAMILIES_HPP
