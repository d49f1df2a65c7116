#ifndef OPERT_GERONIMUS_HPP
#define OPERT_GERONIMUS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "opert/error.hpp"
#include "opert/jacobi.hpp"
#include "opert/onethree.hpp"
#include "opert/recurrence.hpp"
#include "opert/scalar.hpp"

namespace opert {

/// One 1-2 step R_n = P_n + mu_n P_{n-1} with (x - x_star) w = scale u.
/// mu is indexed from 0; mu[0] is a placeholder and is kept at 0.
template <Scalar T>
struct GeronimusStep {
  T x_star{0};
  std::vector<T> mu;
  T scale{0};
};

/// C_n = beta_n - mu_{n+1} - gamma_n / mu_n for 1 <= n <= N.
template <Scalar T>
std::vector<T> c_sequence(const RecurrenceCoefficients<T>& rec, const std::vector<T>& mu, std::size_t N,
                          const Tolerance& tol = {}) {
  if (mu.size() < N + 2 || rec.empty() || rec.n_max() < N)
    throw Error(ErrorKind::Precondition, "C_n up to " + std::to_string(N) + " needs mu to N+1 and recurrence to N");
  std::vector<T> C;
  C.reserve(N);
  for (std::size_t n = 1; n <= N; ++n) {
    if (is_zero(mu[n], tol)) throw Error(ErrorKind::ZeroMu, "mu_" + std::to_string(n) + " vanishes", n);
    C.push_back(rec.beta(n) - mu[n + 1] - rec.gamma(n) / mu[n]);
  }
  return C;
}

/// Validates that mu defines a 1-2 relation: C_n constant for 1 <= n <= N
/// and a nonzero scale beta_0 - x_star - mu_1. Throws NotConstant(n) at the
/// first n with C_{n+1} != C_n, DegenerateScale when the scale vanishes.
template <Scalar T>
GeronimusStep<T> check_one_two(const RecurrenceCoefficients<T>& rec, const std::vector<T>& mu, std::size_t N,
                               const Tolerance& tol = {}) {
  if (N == 0) throw Error(ErrorKind::Precondition, "check_one_two needs N >= 1");
  const auto C = c_sequence(rec, mu, N, tol);
  if (auto f = is_constant(C, tol); !f.ok())
    throw Error(ErrorKind::NotConstant,
                "C_" + std::to_string(*f.index) + " = " + format_scalar(C[*f.index - 1]) + " but C_" +
                    std::to_string(*f.index + 1) + " = " + format_scalar(C[*f.index]),
                *f.index);
  GeronimusStep<T> step{C[0], mu, rec.beta(0) - C[0] - mu[1]};
  step.mu[0] = T(0);
  if (is_zero(step.scale, tol)) throw Error(ErrorKind::DegenerateScale, "beta_0 - x_star - mu_1 vanishes");
  return step;
}

/// mu_1..mu_N from mu_{n+1} = s_{n+1} - t_{n+1} / mu_n. Returned indexed from
/// 0 with a zero placeholder. Throws ZeroMu(n) at the first vanishing mu_n.
template <Scalar T>
std::vector<T> continued_fraction_mu(const OneThreeRelation<T>& rel, const T& mu1, std::size_t N,
                                     const Tolerance& tol = {}) {
  if (N == 0) return {T(0)};
  if (rel.empty() || rel.n_max() < N)
    throw Error(ErrorKind::Precondition, "continued_fraction_mu needs relation to index " + std::to_string(N));
  if (equal(mu1, rel.s(1), tol)) throw Error(ErrorKind::Precondition, "mu_1 = s_1 makes lambda_1 vanish");
  std::vector<T> mu{T(0), mu1};
  mu.reserve(N + 1);
  if (is_zero(mu1, tol)) throw Error(ErrorKind::ZeroMu, "mu_1 vanishes", 1);
  for (std::size_t n = 1; n < N; ++n) {
    mu.push_back(rel.s(n + 1) - rel.t(n + 1) / mu[n]);
    if (is_zero(mu.back(), tol)) throw Error(ErrorKind::ZeroMu, "mu_" + std::to_string(n + 1) + " vanishes", n + 1);
  }
  return mu;
}

/// Q_n = R_n + lambda_n R_{n-1}, R_n = P_n + mu_n P_{n-1}.
template <Scalar T>
struct IterativeDecomposition {
  GeronimusStep<T> step1;  // P -> R at x_1 with mu
  GeronimusStep<T> step2;  // R -> Q at x_2 with lambda
  std::vector<T> C;        // C_1..C_N
  std::vector<T> D;        // D_0..D_N (lambda_0 = 0)

  const T& x1() const { return step1.x_star; }
  const T& x2() const { return step2.x_star; }
  const std::vector<T>& mu() const { return step1.mu; }
  const std::vector<T>& lambda() const { return step2.mu; }
};

/// D_n = beta~_n - lambda_n - gamma~_{n+1} / lambda_{n+1} for 0 <= n <= N,
/// lambda_0 = 0.
template <Scalar T>
std::vector<T> d_sequence(const RecurrenceCoefficients<T>& transformed, const std::vector<T>& lambda, std::size_t N,
                          const Tolerance& tol = {}) {
  if (lambda.size() < N + 2 || transformed.empty() || transformed.n_max() < N + 1)
    throw Error(ErrorKind::Precondition, "D_n up to " + std::to_string(N) + " needs lambda and gamma~ to N+1");
  std::vector<T> D;
  D.reserve(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    if (is_zero(lambda[n + 1], tol))
      throw Error(ErrorKind::NotIterative, "lambda_" + std::to_string(n + 1) + " vanishes", n + 1);
    const T lam = n == 0 ? T(0) : lambda[n];
    D.push_back(transformed.beta(n) - lam - transformed.gamma(n + 1) / lambda[n + 1]);
  }
  return D;
}

/// Splits a 1-3 relation into two 1-2 steps starting from mu_1. Needs rec to
/// N+1 and rel to N+2. Any obstruction (vanishing mu or lambda, non-constant
/// C or D) is reported as NotIterative(n); mu_1 = s_1 is a precondition
/// failure.
template <Scalar T>
IterativeDecomposition<T> decompose_iterative(const RecurrenceCoefficients<T>& rec, const OneThreeRelation<T>& rel,
                                              const T& mu1, std::size_t N, const Tolerance& tol = {}) {
  if (N == 0) throw Error(ErrorKind::Precondition, "decompose_iterative needs N >= 1");
  if (rel.empty() || rel.n_max() < N + 2 || rec.empty() || rec.n_max() < N + 1)
    throw Error(ErrorKind::Precondition, "decompose_iterative needs recurrence to N+1 and relation to N+2");
  if (equal(mu1, rel.s(1), tol)) throw Error(ErrorKind::Precondition, "mu_1 = s_1 makes lambda_1 vanish");

  IterativeDecomposition<T> d;
  std::vector<T> mu;
  try {
    mu = continued_fraction_mu(rel, mu1, N + 1, tol);
  } catch (const Error& e) {
    throw Error(ErrorKind::NotIterative, std::string("continued fraction: ") + e.what(), e.index().value_or(0));
  }

  d.C = c_sequence(rec, mu, N, tol);
  if (auto f = is_constant(d.C, tol); !f.ok())
    throw Error(ErrorKind::NotIterative, "C_n not constant at n = " + std::to_string(*f.index), *f.index);
  d.step1 = GeronimusStep<T>{d.C[0], mu, rec.beta(0) - d.C[0] - mu[1]};
  if (is_zero(d.step1.scale, tol)) throw Error(ErrorKind::NotIterative, "first step has zero scale", 0);

  std::vector<T> lambda(N + 2, T(0));
  for (std::size_t n = 1; n <= N + 1; ++n) {
    lambda[n] = rel.s(n) - mu[n];
    if (is_zero(lambda[n], tol))
      throw Error(ErrorKind::NotIterative, "lambda_" + std::to_string(n) + " vanishes", n);
    if (n >= 2 && !equal(rel.t(n), lambda[n] * mu[n - 1], tol))
      throw Error(ErrorKind::NotIterative, "t_" + std::to_string(n) + " != lambda_n mu_{n-1}", n);
  }

  const auto tr = transformed_coefficients(rec, rel, N + 1);
  d.D = d_sequence(tr, lambda, N, tol);
  if (auto f = is_constant(d.D, tol); !f.ok())
    throw Error(ErrorKind::NotIterative, "D_n not constant at n = " + std::to_string(*f.index - 1), *f.index - 1);
  // Scale of the second step relative to the intermediate functional.
  d.step2 = GeronimusStep<T>{d.D[0], std::move(lambda), tr.beta(0) - d.D[0]};
  if (is_zero(d.step2.scale, tol)) throw Error(ErrorKind::NotIterative, "second step has zero scale", 0);
  return d;
}

template <Scalar T>
struct CDSequences {
  std::vector<T> C;  // C_1..C_N
  std::vector<T> D;  // D_1..D_N
};

/// C_n and D_n for 1 <= n <= N from a decomposition and the transformed
/// coefficients (which must reach N+1).
template <Scalar T>
CDSequences<T> cd_sequences(const RecurrenceCoefficients<T>& rec, const RecurrenceCoefficients<T>& transformed,
                            const IterativeDecomposition<T>& decomp, std::size_t N, const Tolerance& tol = {}) {
  CDSequences<T> out;
  out.C = c_sequence(rec, decomp.mu(), N, tol);
  auto D = d_sequence(transformed, decomp.lambda(), N, tol);
  out.D.assign(D.begin() + 1, D.end());
  return out;
}

/// Recurrence of the R_n of a 1-2 step, via the Darboux swap
/// J_P - x I = U L  ->  J_R = L U + x I, for indices 0..N. The step's mu
/// must reach N+1.
template <Scalar T>
RecurrenceCoefficients<T> one_two_transformed_recurrence(const RecurrenceCoefficients<T>& rec,
                                                         const GeronimusStep<T>& step, std::size_t N,
                                                         const Tolerance& tol = {}) {
  if (step.mu.size() < N + 2) throw Error(ErrorKind::Precondition, "one_two_transformed_recurrence: mu too short");
  const auto J = build_jacobi(rec, N + 1);
  const auto L = unit_lower_bidiagonal(step.mu, N + 1);
  return jacobi_coefficients(darboux_lu_step(J, step.x_star, L, step.mu[N + 1], tol));
}

template <Scalar T>
struct AdmissibleMu1 {
  std::vector<T> values;
  bool unconstrained = false;  // C_1 = C_2 holds for every mu_1
};

/// Values of mu_1 with C_1 = C_2, i.e. roots of
///   (D s_2 - q) mu^2 + (p s_2 - D t_2) mu - p t_2 = 0,
/// D = beta_1 - s_2 - beta_2 + s_3, p = t_2 - gamma_1, q = t_3 - gamma_2,
/// excluding mu = 0, mu = s_1 and roots making mu_2 vanish. Irrational roots
/// are dropped in exact mode. Candidates are further screened with C_3 when
/// the relation is long enough.
template <Scalar T>
AdmissibleMu1<T> admissible_mu1(const RecurrenceCoefficients<T>& rec, const OneThreeRelation<T>& rel,
                                const Tolerance& tol = {}) {
  if (rel.empty() || rel.n_max() < 3 || rec.empty() || rec.n_max() < 2)
    throw Error(ErrorKind::Precondition, "admissible_mu1 needs recurrence to 2 and relation to 3");
  const T Dc = rec.beta(1) - rel.s(2) - rec.beta(2) + rel.s(3);
  const T p = rel.t(2) - rec.gamma(1);
  const T q = rel.t(3) - rec.gamma(2);
  const T qa = Dc * rel.s(2) - q;
  const T qb = p * rel.s(2) - Dc * rel.t(2);
  const T qc = -p * rel.t(2);

  AdmissibleMu1<T> out;
  std::vector<T> roots;
  if (is_zero(qa, tol)) {
    if (is_zero(qb, tol)) {
      out.unconstrained = is_zero(qc, tol);
      return out;
    }
    roots.push_back(-qc / qb);
  } else {
    const T disc = qb * qb - T(4) * qa * qc;
    if (is_zero(disc, tol)) {
      roots.push_back(-qb / (T(2) * qa));
    } else if (auto r = scalar_traits<T>::sqrt(disc)) {
      roots.push_back((-qb - *r) / (T(2) * qa));
      roots.push_back((-qb + *r) / (T(2) * qa));
    }
  }

  const bool screen = rel.n_max() >= 4 && rec.n_max() >= 3;
  for (const auto& m : roots) {
    if (is_zero(m, tol) || equal(m, rel.s(1), tol)) continue;
    try {
      const std::size_t depth = screen ? 3 : 2;
      const auto mu = continued_fraction_mu(rel, m, depth + 1, tol);
      const auto C = c_sequence(rec, mu, depth, tol);
      if (!is_constant(C, tol).ok()) continue;
    } catch (const Error&) {
      continue;
    }
    out.values.push_back(m);
  }
  return out;
}

}  // namespace opert

#endif  // OPERT_GERONIMUS_HPP
