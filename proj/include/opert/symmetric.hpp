#ifndef OPERT_SYMMETRIC_HPP
#define OPERT_SYMMETRIC_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "opert/error.hpp"
#include "opert/onethree.hpp"
#include "opert/recurrence.hpp"
#include "opert/scalar.hpp"

namespace opert {

/// P_{2n}(x) = V_n(x^2), P_{2n+1}(x) = x V*_n(x^2).
template <Scalar T>
struct SymmetricSplit {
  RecurrenceCoefficients<T> rec_V;      // sigma u
  RecurrenceCoefficients<T> rec_Vstar;  // x sigma u
};

/// Splits a symmetric recurrence (beta == 0):
///   beta^s_0 = gamma_1,  beta^s_n = gamma_{2n} + gamma_{2n+1},  gamma^s_n = gamma_{2n} gamma_{2n-1}
///   beta^x_n = gamma_{2n+1} + gamma_{2n+2},  gamma^x_n = gamma_{2n} gamma_{2n+1}
/// Needs n_max >= 2. Throws NotSymmetric(n) at the first beta_n != 0.
template <Scalar T>
SymmetricSplit<T> split_symmetric(const RecurrenceCoefficients<T>& rec, const Tolerance& tol = {}) {
  if (rec.empty() || rec.n_max() < 2) throw Error(ErrorKind::Precondition, "split_symmetric needs n_max >= 2");
  for (std::size_t n = 0; n <= rec.n_max(); ++n)
    if (!is_zero(rec.beta(n), tol)) throw Error(ErrorKind::NotSymmetric, "beta_" + std::to_string(n) + " != 0", n);
  const std::size_t N = rec.n_max();
  const auto g = [&](std::size_t n) { return rec.gamma(n); };

  std::vector<T> bs{g(1)}, gs;
  for (std::size_t m = 1; 2 * m + 1 <= N; ++m) {
    bs.push_back(g(2 * m) + g(2 * m + 1));
    gs.push_back(g(2 * m) * g(2 * m - 1));
  }
  std::vector<T> bx, gx;
  for (std::size_t m = 0; 2 * m + 2 <= N; ++m) {
    bx.push_back(g(2 * m + 1) + g(2 * m + 2));
    if (m >= 1) gx.push_back(g(2 * m) * g(2 * m + 1));
  }
  return {RecurrenceCoefficients<T>(std::move(bs), std::move(gs)),
          RecurrenceCoefficients<T>(std::move(bx), std::move(gx))};
}

template <Scalar T>
struct SplitRelation {
  std::vector<T> t_even;  // t_even[n] = t_{2n}; t_even[0] = 0
  std::vector<T> t_odd;   // t_odd[n] = t_{2n+1}; t_odd[0] = 0
};

/// For s == 0 the relation splits into R_n = V_n + t_{2n} V_{n-1} and
/// R*_n = V*_n + t_{2n+1} V*_{n-1}. Both parameter sequences are returned
/// from index 0, which makes them usable directly as the mu of a 1-2 step.
template <Scalar T>
SplitRelation<T> split_relation(const OneThreeRelation<T>& rel, const Tolerance& tol = {}) {
  for (std::size_t n = 0; n <= rel.n_max(); ++n)
    if (!is_zero(rel.s(n), tol))
      throw Error(ErrorKind::NotSymmetricRelation, "s_" + std::to_string(n) + " != 0", n);
  SplitRelation<T> out;
  for (std::size_t n = 0; n <= rel.n_max(); ++n) (n % 2 == 0 ? out.t_even : out.t_odd).push_back(rel.t(n));
  return out;
}

/// Inverse of split_symmetric and split_relation. gamma is rebuilt from the
/// sigma recurrence (gamma_1 = beta^s_0, gamma_{2n} = gamma^s_n / gamma_{2n-1},
/// gamma_{2n+1} = beta^s_n - gamma_{2n}) and extended by one index from the
/// x sigma recurrence when available; the x sigma coefficients are checked
/// for consistency (InvalidParameter on mismatch).
template <Scalar T>
std::pair<RecurrenceCoefficients<T>, OneThreeRelation<T>> merge_split(const SymmetricSplit<T>& split,
                                                                      const std::vector<T>& t_even,
                                                                      const std::vector<T>& t_odd,
                                                                      const Tolerance& tol = {}) {
  const auto& V = split.rec_V;
  const auto& X = split.rec_Vstar;
  if (V.empty()) throw Error(ErrorKind::Precondition, "merge_split: empty sigma recurrence");
  std::vector<T> gamma{T(0), V.beta(0)};
  for (std::size_t n = 1; n <= V.n_max(); ++n) {
    if (is_zero(gamma[2 * n - 1], tol))
      throw Error(ErrorKind::FavardViolation, "gamma_" + std::to_string(2 * n - 1) + " vanishes", 2 * n - 1);
    gamma.push_back(V.gamma(n) / gamma[2 * n - 1]);
    gamma.push_back(V.beta(n) - gamma[2 * n]);
  }
  if (!X.empty() && X.n_max() >= V.n_max()) gamma.push_back(X.beta(V.n_max()) - gamma.back());
  if (!X.empty()) {
    const std::size_t G = gamma.size() - 1;
    for (std::size_t m = 0; m <= X.n_max() && 2 * m + 2 <= G; ++m) {
      if (!equal(X.beta(m), gamma[2 * m + 1] + gamma[2 * m + 2], tol) ||
          (m >= 1 && !equal(X.gamma(m), gamma[2 * m] * gamma[2 * m + 1], tol)))
        throw Error(ErrorKind::InvalidParameter, "x sigma recurrence inconsistent at " + std::to_string(m), m);
    }
  }
  std::vector<T> beta(gamma.size(), T(0));
  std::vector<T> gam(gamma.begin() + 1, gamma.end());

  std::vector<T> t;
  for (std::size_t i = 0;; ++i) {
    const auto& src = i % 2 == 0 ? t_even : t_odd;
    if (i / 2 >= src.size()) break;
    t.push_back(src[i / 2]);
  }
  if (t.empty()) throw Error(ErrorKind::Precondition, "merge_split: empty parameter sequences");
  std::vector<T> s(t.size(), T(0));
  return {RecurrenceCoefficients<T>(std::move(beta), std::move(gam)), OneThreeRelation<T>(std::move(s), std::move(t))};
}

}  // namespace opert

#endif  // OPERT_SYMMETRIC_HPP
