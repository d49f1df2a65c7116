#include <gtest/gtest.h>

#include "opert/opert.hpp"
#include "oracle.hpp"

using namespace opert;
using oracle::R;

namespace {

using Spec = FamilySpec<Rational>;
using Rel = OneThreeRelation<Rational>;
using Rec = RecurrenceCoefficients<Rational>;
using Band = BandedMatrix<Rational>;
using Dense = oracle::Matrix;
using Seq = std::vector<Rational>;

const Spec kU{FamilyKind::ChebyshevU, 0, 1};
const Spec kL{FamilyKind::Laguerre, 2, 1};
const Spec kT{FamilyKind::ChebyshevT, 0, 1};
const Spec kH{FamilyKind::GeneralizedHermite, R("1/2"), 2};

Dense dense(std::initializer_list<std::initializer_list<const char*>> rows) {
  Dense out;
  for (const auto& row : rows) {
    out.emplace_back();
    for (const auto* x : row) out.back().push_back(R(x));
  }
  return out;
}

Seq naturals(std::size_t N) {
  Seq mu{0};
  for (std::size_t n = 1; n <= N; ++n) mu.push_back(static_cast<long>(n));
  return mu;
}

Dense leading(const Dense& a, std::size_t m) {
  Dense out(m, Seq(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out[i][j] = a[i][j];
  return out;
}

}  // namespace

TEST(Banded, StorageAndProfile) {
  Band a(4, 1, 2);
  a.set(0, 2, 5);
  a.set(3, 2, 7);
  EXPECT_EQ(a.at(0, 2), 5);
  EXPECT_EQ(a.at(2, 0), 0);
  EXPECT_THROW(a.set(3, 1, 1), Error);
  EXPECT_NO_THROW(a.set(3, 1, 0));
  EXPECT_EQ(a.band(2), (Seq{5, 0}));
  EXPECT_TRUE(a.has_profile(1, 2));
  EXPECT_FALSE(a.has_profile(0, 2));
  const auto b = Band::from_dense(a.dense());
  EXPECT_EQ(b, a);
  EXPECT_TRUE(a.compacted().has_profile(1, 2));
}

TEST(Banded, ProductMatchesDense) {
  oracle::RationalSource src(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = src.index(1, 7);
    Band a(n, src.index(0, 2), src.index(0, 2)), b(n, src.index(0, 2), src.index(0, 2));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const long d = static_cast<long>(j) - static_cast<long>(i);
        if (-d <= static_cast<long>(a.lower()) && d <= static_cast<long>(a.upper())) a.set(i, j, src.any());
        if (-d <= static_cast<long>(b.lower()) && d <= static_cast<long>(b.upper())) b.set(i, j, src.any());
      }
    EXPECT_EQ((a * b).dense(), oracle::dense_product(a.dense(), b.dense()));
    EXPECT_EQ((a + b - b).dense(), a.dense());
  }
}

TEST(Banded, RightSolve) {
  const auto M = build_M(family_relation(kU, 8), 8);
  const auto JP = build_jacobi(family_recurrence(kU, 8), 8);
  const auto X = right_solve_unit_lower(JP, M);
  EXPECT_EQ(X.dense(), oracle::dense_product(JP.dense(), oracle::dense_inverse(M.dense())));
}

TEST(BuildJacobi, Examples) {
  EXPECT_EQ(build_jacobi(family_recurrence(kU, 4), 3).dense(), dense({{"0", "1", "0"}, {"1/4", "0", "1"}, {"0", "1/4", "0"}}));
  EXPECT_EQ(build_jacobi(family_recurrence(kL, 4), 1).dense(), dense({{"3"}}));
  EXPECT_EQ(build_jacobi(family_recurrence(kL, 4), 2).dense(), dense({{"3", "1"}, {"3", "5"}}));
  EXPECT_EQ(jacobi_coefficients(build_jacobi(family_recurrence(kL, 8), 6)), family_recurrence(kL, 8).truncated(5));
}

TEST(BuildM, Examples) {
  EXPECT_EQ(build_M(family_relation(kU, 4), 3).dense(), dense({{"1", "0", "0"}, {"0", "1", "0"}, {"1", "0", "1"}}));
  EXPECT_EQ(build_M(family_relation(kL, 4), 3).dense(), dense({{"1", "0", "0"}, {"2", "1", "0"}, {"2", "4", "1"}}));
  const Rel zero(Seq(6, 0), Seq(6, 0));
  EXPECT_EQ(build_M(zero, 5), Band::identity(5));
  EXPECT_TRUE(build_M(family_relation(kL, 10), 10).has_profile(2, 0));
}

TEST(BuildM, QEqualsMP) {
  // Row k of M applied to (P_0..P_n) gives Q_k.
  const auto rec = family_recurrence(kL, 10);
  const auto rel = family_relation(kL, 10);
  const auto P = generate_polynomials(rec, 8);
  const auto Q = oracle::q_polynomials(P, rel.s_values(), rel.t_values(), 8);
  const auto M = build_M(rel, 9);
  for (std::size_t k = 0; k <= 8; ++k) {
    Polynomial<Rational> sum;
    for (std::size_t j = 0; j <= k; ++j) sum = sum + M.at(k, j) * P[j];
    EXPECT_EQ(sum, Q[k]);
  }
}

TEST(FactorN, ChebyshevU) {
  const auto rec = family_recurrence(kU, 12);
  const auto rel = family_relation(kU, 12);
  const auto N = factor_N(rec, rel, Rational(0), Rational(-1), 6);
  EXPECT_EQ(N.size(), 6u);
  EXPECT_TRUE(N.has_profile(0, 2));
  for (std::size_t k = 0; k + 2 < 6; ++k) EXPECT_EQ(N.at(k, k + 2), 1);
  const auto JP = build_jacobi(rec, 6);
  EXPECT_TRUE(verify_christoffel_identity(JP, build_M(rel, 6), N, Rational(0), Rational(-1)).ok);
  // independent check: N = (J^2 - I) M^{-1} with everything dense at order 8
  const auto J8 = build_jacobi(rec, 8).dense();
  Dense h = oracle::dense_product(J8, J8);
  for (std::size_t i = 0; i < 8; ++i) h[i][i] -= 1;
  const auto Nd = oracle::dense_product(h, oracle::dense_inverse(build_M(rel, 8).dense()));
  EXPECT_EQ(N.dense(), leading(Nd, 6));
}

TEST(FactorN, LaguerreSquare) {
  const auto N = factor_N(family_recurrence(kL, 12), family_relation(kL, 12), Rational(0), Rational(0), 8);
  for (std::size_t k = 0; k + 2 < 8; ++k) EXPECT_EQ(N.at(k, k + 2), 1);
}

TEST(FactorN, IdentityMRequiresProfile) {
  // With M = I the quadratic itself must be upper triangular of bandwidth 2.
  const auto J = build_jacobi(family_recurrence(kU, 8), 7);
  try {
    factor_N(J, Band::identity(7), Rational(0), Rational(-1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BandProfileViolation);
  }
  Band upper(7, 0, 1);
  for (std::size_t k = 0; k < 7; ++k) {
    upper.set(k, k, static_cast<long>(k));
    if (k + 1 < 7) upper.set(k, k + 1, 1);
  }
  const auto N = factor_N(upper, Band::identity(7), Rational(2), Rational(-1));
  EXPECT_EQ(N, quadratic_of(upper, Rational(2), Rational(-1)).leading(5).compacted());
}

TEST(QuadraticIdentity, Families) {
  for (const auto& spec : {kU, kL}) {
    const auto rec = family_recurrence(spec, 12);
    const auto rel = family_relation(spec, 12);
    const auto m = recover_modification(rec, rel);
    const auto JQ = build_jacobi(transformed_coefficients(rec, rel, 8), 6);
    const auto M = build_M(rel, 6);
    const auto N = factor_N(rec, rel, m.a, m.b, 6);
    const auto rep = verify_quadratic_identity(JQ, M, N, m.a, m.b);
    EXPECT_TRUE(rep.ok) << family_name(spec.kind);
    EXPECT_EQ(rep.window, 4u);
    EXPECT_EQ(rep.max_deviation, 0);
    const auto wrong = verify_quadratic_identity(JQ, M, N, m.a, m.b + 1);
    EXPECT_FALSE(wrong.ok);
    EXPECT_EQ(wrong.max_deviation, 1);
    EXPECT_TRUE(verify_intertwining(build_jacobi(rec, 6), JQ, M).ok);
  }
}

TEST(TruncatedTransform, ChebyshevUByHand) {
  const auto steps = truncated_transform_steps(family_recurrence(kU, 6), family_relation(kU, 6), 3);
  EXPECT_EQ(steps.MJP.dense(), dense({{"0", "1", "0"}, {"1/4", "0", "1"}, {"0", "5/4", "0"}}));
  EXPECT_EQ(steps.G.dense(), dense({{"0", "1", "0"}, {"1/4", "0", "1"}, {"0", "7/3", "0"}}));
  EXPECT_EQ(steps.JQ.dense(), dense({{"0", "1", "0"}, {"-3/4", "0", "1"}, {"0", "7/3", "0"}}));
}

TEST(TruncatedTransform, SmallestAndLaguerre) {
  const auto one = truncated_transform(family_recurrence(kL, 4), family_relation(kL, 4), 1);
  EXPECT_EQ(one.dense(), dense({{"1"}}));
  const auto three = truncated_transform(family_recurrence(kL, 6), family_relation(kL, 6), 3);
  EXPECT_EQ(three.dense(), dense({{"1", "1", "0"}, {"1", "3", "1"}, {"0", "4", "5"}}));
}

TEST(TruncatedTransform, EqualsTransformedJacobi) {
  for (const auto& spec : {kU, kT, kL, kH}) {
    const auto rec = family_recurrence(spec, 26);
    const auto rel = family_relation(spec, 26);
    for (std::size_t n : {1u, 2u, 5u, 12u, 25u})
      EXPECT_EQ(truncated_transform(rec, rel, n), build_jacobi(transformed_coefficients(rec, rel, 25), n))
          << family_name(spec.kind) << " n=" << n;
  }
}

TEST(Darboux, LaguerreLowersAlpha) {
  const auto rec = family_recurrence(kL, 6);
  const auto J = build_jacobi(rec, 3);
  const auto out = darboux_lu_step(J, Rational(0), unit_lower_bidiagonal(naturals(3), 3), Rational(3));
  EXPECT_EQ(out.dense(), dense({{"2", "1", "0"}, {"2", "4", "1"}, {"0", "6", "6"}}));
}

TEST(Darboux, IdentityFactor) {
  // L = I only factors a J without subdiagonal; then L U + x I = J.
  Band J(6, 1, 1);
  for (std::size_t k = 0; k < 6; ++k) {
    J.set(k, k, R("1/3") * static_cast<long>(k));
    if (k + 1 < 6) J.set(k, k + 1, 1);
  }
  EXPECT_EQ(darboux_lu_step(J, R("2/5"), Band::identity(6), Rational(0)), J);
  EXPECT_THROW(darboux_lu_step(build_jacobi(family_recurrence(kL, 8), 6), Rational(0), Band::identity(6), Rational(0)),
               Error);
}

TEST(Darboux, Breakdown) {
  const auto J = build_jacobi(family_recurrence(kL, 8), 5);
  auto mu = naturals(6);
  mu[3] = 7;
  try {
    darboux_lu_step(J, Rational(0), unit_lower_bidiagonal(mu, 5), mu[5]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FactorizationBreakdown);
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(Darboux, UTimesLReproducesShiftedJ) {
  const auto J = build_jacobi(family_recurrence(kL, 12), 8);
  const auto L = unit_lower_bidiagonal(naturals(9), 8);
  const auto step = darboux_factor(J, Rational(0), L, Rational(8));
  auto target = J.dense();
  target[7][7] -= 8;
  EXPECT_EQ(oracle::dense_product(step.U.dense(), L.dense()), target);
}

TEST(Darboux, LaguerreChainEqualsTransformAtSize40) {
  const std::size_t n = 40;
  const auto rec = family_recurrence(kL, n + 2);
  const auto rel = family_relation(kL, n + 2);
  const auto d = decompose_iterative(rec, rel, Rational(1), n);
  const auto JR = darboux_lu_step(build_jacobi(rec, n), d.x1(), unit_lower_bidiagonal(d.mu(), n), d.mu()[n]);
  const auto JQ = darboux_lu_step(JR, d.x2(), unit_lower_bidiagonal(d.lambda(), n), d.lambda()[n]);
  EXPECT_EQ(JQ, truncated_transform(rec, rel, n));
  EXPECT_EQ(JQ, build_jacobi(transformed_coefficients(rec, rel, n), n));
}

TEST(Darboux, ChebyshevUChain) {
  const std::size_t n = 24;
  const auto rec = family_recurrence(kU, n + 2);
  const auto rel = family_relation(kU, n + 2);
  const auto adm = admissible_mu1(rec, rel);
  ASSERT_FALSE(adm.values.empty());
  const auto d = decompose_iterative(rec, rel, adm.values.front(), n);
  const auto JR = darboux_lu_step(build_jacobi(rec, n), d.x1(), unit_lower_bidiagonal(d.mu(), n), d.mu()[n]);
  const auto JQ = darboux_lu_step(JR, d.x2(), unit_lower_bidiagonal(d.lambda(), n), d.lambda()[n]);
  EXPECT_EQ(JQ, build_jacobi(transformed_coefficients(rec, rel, n), n));
}

TEST(Darboux, LUThenULRoundTrip) {
  // J' = L U + x I; refactoring J' - x I = L U and swapping back gives J.
  for (const auto& spec : {kU, kL}) {
    const auto rec = family_recurrence(spec, 16);
    const Rational x = spec.kind == FamilyKind::Laguerre ? Rational(0) : Rational(-1);
    const Seq mu = spec.kind == FamilyKind::Laguerre ? naturals(14) : Seq(15, R("1/2"));
    const auto J = build_jacobi(rec, 12);
    const auto step = darboux_factor(J, x, unit_lower_bidiagonal(mu, 12), mu[12]);
    const auto lu = lu_factor_shifted(step.result, x);
    EXPECT_EQ(lu.L.band(-1), unit_lower_bidiagonal(mu, 12).band(-1));
    EXPECT_EQ(lu.U.band(0), step.U.band(0)) << family_name(spec.kind);
    const auto back = (lu.U * lu.L).plus_identity(x);
    EXPECT_TRUE(equal_on_window(back, J, 11));
  }
}

TEST(Darboux, LUFactorBreakdown) {
  // J - x I with a zero leading pivot
  const auto J = build_jacobi(family_recurrence(kU, 4), 3);
  try {
    lu_factor_shifted(J, Rational(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FactorizationBreakdown);
    EXPECT_EQ(e.index(), 0u);
  }
}

TEST(Christoffel, Examples) {
  const auto r = christoffel_coefficients(family_recurrence(kL, 12), Rational(0), naturals(12), 10);
  for (std::size_t n = 0; n <= 10; ++n) EXPECT_EQ(r[n], static_cast<long>(n) + 2);
  const auto u = christoffel_coefficients(family_recurrence(kU, 12), Rational(-1), Seq(12, R("1/2")), 10);
  for (const auto& x : u) EXPECT_EQ(x, R("1/2"));
  auto mu = naturals(12);
  mu[4] = 9;  // r_3 = beta_3 - mu_4 = 0
  try {
    christoffel_coefficients(family_recurrence(kL, 12), Rational(0), mu, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroChristoffel);
    EXPECT_EQ(e.index(), 3u);
  }
}

TEST(Christoffel, MatchesPolynomialIdentity) {
  // (x - x*) P_n = R_{n+1} + r_n R_n with R_n = P_n + n P_{n-1}
  const auto rec = family_recurrence(kL, 12);
  const auto mu = naturals(12);
  const auto r = christoffel_coefficients(rec, Rational(0), mu, 9);
  const auto P = generate_polynomials(rec, 11);
  std::vector<Polynomial<Rational>> Rn{P[0]};
  for (std::size_t n = 1; n <= 10; ++n) Rn.push_back(P[n] + mu[n] * P[n - 1]);
  for (std::size_t n = 0; n <= 9; ++n)
    EXPECT_EQ(P[n] * Polynomial<Rational>::monomial(1), Rn[n + 1] + r[n] * Rn[n]);
}

TEST(Jacobi, FloatChainAgreesWithExact) {
  const FamilySpec<double> spec{FamilyKind::ChebyshevU, 0, 1};
  const auto rec = family_recurrence(spec, 30);
  const auto rel = family_relation(spec, 30);
  const auto JQ = truncated_transform(rec, rel, 20);
  const auto JQx = truncated_transform(family_recurrence(kU, 30), family_relation(kU, 30), 20);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j)
      EXPECT_NEAR(JQ.at(i, j), JQx.at(i, j).convert_to<double>(), 1e-10);
}
