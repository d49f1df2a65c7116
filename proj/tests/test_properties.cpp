// Randomized checks over rational instances. Truth for "is Q orthogonal" is
// the Favard test on explicit polynomials from the oracle header.
#include <gtest/gtest.h>

#include "opert/opert.hpp"
#include "oracle.hpp"
#include "random_instances.hpp"

using namespace opert;
using oracle::Instance;
using oracle::R;

namespace {

constexpr std::size_t kN = 10;       // orthogonality window
constexpr std::size_t kNMax = kN + 2;

std::vector<Polynomial<Rational>> explicit_q(const Instance& in, std::size_t N) {
  const auto P = generate_polynomials(in.rec, N);
  return oracle::q_polynomials(P, in.rel.s_values(), in.rel.t_values(), N);
}

RecurrenceCoefficients<double> to_double(const RecurrenceCoefficients<Rational>& r) {
  std::vector<double> b, g;
  for (const auto& x : r.betas()) b.push_back(x.convert_to<double>());
  for (const auto& x : r.gammas()) g.push_back(x.convert_to<double>());
  return {b, g};
}

OneThreeRelation<double> to_double(const OneThreeRelation<Rational>& r) {
  std::vector<double> s, t;
  for (const auto& x : r.s_values()) s.push_back(x.convert_to<double>());
  for (const auto& x : r.t_values()) t.push_back(x.convert_to<double>());
  return {s, t};
}

}  // namespace

TEST(Properties, ValidInstancesHaveConstantSequences) {
  oracle::RationalSource src(101);
  for (int i = 0; i < 40; ++i) {
    const auto in = oracle::valid_instance(src, kNMax);
    ASSERT_FALSE(oracle::first_non_favard(explicit_q(in, kNMax), kNMax).has_value());
    EXPECT_TRUE(check_orthogonality(in.rec, in.rel, kN).ok);
    const auto cs = constant_sequences(in.rec, in.rel, kN - 1);
    for (const auto& a : cs.A) EXPECT_EQ(a, in.modification.a);
    for (const auto& b : cs.B) EXPECT_EQ(b, in.modification.b);
    const auto m = recover_modification(in.rec, in.rel);
    EXPECT_EQ(m.k, in.modification.k);
    EXPECT_EQ(consistent_v1(in.rec, in.rel), in.v1);
    for (const auto& r : gammasintilde_residuals(in.rec, in.rel, kN - 1)) EXPECT_EQ(r, 0);
  }
}

TEST(Properties, FunctionalRelationRoundTrip) {
  oracle::RationalSource src(102);
  for (int i = 0; i < 20; ++i) {
    const auto rec = oracle::random_recurrence(src, 12);
    const auto u = moments_from_recurrence(rec, 20);
    const Rational a = src.any(), b = src.any(), k = src.nonzero(), c = src.any(), m0 = src.nonzero();
    const auto v = propagate_quadratic_modification(u, a, b, k, src.any());
    const auto hv = apply_polynomial(Polynomial<Rational>::monic_quadratic(a, b), v);
    for (std::size_t n = 0; n <= 20; ++n) EXPECT_EQ(hv[n], k * u[n]);
    const auto w = apply_polynomial(Polynomial<Rational>::linear_factor(c), divide_by_linear(u, c, m0));
    for (std::size_t n = 0; n <= 20; ++n) EXPECT_EQ(w[n], u[n]);
  }
}

TEST(Properties, HankelIffGramSchmidt) {
  oracle::RationalSource src(103);
  for (int i = 0; i < 60; ++i) {
    std::vector<Rational> m{1};
    for (int j = 1; j <= 10; ++j) m.push_back(src.coin() ? Rational(0) : src.any(2, 2));
    const MomentFunctional<Rational> u(m);
    bool all_nonzero = true;
    for (std::size_t n = 0; n <= 4; ++n) all_nonzero = all_nonzero && hankel_determinant(u, n) != 0;
    bool smop_ok = true;
    try {
      smop_from_moments(u, 4);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::QuasiDefinitenessFailure);
      smop_ok = false;
    }
    EXPECT_EQ(all_nonzero, smop_ok);
  }
}

TEST(Properties, RejectionMatchesFavardOracle) {
  oracle::RationalSource src(104);
  int rejected = 0;
  for (int i = 0; i < 150; ++i) {
    const auto in = oracle::invalid_candidate(src, kNMax, kN - 3);
    const bool orthogonal = !oracle::first_non_favard(explicit_q(in, kNMax), kN + 1).has_value();
    const auto verdict = check_orthogonality(in.rec, in.rel, kN);
    EXPECT_EQ(verdict.ok, orthogonal);
    if (orthogonal) continue;
    ++rejected;
    const auto cs = constant_sequences(in.rec, in.rel, kN - 1);
    EXPECT_TRUE(!is_constant(cs.A).ok() || !is_constant(cs.B).ok())
        << "rejected at " << verdict.index << " (" << to_string(verdict.equation) << ") with constant A, B";
  }
  EXPECT_GE(rejected, 140);
}

TEST(Properties, ExtendRelationReproducesValidInstances) {
  oracle::RationalSource src(105);
  for (int i = 0; i < 20; ++i) {
    const auto in = oracle::valid_instance(src, kNMax);
    const auto& r = in.rel;
    const RelationSeeds<Rational> seeds{r.s(1), r.s(2), r.s(3), r.t(2), r.t(3)};
    EXPECT_EQ(extend_relation(in.rec, seeds, kNMax), r);
  }
}

TEST(Properties, MatrixIdentitiesOnRandomInstances) {
  oracle::RationalSource src(106);
  for (int i = 0; i < 15; ++i) {
    const auto in = oracle::valid_instance(src, kNMax);
    const auto& m = in.modification;
    const std::size_t n = kN;
    const auto JP = build_jacobi(in.rec, n);
    const auto JQ = build_jacobi(transformed_coefficients(in.rec, in.rel, n), n);
    const auto M = build_M(in.rel, n);
    EXPECT_EQ(truncated_transform(in.rec, in.rel, n), JQ);
    const auto N = factor_N(in.rec, in.rel, m.a, m.b, n);
    EXPECT_TRUE(verify_christoffel_identity(JP, M, N, m.a, m.b).ok);
    EXPECT_TRUE(verify_quadratic_identity(JQ, M, N, m.a, m.b).ok);
    EXPECT_TRUE(verify_intertwining(JP, JQ, M).ok);
  }
}

TEST(Properties, FloatModeAgreesOnValidInstances) {
  oracle::RationalSource src(107);
  for (int i = 0; i < 20; ++i) {
    const auto in = oracle::valid_instance(src, kNMax);
    const auto rec = to_double(in.rec);
    const auto rel = to_double(in.rel);
    EXPECT_TRUE(check_orthogonality(rec, rel, kN, Tolerance{1e-8}).ok);
    const auto m = recover_modification(rec, rel, Tolerance{1e-8});
    EXPECT_TRUE(equal(m.a, in.modification.a.convert_to<double>(), Tolerance{1e-8}));
    EXPECT_TRUE(equal(m.b, in.modification.b.convert_to<double>(), Tolerance{1e-8}));
  }
}
