#include <gtest/gtest.h>

#include "opert/opert.hpp"
#include "oracle.hpp"

using namespace opert;
using oracle::R;

namespace {

using Spec = FamilySpec<Rational>;
using Rel = OneThreeRelation<Rational>;
using Seq = std::vector<Rational>;

Spec spec(FamilyKind k, const char* p, const char* f) { return Spec{k, R(p), R(f)}; }

/// Regular instances: every family, several parameters each.
std::vector<Spec> regular() {
  return {spec(FamilyKind::ChebyshevU, "0", "1"),        spec(FamilyKind::ChebyshevU, "0", "1/2"),
          spec(FamilyKind::ChebyshevU, "0", "-7/40"),    spec(FamilyKind::ChebyshevU, "0", "3"),
          spec(FamilyKind::ChebyshevT, "0", "1"),        spec(FamilyKind::ChebyshevT, "0", "-2/3"),
          spec(FamilyKind::ChebyshevT, "0", "5/2"),      spec(FamilyKind::Laguerre, "2", "1"),
          spec(FamilyKind::Laguerre, "2", "3"),          spec(FamilyKind::Laguerre, "1", "2"),
          spec(FamilyKind::Laguerre, "3", "5/3"),        spec(FamilyKind::Laguerre, "1/2", "-1"),
          spec(FamilyKind::GeneralizedHermite, "1/2", "2"), spec(FamilyKind::GeneralizedHermite, "3/2", "1"),
          spec(FamilyKind::GeneralizedHermite, "1", "-1/3")};
}

/// Parameters on a quasi-definiteness boundary.
std::vector<Spec> singular() {
  return {spec(FamilyKind::ChebyshevU, "0", "-1/8"),  spec(FamilyKind::ChebyshevU, "0", "-1/6"),
          spec(FamilyKind::ChebyshevU, "0", "-1/12"), spec(FamilyKind::ChebyshevU, "0", "-3/20"),
          spec(FamilyKind::ChebyshevU, "0", "1/4"),   spec(FamilyKind::ChebyshevU, "0", "-3/4"),
          spec(FamilyKind::ChebyshevT, "0", "-1/4"),  spec(FamilyKind::ChebyshevT, "0", "-1/6"),
          spec(FamilyKind::ChebyshevT, "0", "1/2"),   spec(FamilyKind::ChebyshevT, "0", "-1/2"),
          spec(FamilyKind::Laguerre, "2", "1/2"),     spec(FamilyKind::Laguerre, "2", "2/3"),
          spec(FamilyKind::Laguerre, "2", "2"),       spec(FamilyKind::Laguerre, "1", "1/3"),
          spec(FamilyKind::GeneralizedHermite, "3/2", "1/2"), spec(FamilyKind::GeneralizedHermite, "1/2", "1/3"),
          spec(FamilyKind::GeneralizedHermite, "3/2", "2")};
}

std::string label(const Spec& s) {
  return std::string(family_name(s.kind)) + "(" + format_scalar(s.parameter) + ", " + format_scalar(s.free) + ")";
}

/// s_n, t_n read off Gram-Schmidt on the propagated v-moments.
Rel oracle_relation(const Spec& s, std::size_t N) {
  const auto rec = family_recurrence(s, N + 4);
  const auto m = family_modification(s);
  const auto v = propagate_quadratic_modification(family_moments(s, 2 * N + 4), m.a, m.b, m.k,
                                                  target_functional_moments(s, 1)[1]);
  const auto Q = smop_from_moments(v, N).polynomials;
  const auto P = generate_polynomials(rec, N);
  Seq ss{0}, tt{0, 0};
  for (std::size_t n = 1; n <= N; ++n) {
    const auto c = oracle::coordinates(Q[n], P);
    ss.push_back(c[n - 1]);
    if (n >= 2) tt.push_back(c[n - 2]);
  }
  return Rel(ss, tt);
}

}  // namespace

TEST(Names, RoundTrip) {
  for (auto k : all_families) EXPECT_EQ(parse_family(family_name(k)), k);
  EXPECT_EQ(parse_family("generalized-hermite"), FamilyKind::GeneralizedHermite);
  EXPECT_THROW(parse_family("jacobi"), Error);
}

TEST(FamilyRecurrence, Examples) {
  const auto u = family_recurrence(spec(FamilyKind::ChebyshevU, "0", "1"), 5);
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(u.beta(n), 0);
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(u.gamma(n), R("1/4"));
  const auto t = family_recurrence(spec(FamilyKind::ChebyshevT, "0", "1"), 5);
  EXPECT_EQ(t.gamma(1), R("1/2"));
  EXPECT_EQ(t.gamma(2), R("1/4"));
  const auto l = family_recurrence(spec(FamilyKind::Laguerre, "2", "1"), 5);
  EXPECT_EQ(l.beta(0), 3);
  EXPECT_EQ(l.gamma(1), 3);
  EXPECT_EQ(l.beta(4), 11);
  EXPECT_EQ(l.gamma(4), 24);
}

TEST(FamilyRecurrence, InvalidParameters) {
  EXPECT_THROW(family_recurrence(spec(FamilyKind::Laguerre, "-1", "1"), 4), Error);
  EXPECT_THROW(family_recurrence(spec(FamilyKind::GeneralizedHermite, "-1/2", "1"), 4), Error);
}

TEST(FamilyMoments, Examples) {
  EXPECT_EQ(family_moments(spec(FamilyKind::ChebyshevU, "0", "1"), 6).moments(),
            (Seq{1, 0, R("1/4"), 0, R("1/8"), 0, R("5/64")}));
  EXPECT_EQ(family_moments(spec(FamilyKind::ChebyshevT, "0", "1"), 4).moments(), (Seq{1, 0, R("1/2"), 0, R("3/8")}));
  EXPECT_EQ(family_moments(spec(FamilyKind::Laguerre, "2", "1"), 3).moments(), (Seq{1, 3, 12, 60}));
}

TEST(FamilyMoments, ClosedFormsAndRecurrence) {
  const auto u = family_moments(spec(FamilyKind::ChebyshevU, "0", "1"), 30);
  const auto t = family_moments(spec(FamilyKind::ChebyshevT, "0", "1"), 30);
  for (unsigned m = 0; m <= 15; ++m) {
    const Rational four_m = Rational(Integer(1) << (2 * m));
    EXPECT_EQ(u[2 * m], Rational(oracle::catalan(m)) / four_m);
    EXPECT_EQ(t[2 * m], Rational(oracle::central_binomial(m)) / four_m);
  }
  const auto l = family_moments(spec(FamilyKind::Laguerre, "2", "1"), 12);
  for (unsigned n = 0; n <= 12; ++n) EXPECT_EQ(l[n], Rational(oracle::factorial(n + 2)) / 2);
  for (const auto& s : regular()) {
    EXPECT_EQ(smop_from_moments(family_moments(s, 24), 10).recurrence, family_recurrence(s, 10)) << label(s);
    EXPECT_EQ(moments_from_recurrence(family_recurrence(s, 12), 24), family_moments(s, 24)) << label(s);
  }
}

TEST(ClosedForm, Examples) {
  const auto l = spec(FamilyKind::Laguerre, "2", "1");
  EXPECT_EQ(closed_form_parameters(l, 5).t, 4 * 5);  // t_5 = (5 - 1) lambda_5
  EXPECT_EQ(laguerre_lambda(Rational(2), Rational(1), 5), 5);
  const auto u = spec(FamilyKind::ChebyshevU, "0", "1");
  EXPECT_EQ(closed_form_parameters(u, 3).t, R("-13/12"));
  EXPECT_EQ(closed_form_parameters(u, 4).t, R("-9/16"));
  EXPECT_EQ(closed_form_parameters(u, 6).t, R("-7/18"));
  const auto h = spec(FamilyKind::GeneralizedHermite, "1/2", "2");
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(closed_form_parameters(h, 2 * n + 1).t, static_cast<long>(n));
}

TEST(ClosedForm, LaguerreLambdaAgainstRecursion) {
  // lambda_{n+1} from the R-recurrence through the 1-2 step condition
  // beta^R_n - lambda_{n+1} - gamma^R_n / lambda_n = x_2, where x_2 = 0 is
  // the double zero of h = x^2.
  for (const auto& [a, l1] : std::vector<std::pair<const char*, const char*>>{{"2", "2"}, {"2", "5/3"}, {"1", "3"},
                                                                               {"7/2", "-1"}, {"1/3", "4"}}) {
    const Rational alpha = R(a), lambda1 = R(l1);
    Rational lam = lambda1;
    for (std::size_t n = 1; n <= 12; ++n) {
      EXPECT_EQ(laguerre_lambda(alpha, lambda1, n), lam) << a << " " << l1 << " n=" << n;
      const Rational betaR = 2 * static_cast<long>(n) + alpha;
      const Rational gammaR = static_cast<long>(n) * (static_cast<long>(n) + alpha - 1);
      lam = betaR - gammaR / lam;
    }
  }
}

TEST(ClosedForm, EqualsExtendAndOracle) {
  for (const auto& s : regular()) {
    const auto closed = family_relation(s, 30);
    EXPECT_EQ(extend_relation(family_recurrence(s, 30), family_seeds(s), 30), closed) << label(s);
    EXPECT_EQ(oracle_relation(s, 9), closed.truncated(9)) << label(s);
    EXPECT_TRUE(check_orthogonality(family_recurrence(s, 30), closed, 28).ok) << label(s);
  }
}

TEST(ClosedForm, ModificationMatchesRecovery) {
  for (const auto& s : regular()) {
    const auto m = recover_modification(family_recurrence(s, 8), family_relation(s, 8));
    const auto f = family_modification(s);
    EXPECT_EQ(m.a, f.a) << label(s);
    EXPECT_EQ(m.b, f.b) << label(s);
    EXPECT_EQ(m.k, f.k) << label(s);
  }
}

TEST(Condition, Examples) {
  auto rep = quasi_definiteness_condition(spec(FamilyKind::ChebyshevU, "0", "-1/8"), 20);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.condition_index, 2u);
  EXPECT_EQ(rep.relation_index, 4u);
  EXPECT_TRUE(quasi_definiteness_condition(spec(FamilyKind::Laguerre, "2", "1"), 200).ok);
  EXPECT_TRUE(quasi_definiteness_condition(spec(FamilyKind::ChebyshevU, "0", "1"), 100).ok);
  // beyond N the failure is not reported
  EXPECT_TRUE(quasi_definiteness_condition(spec(FamilyKind::ChebyshevU, "0", "-1/8"), 3).ok);
}

TEST(Condition, IndexCoincidesWithBreakdownAndHankel) {
  for (const auto& s : singular()) {
    const auto rep = quasi_definiteness_condition(s, 12);
    ASSERT_FALSE(rep.ok) << label(s);
    // Hankel determinants of v, by cofactor expansion
    const auto v = target_functional_moments(s, 24);
    for (std::size_t n = 0; n < rep.relation_index; ++n) EXPECT_NE(oracle::hankel_det(v.moments(), n), 0) << label(s);
    EXPECT_EQ(oracle::hankel_det(v.moments(), rep.relation_index), 0) << label(s);
    EXPECT_EQ(*is_quasi_definite(v, 12).index, rep.relation_index) << label(s);
    // the recursion breaks at the same t_n when the seeds exist
    try {
      const auto seeds = family_seeds(s);
      try {
        extend_relation(family_recurrence(s, 14), seeds, 12);
        // k = 0 or a t_3 pole: the relation itself is regular
        EXPECT_LE(rep.relation_index, 2u) << label(s);
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Breakdown) << label(s);
        EXPECT_EQ(e.index(), rep.relation_index) << label(s);
      }
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::BreakdownDenominator) << label(s);
      EXPECT_LE(rep.relation_index, 3u) << label(s);
    }
  }
}

TEST(Condition, RegularInstancesPass) {
  for (const auto& s : regular()) {
    EXPECT_TRUE(quasi_definiteness_condition(s, 40).ok) << label(s);
    EXPECT_TRUE(is_quasi_definite(target_functional_moments(s, 30), 14).ok()) << label(s);
  }
}

TEST(TargetMoments, AgreeWithPropagation) {
  for (const auto& s : regular()) {
    const auto m = family_modification(s);
    const auto target = target_functional_moments(s, 30);
    const auto v = propagate_quadratic_modification(family_moments(s, 30), m.a, m.b, m.k, target[1]);
    EXPECT_EQ(v.truncated(30), target) << label(s);
  }
}

TEST(TargetMoments, Examples) {
  const auto l = target_functional_moments(spec(FamilyKind::Laguerre, "2", "1"), 3);
  EXPECT_EQ(l[1], 1);
  // Chebyshev-U, t_2 = 1: 2 (7/4) u_T - (5/4)(delta_1 + delta_-1), v_0 = 7/2 - 5/2 = 1
  const auto u = target_functional_moments(spec(FamilyKind::ChebyshevU, "0", "1"), 4);
  EXPECT_EQ(u[0], 1);
  EXPECT_EQ(u[2], R("7/2") * R("1/2") - R("5/2"));
  // t_2 = -3/4 leaves only the point masses: v_n = (1/2)(1 + (-1)^n)
  const auto p = target_functional_moments(spec(FamilyKind::ChebyshevU, "0", "-3/4"), 6);
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(p[n], n % 2 == 0 ? 1 : 0);
}

TEST(Families, FloatModeAgrees) {
  for (const auto& s : regular()) {
    const FamilySpec<double> d{s.kind, s.parameter.convert_to<double>(), s.free.convert_to<double>()};
    const auto exact = family_relation(s, 20);
    const auto approx = family_relation(d, 20);
    for (std::size_t n = 0; n <= 20; ++n) {
      EXPECT_TRUE(equal(approx.t(n), exact.t(n).convert_to<double>())) << label(s) << " n=" << n;
      EXPECT_TRUE(equal(approx.s(n), exact.s(n).convert_to<double>())) << label(s) << " n=" << n;
    }
    EXPECT_EQ(quasi_definiteness_condition(d, 30).ok, true) << label(s);
  }
}
