#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "hartogs/errors.hpp"
#include "hartogs/monomial.hpp"

using namespace hartogs;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// 4 pi^2 * int_0^1 int_0^{r2^{n/m}} r1^{p a1 + 1} r2^{p a2 + 1} dr1 dr2 by a
// substitution r1 = r2^{n/m} u and composite Simpson in (u, s) with r2 = s^4.
double shadow_integral(int m, int n, int a1, int a2, double p) {
  const int N = 2000;
  auto simpson = [&](auto&& f) {
    const double h = 1.0 / N;
    double acc = f(0.0) + f(1.0);
    for (int i = 1; i < N; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return acc * h / 3.0;
  };
  const double u_part = simpson([&](double u) { return std::pow(u, p * a1 + 1); });
  const double g = static_cast<double>(n) / m;
  const double r_part = simpson([&](double s) {
    if (s == 0.0) return 0.0;
    const double r2 = std::pow(s, 4);
    return std::pow(r2, p * a2 + 1 + g * (p * a1 + 2)) * 4 * std::pow(s, 3);
  });
  return 4 * kPi2 * u_part * r_part;
}

}  // namespace

TEST_CASE("monomial norms match the worked values") {
  const GammaShape h1(1, 1);
  CHECK(monomial_lp_norm_pth_power(h1, LatticeIndex(0, 0), Rational(2)) == NormValue::finite(Rational(1, 2)));
  CHECK(monomial_lp_norm_pth_power(h1, LatticeIndex(0, -1), Rational(2)) == NormValue::finite(Rational(1)));
  CHECK(monomial_lp_norm_pth_power(h1, LatticeIndex(0, -2), Rational(2)) == NormValue::log_divergent());
  CHECK(monomial_lp_norm_pth_power(h1, LatticeIndex(1, 0), Rational(2)) == NormValue::finite(Rational(1, 6)));
  CHECK(monomial_lp_norm_pth_power(h1, LatticeIndex(0, -2), Rational(3)) ==
        NormValue::power_divergent(Rational(-2)));
  CHECK_THROWS_AS(monomial_lp_norm_pth_power(h1, LatticeIndex(0, 0), Rational(1, 2)), PreconditionError);
}

TEST_CASE("monomial norms agree with an independent Simpson oracle") {
  struct Case {
    int m, n, a1, a2;
    double p;
  };
  for (const Case c : {Case{1, 1, 0, 0, 2.0}, Case{1, 1, 1, 0, 2.0}, Case{1, 2, 2, 1, 3.0},
                       Case{2, 1, 1, -1, 1.5}, Case{2, 3, 3, 2, 1.25}, Case{1, 1, 2, -1, 4.0}}) {
    const auto v = monomial_lp_norm_pth_power(GammaShape(c.m, c.n), LatticeIndex(c.a1, c.a2),
                                              Rational::parse(std::to_string(c.p).substr(0, 6)));
    REQUIRE(v.is_finite());
    CHECK(v.to_double() == doctest::Approx(shadow_integral(c.m, c.n, c.a1, c.a2, c.p)).epsilon(1e-7));
  }
}

TEST_CASE("finite norm exactly when allowable") {
  const std::vector<Rational> ps = {Rational(5, 4), Rational(4, 3), Rational(3, 2), Rational(2),
                                    Rational(3),    Rational(4),    Rational(5)};
  for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 3}}) {
    const GammaShape s(m, n);
    for (const auto& p : ps) {
      for (std::int64_t a1 = 0; a1 <= 8; ++a1) {
        for (std::int64_t a2 = -8; a2 <= 8; ++a2) {
          const LatticeIndex idx(a1, a2);
          CHECK(monomial_lp_norm_pth_power(s, idx, p).is_finite() == is_allowable(s, p, idx));
        }
      }
    }
  }
}

TEST_CASE("inverse L2 norm helper matches the exact norm") {
  for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {2, 3}}) {
    for (int a1 = 0; a1 <= 5; ++a1) {
      for (int a2 = -6; a2 <= 4; ++a2) {
        const auto v = monomial_lp_norm_pth_power(GammaShape(m, n), LatticeIndex(a1, a2), Rational(2));
        if (!v.is_finite()) continue;
        CHECK(inverse_l2_norm_sq(m, n, a1, a2) == doctest::Approx(1.0 / v.to_double()).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("projection constants") {
  const GammaShape h1(1, 1);
  CHECK(projection_constant(h1, TestMonomial(0, 1), Basis::Full) == Rational(1, 2));
  CHECK(projection_constant(h1, TestMonomial(1, 1), Basis::BoundedSubspace) == Rational(2, 3));
  CHECK(projection_constant(h1, TestMonomial(1, 1), Basis::Full) == Rational(2, 3));
  CHECK_THROWS_AS(projection_constant(h1, TestMonomial(0, 2), Basis::Full), NotAllowableError);
  CHECK_THROWS_AS(projection_constant(h1, TestMonomial(0, 1), Basis::BoundedSubspace), NotAllowableError);

  CHECK(project_monomial(h1, TestMonomial(0, 1), Basis::Full) ==
        LaurentMonomial{Rational(1, 2), LatticeIndex(0, -1)});
  CHECK(project_monomial(h1, TestMonomial(0, 2), Basis::Full).is_zero());
  CHECK(project_monomial(h1, TestMonomial(1, 1), Basis::BoundedSubspace) ==
        LaurentMonomial{Rational(2, 3), LatticeIndex(1, -1)});
}

TEST_CASE("projection constant equals the ratio of two exact norms") {
  // <z1^b1 conj(z2)^b2, z^d> = int |z1|^{2 b1}, so C = ||z1^b1||^2 / ||z^d||^2.
  for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 4}}) {
    const GammaShape s(m, n);
    for (std::int64_t b1 = 0; b1 <= 6; ++b1) {
      for (std::int64_t b2 = 0; b2 <= 6; ++b2) {
        const LatticeIndex d(b1, -b2);
        if (!in_basis(s, d, Basis::Full)) continue;
        const auto num = monomial_lp_norm_pth_power(s, LatticeIndex(b1, 0), Rational(2)).pi2_multiple();
        const auto den = monomial_lp_norm_pth_power(s, d, Rational(2)).pi2_multiple();
        CHECK(projection_constant(s, TestMonomial(b1, b2), Basis::Full) == num / den);
      }
    }
  }
}

TEST_CASE("holomorphic test monomials are reproduced and ray monomials contracted") {
  for (std::int64_t m = 1; m <= 5; ++m) {
    for (std::int64_t n = 1; n <= 5; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const GammaShape s(m, n);
      for (std::int64_t b1 = 0; b1 <= 5; ++b1) {
        CHECK(projection_constant(s, TestMonomial(b1, 0), Basis::Full) == Rational(1));
      }
      for (std::int64_t j = 0; j <= 4; ++j) {
        const auto beta = witness_index(s, j);
        const auto C = projection_constant(s, beta, Basis::Full);
        CHECK(C > Rational(0));
        CHECK(C < Rational(1));
      }
    }
  }
}

TEST_CASE("differentiate") {
  const LaurentMonomial inv_z2{Rational(1), LatticeIndex(0, -1)};
  CHECK(differentiate(inv_z2, SobolevOrder(0, 1)) == LaurentMonomial{Rational(-1), LatticeIndex(0, -2)});
  CHECK(differentiate({Rational(1), LatticeIndex(1, -2)}, SobolevOrder(1, 0)) ==
        LaurentMonomial{Rational(1), LatticeIndex(0, -2)});
  CHECK(differentiate({Rational(1), LatticeIndex(1, 0)}, SobolevOrder(2, 0)).is_zero());
  CHECK(differentiate({Rational(1), LatticeIndex(0, 2)}, SobolevOrder(0, 3)).is_zero());
  CHECK(differentiate({Rational(2, 3), LatticeIndex(3, -2)}, SobolevOrder(2, 2)) ==
        LaurentMonomial{Rational(2, 3) * Rational(6) * Rational(6), LatticeIndex(1, -4)});
}

TEST_CASE("witness reports flip exactly at the threshold") {
  auto r = witness_report(GammaShape(1, 1), SobolevOrder(1, 0), {Rational(9, 5), Rational(2)});
  CHECK(r.beta == TestMonomial(1, 2));
  CHECK(r.threshold == Rational(2));
  CHECK(r.samples[0].derivative_norm.is_finite());
  CHECK_FALSE(r.samples[1].derivative_norm.is_finite());
  CHECK(r.all_consistent());

  r = witness_report(GammaShape(1, 1), SobolevOrder(0, 0), {Rational(4)});
  CHECK(r.projection == LaurentMonomial{Rational(1, 2), LatticeIndex(0, -1)});
  CHECK(r.samples[0].derivative_norm == NormValue::log_divergent());

  // (1,2), j=0, l=1: 6 / (1*2 + 2*1 - 1) = 2
  r = witness_report(GammaShape(1, 2), SobolevOrder(0, 1), {Rational(19, 10), Rational(2)});
  CHECK(r.threshold == Rational(2));
  CHECK(r.samples[0].derivative_norm.is_finite());
  CHECK_FALSE(r.samples[1].derivative_norm.is_finite());
}

TEST_CASE("derivative of the projected witness fails exactly at the Sobolev threshold") {
  for (std::int64_t m = 1; m <= 5; ++m) {
    for (std::int64_t n = 1; n <= 5; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const GammaShape s(m, n);
      for (std::int64_t j = 0; j <= 3; ++j) {
        for (std::int64_t l = 0; l <= 3; ++l) {
          const SobolevOrder order(j, l);
          const auto t = sobolev_failure_threshold(s, order);
          const Rational eps(1, 1000);
          // thresholds below 1 mean failure at every admissible p
          std::vector<Rational> ps = {Rational(1), std::max(t, Rational(1)) + eps};
          if (t >= Rational(1)) ps.push_back(t);
          if (t - eps >= Rational(1)) ps.push_back(t - eps);
          const auto r = witness_report(s, order, ps);
          CHECK(r.all_consistent());
          CHECK_FALSE(r.derivative.is_zero());
        }
      }
    }
  }
}
