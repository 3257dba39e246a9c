#include <doctest.h>

#include <numeric>

#include "hartogs/errors.hpp"
#include "hartogs/exact_index.hpp"

using namespace hartogs;

namespace {

// Largest integer k with k <= 1 - 2(m+n)/p, found by integer search on
// k*a <= a - 2(m+n)*b for p = a/b.
std::int64_t floor_by_search(std::int64_t m, std::int64_t n, std::int64_t a, std::int64_t b) {
  std::int64_t k = 1;
  while (k * a > a - 2 * (m + n) * b) --k;
  return k;
}

PInterval iv(Rational lo, std::optional<Rational> hi) { return PInterval::open(lo, hi); }

}  // namespace

TEST_CASE("shape reduces to lowest terms and rejects zero") {
  GammaShape s(4, 6);
  CHECK(s.m() == 2);
  CHECK(s.n() == 3);
  CHECK(s.gamma() == Rational(2, 3));
  CHECK_THROWS_AS(GammaShape(0, 1), PreconditionError);
  CHECK_THROWS_AS(GammaShape(1, -2), PreconditionError);
  CHECK_THROWS_AS(LatticeIndex(-1, 0), PreconditionError);
  CHECK_THROWS_AS(TestMonomial(0, -1), PreconditionError);
  CHECK_THROWS_AS(SobolevOrder(-1, 0), PreconditionError);
}

TEST_CASE("lp threshold floor") {
  CHECK(lp_threshold_floor(GammaShape(1, 1), Rational(2)) == -1);
  CHECK(lp_threshold_floor(GammaShape(1, 1), Rational(4)) == 0);
  CHECK(lp_threshold_floor(GammaShape(1, 2), Rational(2)) == -2);
  CHECK(lp_threshold_floor(GammaShape(1, 1), Rational(4, 3)) == -2);
  CHECK(lp_threshold_floor(GammaShape(1, 1), Rational(6, 5)) == -3);
  CHECK_THROWS_AS(lp_threshold_floor(GammaShape(1, 1), Rational(1, 2)), PreconditionError);

  for (std::int64_t m = 1; m <= 6; ++m) {
    for (std::int64_t n = 1; n <= 6; ++n) {
      if (std::gcd(m, n) != 1) continue;
      for (std::int64_t b = 1; b <= 7; ++b) {
        for (std::int64_t a = b; a <= 9 * b; ++a) {
          CAPTURE(m);
          CAPTURE(n);
          CAPTURE(a);
          CAPTURE(b);
          CHECK(lp_threshold_floor(GammaShape(m, n), Rational(a, b)) == floor_by_search(m, n, a, b));
        }
      }
    }
  }
}

TEST_CASE("allowable set membership") {
  const GammaShape h1(1, 1);
  CHECK(is_allowable(h1, Rational(2), LatticeIndex(0, -1)));
  CHECK_FALSE(is_allowable(h1, Rational(2), LatticeIndex(0, -2)));
  CHECK(is_allowable(GammaShape(1, 2), Rational(2), LatticeIndex(0, -2)));
  CHECK(is_allowable(h1, Rational(4), LatticeIndex(1, -1)));
  CHECK_FALSE(is_allowable(h1, Rational(4), LatticeIndex(0, -1)));
}

TEST_CASE("allowability is monotone in p") {
  const std::vector<Rational> ps = {Rational(1), Rational(6, 5), Rational(4, 3), Rational(3, 2),
                                    Rational(2), Rational(3),    Rational(4),    Rational(5)};
  for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 5}}) {
    const GammaShape s(m, n);
    for (std::int64_t a1 = 0; a1 <= 8; ++a1) {
      for (std::int64_t a2 = -12; a2 <= 8; ++a2) {
        for (std::size_t i = 1; i < ps.size(); ++i) {
          if (is_allowable(s, ps[i], LatticeIndex(a1, a2))) {
            CHECK(is_allowable(s, ps[i - 1], LatticeIndex(a1, a2)));
          }
        }
      }
    }
  }
}

TEST_CASE("boundary ray") {
  const auto ray = boundary_ray(GammaShape(1, 1), Rational(2));
  CHECK(ray.contains(0, -1));
  CHECK(ray.contains(1, -2));
  CHECK_FALSE(ray.contains(0, 0));
  CHECK_FALSE(ray.contains(-1, 0));
  CHECK(ray.intercept() == Rational(-1));
  CHECK(boundary_ray(GammaShape(1, 2), Rational(2)).intercept() == Rational(-2));
  CHECK(boundary_ray(GammaShape(2, 1), Rational(3, 2)).intercept() == Rational(-3, 2));
}

TEST_CASE("lp interval") {
  CHECK(lp_interval(GammaShape(1, 1)) == iv(Rational(4, 3), Rational(4)));
  CHECK(lp_interval(GammaShape(1, 2)) == iv(Rational(3, 2), Rational(3)));
  CHECK(lp_interval(GammaShape(2, 1)) == iv(Rational(3, 2), Rational(3)));
  CHECK(lp_interval(GammaShape(1, 1)).str() == "(4/3, 4)");
  for (std::int64_t m = 1; m <= 10; ++m) {
    for (std::int64_t n = 1; n <= 10; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const auto I = lp_interval(GammaShape(m, n));
      CHECK(I.contains(Rational(2)));
      CHECK(I == lp_interval(GammaShape(n, m)));
    }
  }
}

TEST_CASE("interval ends are open and intersection behaves") {
  const auto I = iv(Rational(4, 3), Rational(4));
  CHECK_FALSE(I.contains(Rational(4, 3)));
  CHECK_FALSE(I.contains(Rational(4)));
  CHECK(I.contains(Rational(2)));
  CHECK(I.intersect(iv(Rational(1), Rational(2))) == iv(Rational(4, 3), Rational(2)));
  CHECK(I.intersect(iv(Rational(4), std::nullopt)).is_empty());
  CHECK(iv(Rational(1), std::nullopt).str() == "(1, inf)");
  CHECK(PInterval::empty().str() == "empty");
  CHECK_THROWS_AS(iv(Rational(2), Rational(2)), PreconditionError);
  CHECK_THROWS_AS(iv(Rational(1, 2), Rational(2)), PreconditionError);
}

TEST_CASE("sobolev failure threshold") {
  CHECK(sobolev_failure_threshold(GammaShape(1, 1), SobolevOrder(0, 0)) == Rational(4));
  CHECK(sobolev_failure_threshold(GammaShape(1, 1), SobolevOrder(1, 0)) == Rational(2));
  CHECK(sobolev_failure_threshold(GammaShape(2, 1), SobolevOrder(0, 1)) == Rational(3, 2));
  CHECK(sobolev_failure_threshold(GammaShape(1, 1), SobolevOrder(2, 0)) == Rational(4, 3));
  for (std::int64_t m = 1; m <= 10; ++m) {
    for (std::int64_t n = 1; n <= 10; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const GammaShape s(m, n);
      CHECK(sobolev_failure_threshold(s, SobolevOrder(0, 0)) == *lp_interval(s).upper());
    }
  }
}

TEST_CASE("witness index") {
  CHECK(witness_index(GammaShape(1, 1), 0) == TestMonomial(0, 1));
  CHECK(witness_index(GammaShape(1, 1), 1) == TestMonomial(1, 2));
  CHECK(witness_index(GammaShape(2, 1), 0) == TestMonomial(0, 1));
  CHECK(witness_index(GammaShape(1, 1), 2) == TestMonomial(2, 3));
  for (std::int64_t m = 1; m <= 7; ++m) {
    for (std::int64_t n = 1; n <= 7; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const GammaShape s(m, n);
      for (std::int64_t j = 0; j <= 5; ++j) {
        const auto beta = witness_index(s, j);
        CHECK(beta.b1() >= j);
        CHECK(boundary_ray(s, Rational(2)).contains(beta.b1(), -beta.b2()));
        // nothing smaller works
        for (std::int64_t b1 = j; b1 < beta.b1(); ++b1) {
          CHECK((n * b1 + m + n - 1) % m != 0);
        }
      }
    }
  }
}

TEST_CASE("cd conditions") {
  CHECK(cd_conditions_hold({Rational(2), Rational(2), GammaShape(1, 1)}));
  CHECK(cd_conditions_hold({Rational(0), Rational(2), GammaShape(1, 1)}));
  CHECK_FALSE(cd_conditions_hold({Rational(0), Rational(0), GammaShape(1, 1)}));
  const auto failures = cd_condition_failures({Rational(0), Rational(0), GammaShape(1, 1)});
  REQUIRE(failures.size() == 1);
  CHECK(failures[0].find("c+d") != std::string::npos);
  // m = 2, n = 3: one-sided bound 2*3*(1/2) - 2 = 1
  CHECK_FALSE(cd_conditions_hold({Rational(1), Rational(5), GammaShape(2, 3)}));
}

TEST_CASE("cd interval") {
  CHECK(cd_interval({Rational(1), Rational(3), GammaShape(1, 2)}) == iv(Rational(6, 5), Rational(2)));
  CHECK(cd_interval({Rational(2), Rational(2), GammaShape(1, 1)}) == iv(Rational(1), std::nullopt));
  CHECK(cd_interval({Rational(0), Rational(2), GammaShape(1, 1)}) == iv(Rational(1), Rational(2)));
  CHECK(cd_interval({Rational(0), Rational(6), GammaShape(1, 3)}) == iv(Rational(1), Rational(4, 3)));
  CHECK_THROWS_AS(cd_interval({Rational(0), Rational(0), GammaShape(1, 1)}), AdmissibilityError);
  for (std::int64_t n = 1; n <= 10; ++n) {
    const GammaShape s(1, n);
    CHECK(cd_interval({Rational(n - 1), Rational(n + 1), s}) ==
          iv(Rational(2 * n + 2, n + 3), Rational(2)));
    CHECK(cd_interval({Rational(0), Rational(2 * n), s}) == iv(Rational(1), Rational(2 * n + 2, 2 * n)));
  }
}

TEST_CASE("cd interval is a nonempty subinterval of (1, inf) on an admissible grid") {
  for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 2}}) {
    const GammaShape s(m, n);
    for (std::int64_t c4 = -16; c4 <= 40; ++c4) {
      for (std::int64_t d4 = -16; d4 <= 40; ++d4) {
        CDBound b{Rational(c4, 4), Rational(d4, 4), s};
        if (!cd_conditions_hold(b)) {
          CHECK_THROWS_AS(cd_interval(b), AdmissibilityError);
          continue;
        }
        const auto I = cd_interval(b);
        CHECK_FALSE(I.is_empty());
        CHECK(I.lower() >= Rational(1));
      }
    }
  }
}

TEST_CASE("intersection of the two derivative bounds gives (4/3, 2)") {
  const GammaShape h1(1, 1);
  const auto a = cd_interval({Rational(0), Rational(2), h1});
  const auto b = cd_interval({Rational(0), Rational(2), h1});
  CHECK(a.intersect(b).intersect(lp_interval(h1)) == iv(Rational(4, 3), Rational(2)));
}

TEST_CASE("schur p range") {
  CHECK(schur_p_range(Rational(0), Rational(1), Rational(0), Rational(1)) == iv(Rational(1), std::nullopt));
  CHECK(schur_p_range(Rational(1, 4), Rational(1), Rational(1, 4), Rational(1)) ==
        iv(Rational(5, 4), Rational(5)));
  CHECK(schur_p_range(Rational(1, 2), Rational(1), Rational(1, 2), Rational(1)) ==
        iv(Rational(3, 2), Rational(3)));
  CHECK_THROWS_AS(schur_p_range(Rational(1), Rational(1, 2), Rational(0), Rational(1)), PreconditionError);
  CHECK_THROWS_AS(schur_p_range(Rational(0), Rational(1), Rational(-1), Rational(1)), PreconditionError);
}
