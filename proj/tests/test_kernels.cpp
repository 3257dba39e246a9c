#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hartogs/errors.hpp"
#include "hartogs/kernels.hpp"

using namespace hartogs;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

HPoint random_member(std::mt19937_64& rng, int m, int n, double r2_max = 0.95, double u_max = 0.95) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double r2 = 0.05 + (r2_max - 0.05) * U(rng);
  const double u = u_max * U(rng);
  const double r1 = std::pow(r2, static_cast<double>(n) / m) * u;
  return {std::polar(r1, 2 * kPi * U(rng)), std::polar(r2, 2 * kPi * U(rng))};
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Independent brute-force series: double loop over a box of indices, no
// shell ordering, coefficients from the exact rational norm.
cplx brute_series(int m, int n, const HPoint& z, const HPoint& w, Basis basis, int box) {
  const cplx s1 = z.z1 * std::conj(w.z1);
  const cplx s2 = z.z2 * std::conj(w.z2);
  cplx sum = 0.0;
  for (int a1 = 0; a1 <= box; ++a1) {
    for (int a2 = -box * n; a2 <= box; ++a2) {
      if (!in_basis(GammaShape(m, n), LatticeIndex(a1, a2), basis)) continue;
      const auto norm = monomial_lp_norm_pth_power(GammaShape(m, n), LatticeIndex(a1, a2), Rational(2));
      sum += std::pow(s1, a1) * std::pow(s2, a2) / norm.to_double();
    }
  }
  return sum;
}

}  // namespace

TEST_CASE("disc kernel values") {
  CHECK(std::abs(disc_kernel(0.0, 0.0) - 1.0 / kPi) < 1e-15);
  CHECK(std::abs(disc_kernel(0.5, 0.5) - 16.0 / (9.0 * kPi)) < 1e-14);
  const cplx z(0.3, 0.0), w(0.0, 0.4);
  CHECK(std::abs(disc_kernel_series(z, w, 60) - disc_kernel(z, w)) < 1e-10);
  CHECK_THROWS_AS(disc_kernel(1.0, 0.0), DomainMembershipError);
}

TEST_CASE("modified disc kernel is the kernel minus its Taylor head") {
  CHECK(std::abs(disc_modified_kernel(0.0, cplx(0.3, 0.2), 1)) == 0.0);
  CHECK(std::abs(disc_modified_kernel(0.5, 0.5, 1) - 7.0 / (9.0 * kPi)) < 1e-14);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z = std::polar(0.95 * U(rng), 2 * kPi * U(rng));
    const cplx w = std::polar(0.95 * U(rng), 2 * kPi * U(rng));
    for (int k = 1; k <= 4; ++k) {
      const cplx head = disc_kernel_series(z, w, k);
      CHECK(std::abs(disc_modified_kernel(z, w, k) - (disc_kernel(z, w) - head)) <
            1e-12 * std::max(1.0, std::abs(disc_kernel(z, w))));
    }
  }
}

TEST_CASE("thin Hartogs kernel on the z1 = 0 slice") {
  for (double t : {0.2, 0.5, 0.8}) {
    const HPoint p{0.0, t};
    CHECK(thin_hartogs_kernel(1, p, p).real() ==
          doctest::Approx(1.0 / (kPi2 * t * t * std::pow(1 - t * t, 2))).epsilon(1e-14));
    CHECK(thin_hartogs_kernel(2, p, p).real() ==
          doctest::Approx(1.0 / (kPi2 * std::pow(t, 4) * std::pow(1 - t * t, 2))).epsilon(1e-14));
  }
}

TEST_CASE("membership errors name the violated inequality") {
  const HPoint good{0.1, 0.5};
  try {
    thin_hartogs_kernel(1, {0.6, 0.5}, good);
    FAIL("expected DomainMembershipError");
  } catch (const DomainMembershipError& e) {
    CHECK(std::string(e.what()).find("|z1|^m < |z2|^n") != std::string::npos);
  }
  CHECK_THROWS_AS(thin_hartogs_kernel(1, good, {0.0, 1.0}), DomainMembershipError);
  CHECK_THROWS_AS(subbergman_kernel(good, {0.0, 0.0}), DomainMembershipError);
  CHECK(membership_violation(GammaShape(1, 1), {0.5, 0.5}, Membership::Closure) == std::nullopt);
  CHECK(membership_violation(GammaShape(1, 1), {0.5, 0.5}) == std::string("|z1|^m < |z2|^n"));
  // |z1|^{2/3} < |z2|: 0.3^2 = 0.09 < 0.5^3 = 0.125
  CHECK_FALSE(membership_violation(GammaShape(2, 3), {0.3, 0.5}).has_value());
  CHECK(membership_violation(GammaShape(2, 3), {0.4, 0.5}).has_value());
}

TEST_CASE("series kernel matches the closed form on thin triangles") {
  SeriesTruncation trunc{80, 1e-15};
  auto v = hartogs_series_kernel(GammaShape(1, 1), {0.0, 0.5}, {0.0, 0.5}, trunc);
  CHECK(v.converged());
  CHECK(rel(v.value, thin_hartogs_kernel(1, {0.0, 0.5}, {0.0, 0.5})) < 1e-8);
  v = hartogs_series_kernel(GammaShape(1, 2), {0.0, 0.6}, {0.0, 0.6}, trunc);
  CHECK(v.converged());
  CHECK(rel(v.value, thin_hartogs_kernel(2, {0.0, 0.6}, {0.0, 0.6})) < 1e-8);

  std::mt19937_64 rng(11);
  for (int n = 1; n <= 3; ++n) {
    int tested = 0;
    while (tested < 200) {
      const HPoint z = random_member(rng, 1, n), w = random_member(rng, 1, n);
      const cplx s1 = z.z1 * std::conj(w.z1), s2 = z.z2 * std::conj(w.z2);
      if (std::abs(s2) > 0.7 || std::abs(s1) > 0.7 * std::pow(std::abs(s2), n)) continue;
      ++tested;
      const auto sv = hartogs_series_kernel(GammaShape(1, n), z, w);
      CHECK(sv.converged());
      CHECK(rel(sv.value, thin_hartogs_kernel(n, z, w)) < 1e-8);
    }
  }
}

TEST_CASE("series kernel matches an unordered brute-force sum") {
  std::mt19937_64 rng(5);
  for (auto [m, n] : {std::pair{2, 3}, {3, 1}, {2, 1}}) {
    for (int i = 0; i < 10; ++i) {
      const HPoint z = random_member(rng, m, n, 0.5, 0.5), w = random_member(rng, m, n, 0.5, 0.5);
      const auto sv = hartogs_series_kernel(GammaShape(m, n), z, w);
      CHECK(sv.converged());
      const cplx brute = brute_series(m, n, z, w, Basis::Full, 60);
      CHECK(rel(sv.value, brute) < 1e-10);
    }
  }
}

TEST_CASE("series kernel is real and positive on the diagonal for a general shape") {
  const HPoint p{0.1, 0.7};
  const auto v = hartogs_series_kernel(GammaShape(2, 3), p, p);
  CHECK(v.converged());
  CHECK(v.value.real() > 0.0);
  CHECK(std::abs(v.value.imag()) < 1e-12 * v.value.real());
}

TEST_CASE("series kernel reports the weight cap") {
  const HPoint p{0.0, 0.99};
  const auto v = hartogs_series_kernel(GammaShape(1, 1), p, p, SeriesTruncation{40, 1e-15});
  CHECK_FALSE(v.converged());
  CHECK(v.stop == StopReason::WeightCap);
  CHECK(v.last_weight == 40);
  CHECK_THROWS_AS(kernel_value(kernel_id::HartogsSeries{GammaShape(1, 1), {40, 1e-15}, Basis::Full}, p, p),
                  QuadratureError);
}

TEST_CASE("sub-Bergman kernel") {
  for (double t : {0.3, 0.5, 0.7}) {
    const HPoint p{0.0, t};
    CHECK(subbergman_kernel(p, p).real() ==
          doctest::Approx((2 - t * t) / (kPi2 * std::pow(1 - t * t, 2))).epsilon(1e-14));
  }
  const auto v = subbergman_kernel_series({0.0, 0.5}, {0.0, 0.5});
  CHECK(v.converged());
  CHECK(rel(v.value, subbergman_kernel({0.0, 0.5}, {0.0, 0.5})) < 1e-8);

  std::mt19937_64 rng(3);
  int tested = 0;
  while (tested < 200) {
    const HPoint z = random_member(rng, 1, 1), w = random_member(rng, 1, 1);
    const cplx s1 = z.z1 * std::conj(w.z1), s2 = z.z2 * std::conj(w.z2);
    if (std::abs(s2) > 0.7 || std::abs(s1) > 0.7 * std::abs(s2)) continue;
    ++tested;
    CHECK(rel(subbergman_kernel_series(z, w).value, subbergman_kernel(z, w)) < 1e-8);
    CHECK(rel(subbergman_kernel_series(z, w).value, brute_series(1, 1, z, w, Basis::BoundedSubspace, 80)) <
          1e-8);
  }
}

TEST_CASE("modified kernels are subtraction identities") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    for (int n = 1; n <= 3; ++n) {
      const HPoint z = random_member(rng, 1, n), w = random_member(rng, 1, n);
      const cplx diff = thin_hartogs_kernel(n, z, w) - thin_hartogs_kernel(n, {0.0, z.z2}, {0.0, w.z2});
      CHECK(std::abs(thin_hartogs_modified_kernel(n, z, w) - diff) <=
            1e-12 * std::max(1.0, std::abs(thin_hartogs_kernel(n, z, w))));
    }
    const HPoint z = random_member(rng, 1, 1), w = random_member(rng, 1, 1);
    const cplx diff = subbergman_kernel(z, w) - subbergman_kernel({0.0, z.z2}, {0.0, w.z2});
    CHECK(std::abs(subbergman_modified_kernel(z, w) - diff) <=
          1e-12 * std::max(1.0, std::abs(subbergman_kernel(z, w))));
  }
  CHECK(thin_hartogs_modified_kernel(2, {0.0, 0.5}, {0.1, 0.6}) == cplx(0.0, 0.0));
  CHECK(subbergman_modified_kernel({0.0, 0.5}, {0.1, 0.6}) == cplx(0.0, 0.0));
}

TEST_CASE("conjugate symmetry and diagonal positivity") {
  std::mt19937_64 rng(23);
  const std::vector<KernelId> ids = {kernel_id::ThinHartogs{1}, kernel_id::ThinHartogs{2},
                                     kernel_id::ThinHartogsModified{1}, kernel_id::SubBergmanInfinity{},
                                     kernel_id::SubBergmanInfinityModified{}};
  for (int i = 0; i < 300; ++i) {
    for (const auto& id : ids) {
      const auto shape = *kernel_shape(id);
      const HPoint z = random_member(rng, 1, static_cast<int>(shape.n()));
      const HPoint w = random_member(rng, 1, static_cast<int>(shape.n()));
      const cplx a = kernel_value(id, z, w), b = kernel_value(id, w, z);
      CHECK(std::abs(a - std::conj(b)) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
    const HPoint z = random_member(rng, 1, 1);
    for (const KernelId& id : {KernelId(kernel_id::ThinHartogs{1}), KernelId(kernel_id::SubBergmanInfinity{})}) {
      const cplx d = kernel_value(id, z, z);
      CHECK(d.real() > 0.0);
      CHECK(std::abs(d.imag()) <= 1e-12 * d.real());
    }
  }
}

TEST_CASE("kernel bound ratio") {
  const CDBound sub_bound{Rational(2), Rational(2), GammaShape(1, 1)};
  CHECK(kernel_bound_ratio(kernel_id::SubBergmanInfinity{}, sub_bound, {0.0, 0.5}, {0.0, 0.5}) ==
        doctest::Approx(1.75).epsilon(1e-13));
  const CDBound thin_bound{Rational(1), Rational(1), GammaShape(1, 1)};
  for (double t : {0.2, 0.6, 0.9}) {
    CHECK(kernel_bound_ratio(kernel_id::ThinHartogs{1}, thin_bound, {0.0, t}, {0.0, t}) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(kernel_bound_ratio(kernel_id::Disc{}, sub_bound, {0.0, 0.5}, {0.0, 0.5}), ShapeMismatchError);
  CHECK_THROWS_AS(kernel_bound_ratio(kernel_id::ThinHartogs{2}, sub_bound, {0.0, 0.5}, {0.0, 0.5}),
                  ShapeMismatchError);

  // thin-mod against |z1||w1||z2|^n|w2|^n / (|z2|^n|w2|^n |1-s2|^2 |s2^n-s1|^2):
  // the ratio is |2 s2^n - s1| / |s2|^n < 3 on the triangle
  std::mt19937_64 rng(29);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 500; ++i) {
      const HPoint z = random_member(rng, 1, n), w = random_member(rng, 1, n);
      const cplx k = thin_hartogs_modified_kernel(n, z, w);
      const cplx s1 = z.z1 * std::conj(w.z1), s2 = z.z2 * std::conj(w.z2);
      const double model = std::abs(s1) * std::pow(std::abs(s2), n) /
                           (std::pow(std::abs(s2), n) * std::norm(1.0 - s2) * std::norm(std::pow(s2, n) - s1));
      CHECK(kPi2 * std::abs(k) / model <= 3.0 + 1e-9);
    }
  }
}
