#include "hartogs/kernels.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "hartogs/errors.hpp"

namespace hartogs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

cplx ipow(cplx base, std::int64_t e) {
  cplx out(1.0, 0.0);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

std::string point_str(const HPoint& z) {
  auto c = [](cplx v) { return "(" + std::to_string(v.real()) + "," + std::to_string(v.imag()) + ")"; };
  return "(" + c(z.z1) + ", " + c(z.z2) + ")";
}

// n^{-1} mod m for coprime n, m >= 1.
std::int64_t inverse_mod(std::int64_t n, std::int64_t m) {
  if (m == 1) return 0;
  for (std::int64_t x = 1; x < m; ++x) {
    if ((n * x) % m == 1) return x;
  }
  throw std::logic_error("n not invertible mod m");
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const auto r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::optional<std::string> membership_violation(const GammaShape& shape, const HPoint& z, Membership mode) {
  const double r1 = std::abs(z.z1);
  const double r2 = std::abs(z.z2);
  if (r2 == 0.0) return "z2 != 0";
  const bool strict = mode == Membership::Strict;
  if (strict ? !(r2 < 1.0) : !(r2 <= 1.0)) return strict ? "|z2| < 1" : "|z2| <= 1";
  const double lhs = std::pow(r1, static_cast<double>(shape.m()));
  const double rhs = std::pow(r2, static_cast<double>(shape.n()));
  if (strict ? !(lhs < rhs) : !(lhs <= rhs)) return strict ? "|z1|^m < |z2|^n" : "|z1|^m <= |z2|^n";
  return std::nullopt;
}

void require_member(const GammaShape& shape, const HPoint& z, const char* role) {
  if (auto v = membership_violation(shape, z)) {
    throw DomainMembershipError(std::string(role) + " = " + point_str(z) + " is not in H_" + shape.str() +
                                ": violates " + *v + " (m=" + std::to_string(shape.m()) +
                                ", n=" + std::to_string(shape.n()) + ")");
  }
}

void require_in_disc(cplx z, const char* role) {
  if (!(std::abs(z) < 1.0)) {
    throw DomainMembershipError(std::string(role) + " = (" + std::to_string(z.real()) + "," +
                                std::to_string(z.imag()) + ") is not in the unit disc: violates |z| < 1");
  }
}

std::string to_string(StopReason reason) {
  return reason == StopReason::Converged ? "converged" : "weight_cap";
}

std::string to_string(const KernelId& id) {
  return std::visit(overloaded{
                        [](const kernel_id::Disc&) -> std::string { return "disc"; },
                        [](const kernel_id::DiscModified& k) { return "disc-mod(k=" + std::to_string(k.k) + ")"; },
                        [](const kernel_id::ThinHartogs& k) { return "thin(n=" + std::to_string(k.n) + ")"; },
                        [](const kernel_id::HartogsSeries& k) {
                          return "series(" + k.shape.str() + "," + to_string(k.basis) + ")";
                        },
                        [](const kernel_id::ThinHartogsModified& k) {
                          return "thin-mod(n=" + std::to_string(k.n) + ")";
                        },
                        [](const kernel_id::SubBergmanInfinity&) -> std::string { return "sub"; },
                        [](const kernel_id::SubBergmanInfinityModified&) -> std::string { return "sub-mod"; },
                    },
                    id);
}

bool is_disc_kernel(const KernelId& id) {
  return std::holds_alternative<kernel_id::Disc>(id) || std::holds_alternative<kernel_id::DiscModified>(id);
}

std::optional<GammaShape> kernel_shape(const KernelId& id) {
  return std::visit(overloaded{
                        [](const kernel_id::Disc&) -> std::optional<GammaShape> { return std::nullopt; },
                        [](const kernel_id::DiscModified&) -> std::optional<GammaShape> { return std::nullopt; },
                        [](const kernel_id::ThinHartogs& k) -> std::optional<GammaShape> { return GammaShape(1, k.n); },
                        [](const kernel_id::HartogsSeries& k) -> std::optional<GammaShape> { return k.shape; },
                        [](const kernel_id::ThinHartogsModified& k) -> std::optional<GammaShape> {
                          return GammaShape(1, k.n);
                        },
                        [](const kernel_id::SubBergmanInfinity&) -> std::optional<GammaShape> {
                          return GammaShape(1, 1);
                        },
                        [](const kernel_id::SubBergmanInfinityModified&) -> std::optional<GammaShape> {
                          return GammaShape(1, 1);
                        },
                    },
                    id);
}

void validate(const KernelId& id) {
  std::visit(overloaded{
                 [](const kernel_id::DiscModified& k) {
                   if (k.k < 1) throw PreconditionError("modified disc kernel needs k >= 1");
                 },
                 [](const kernel_id::ThinHartogs& k) {
                   if (k.n < 1) throw PreconditionError("thin Hartogs kernel needs n >= 1");
                 },
                 [](const kernel_id::ThinHartogsModified& k) {
                   if (k.n < 1) throw PreconditionError("thin Hartogs kernel needs n >= 1");
                 },
                 [](const kernel_id::HartogsSeries& k) {
                   if (k.trunc.max_weight < 1 || !(k.trunc.tail_tol > 0.0)) {
                     throw PreconditionError("series truncation needs max_weight >= 1 and tail_tol > 0");
                   }
                 },
                 [](const auto&) {},
             },
             id);
}

// ---- disc --------------------------------------------------------------

cplx disc_kernel(cplx z, cplx w) {
  require_in_disc(z, "z");
  require_in_disc(w, "w");
  const cplx one_minus = 1.0 - z * std::conj(w);
  return 1.0 / (kPi * one_minus * one_minus);
}

cplx disc_kernel_series(cplx z, cplx w, int terms) {
  require_in_disc(z, "z");
  require_in_disc(w, "w");
  if (terms < 1) throw PreconditionError("series needs at least one term");
  const cplx s = z * std::conj(w);
  // Horner in s
  cplx acc = 0.0;
  for (int j = terms - 1; j >= 0; --j) acc = acc * s + static_cast<double>(j + 1);
  return acc / kPi;
}

cplx disc_modified_kernel(cplx z, cplx w, int k) {
  require_in_disc(z, "z");
  require_in_disc(w, "w");
  if (k < 1) throw PreconditionError("modified disc kernel needs k >= 1");
  return detail::evaluate(kernel_id::DiscModified{k}, 0.0, z * std::conj(w));
}

// ---- Hartogs -------------------------------------------------------------

namespace detail {

cplx thin(int n, cplx s1, cplx s2) {
  const cplx s2n = ipow(s2, n);
  const cplx a = 1.0 - s2;
  const cplx b = s2n - s1;
  return s2n / (kPi2 * a * a * b * b);
}

cplx thin_modified(int n, cplx s1, cplx s2) {
  const cplx s2n = ipow(s2, n);
  const cplx a = 1.0 - s2;
  const cplx b = s2n - s1;
  return (2.0 * s1 * s2n - s1 * s1) / (kPi2 * s2n * a * a * b * b);
}

cplx sub(cplx s1, cplx s2) {
  const cplx a = 1.0 - s2;
  const cplx b = s2 - s1;
  return s2 * s2 * (2.0 - s2) / (kPi2 * b * b * a * a);
}

cplx sub_modified(cplx s1, cplx s2) {
  const cplx a = 1.0 - s2;
  const cplx b = s2 - s1;
  return s1 * (4.0 * s2 - 2.0 * s2 * s2 - 2.0 * s1 + s1 * s2) / (kPi2 * a * a * b * b);
}

SeriesValue series(std::int64_t m, std::int64_t n, cplx s1, cplx s2, const SeriesTruncation& trunc,
                   Basis basis) {
  const double tol = trunc.tail_tol;
  const double ln1 = std::log(std::abs(s1));  // -inf when s1 == 0
  const double ln2 = std::log(std::abs(s2));
  const double arg1 = std::arg(s1);
  const double arg2 = std::arg(s2);

  // a1 cap: (A+1) q^{A/m} below tol/100, q = |s1|^m / |s2|^n.
  std::int64_t a1_cap = 0;
  bool a1_capped = false;
  if (std::abs(s1) > 0.0) {
    const double lnq_per_a1 = ln1 - (static_cast<double>(n) / m) * ln2;
    const double target = std::log(tol * 1e-2);
    if (!(lnq_per_a1 < 0.0)) {
      a1_cap = trunc.max_weight;
      a1_capped = true;
    } else {
      while (std::log(static_cast<double>(a1_cap + 1)) + a1_cap * lnq_per_a1 >= target) {
        if (++a1_cap >= trunc.max_weight) {
          a1_capped = true;
          break;
        }
      }
    }
  }

  const std::int64_t w0 = basis == Basis::Full ? 1 - m - n : 0;
  const std::int64_t n_inv = inverse_mod(n % m, m);
  std::vector<cplx> row(static_cast<std::size_t>(a1_cap + 1));
  std::vector<char> started(row.size(), 0);
  std::vector<double> window;  // |term| sums of the last m shells
  window.reserve(static_cast<std::size_t>(m));

  SeriesValue out{};
  cplx sum = 0.0;
  double abs_total = 0.0;
  int quiet = 0;
  for (std::int64_t w = w0;; ++w) {
    if (w > trunc.max_weight) {
      out.stop = StopReason::WeightCap;
      out.last_weight = w - 1;
      break;
    }
    double shell_abs = 0.0;
    const double coeff_w = static_cast<double>(w + m + n) / (static_cast<double>(m) * kPi2);
    for (std::int64_t a1 = mod(w * n_inv, m); a1 <= a1_cap; a1 += m) {
      const std::int64_t a2 = (w - n * a1) / m;
      auto& term = row[static_cast<std::size_t>(a1)];
      if (!started[static_cast<std::size_t>(a1)]) {
        const double mag = a1 == 0 ? a2 * ln2 : a1 * ln1 + a2 * ln2;
        term = std::polar(std::exp(mag), a1 * arg1 + a2 * arg2);
        started[static_cast<std::size_t>(a1)] = 1;
      } else {
        term *= s2;
      }
      const cplx t = (static_cast<double>(a1 + 1) * coeff_w) * term;
      sum += t;
      shell_abs += std::abs(t);
      ++out.terms;
    }
    abs_total += shell_abs;
    if (static_cast<std::int64_t>(window.size()) == m) window.erase(window.begin());
    window.push_back(shell_abs);
    if (static_cast<std::int64_t>(window.size()) == m) {
      double recent = 0.0;
      for (double v : window) recent += v;
      quiet = recent <= tol * abs_total ? quiet + 1 : 0;
      if (quiet >= 2) {
        out.stop = StopReason::Converged;
        out.last_weight = w;
        break;
      }
    }
  }
  if (a1_capped) out.stop = StopReason::WeightCap;
  out.value = sum;
  return out;
}

cplx evaluate(const KernelId& id, cplx s1, cplx s2) {
  return std::visit(
      overloaded{
          [&](const kernel_id::Disc&) -> cplx {
            const cplx a = 1.0 - s2;
            return 1.0 / (kPi * a * a);
          },
          [&](const kernel_id::DiscModified& k) -> cplx {
            const cplx a = 1.0 - s2;
            const cplx sk = ipow(s2, k.k);
            return (static_cast<double>(k.k + 1) * sk - static_cast<double>(k.k) * sk * s2) / (kPi * a * a);
          },
          [&](const kernel_id::ThinHartogs& k) { return thin(k.n, s1, s2); },
          [&](const kernel_id::HartogsSeries& k) -> cplx {
            const auto v = series(k.shape.m(), k.shape.n(), s1, s2, k.trunc, k.basis);
            if (!v.converged()) {
              throw QuadratureError("series kernel did not converge by weight " +
                                    std::to_string(k.trunc.max_weight));
            }
            return v.value;
          },
          [&](const kernel_id::ThinHartogsModified& k) { return thin_modified(k.n, s1, s2); },
          [&](const kernel_id::SubBergmanInfinity&) { return sub(s1, s2); },
          [&](const kernel_id::SubBergmanInfinityModified&) { return sub_modified(s1, s2); },
      },
      id);
}

}  // namespace detail

namespace {

void check_pair(const GammaShape& shape, const HPoint& z, const HPoint& w) {
  require_member(shape, z, "z");
  require_member(shape, w, "w");
}

void check_singular_set(int n, cplx s1, cplx s2) {
  if (ipow(s2, n) - s1 == cplx(0.0, 0.0)) {
    throw DomainMembershipError("z2^n conj(w2)^n == z1 conj(w1): point pair on the kernel's singular set");
  }
}

}  // namespace

cplx thin_hartogs_kernel(int n, const HPoint& z, const HPoint& w) {
  if (n < 1) throw PreconditionError("thin Hartogs kernel needs n >= 1");
  check_pair(GammaShape(1, n), z, w);
  const cplx s1 = z.z1 * std::conj(w.z1);
  const cplx s2 = z.z2 * std::conj(w.z2);
  check_singular_set(n, s1, s2);
  return detail::thin(n, s1, s2);
}

cplx thin_hartogs_modified_kernel(int n, const HPoint& z, const HPoint& w) {
  if (n < 1) throw PreconditionError("thin Hartogs kernel needs n >= 1");
  check_pair(GammaShape(1, n), z, w);
  const cplx s1 = z.z1 * std::conj(w.z1);
  const cplx s2 = z.z2 * std::conj(w.z2);
  check_singular_set(n, s1, s2);
  return detail::thin_modified(n, s1, s2);
}

cplx subbergman_kernel(const HPoint& z, const HPoint& w) {
  check_pair(GammaShape(1, 1), z, w);
  const cplx s1 = z.z1 * std::conj(w.z1);
  const cplx s2 = z.z2 * std::conj(w.z2);
  check_singular_set(1, s1, s2);
  return detail::sub(s1, s2);
}

cplx subbergman_modified_kernel(const HPoint& z, const HPoint& w) {
  check_pair(GammaShape(1, 1), z, w);
  const cplx s1 = z.z1 * std::conj(w.z1);
  const cplx s2 = z.z2 * std::conj(w.z2);
  check_singular_set(1, s1, s2);
  return detail::sub_modified(s1, s2);
}

SeriesValue hartogs_series_kernel(const GammaShape& shape, const HPoint& z, const HPoint& w,
                                  const SeriesTruncation& trunc, Basis basis) {
  validate(kernel_id::HartogsSeries{shape, trunc, basis});
  check_pair(shape, z, w);
  return detail::series(shape.m(), shape.n(), z.z1 * std::conj(w.z1), z.z2 * std::conj(w.z2), trunc, basis);
}

SeriesValue subbergman_kernel_series(const HPoint& z, const HPoint& w, const SeriesTruncation& trunc) {
  return hartogs_series_kernel(GammaShape(1, 1), z, w, trunc, Basis::BoundedSubspace);
}

cplx kernel_value(const KernelId& id, const HPoint& z, const HPoint& w) {
  validate(id);
  const auto shape = kernel_shape(id);
  if (!shape) throw ShapeMismatchError(to_string(id) + " is a disc kernel; evaluate it at disc points");
  check_pair(*shape, z, w);
  const cplx s1 = z.z1 * std::conj(w.z1);
  const cplx s2 = z.z2 * std::conj(w.z2);
  if (shape->m() == 1) check_singular_set(static_cast<int>(shape->n()), s1, s2);
  return detail::evaluate(id, s1, s2);
}

cplx kernel_value(const KernelId& id, cplx z, cplx w) {
  validate(id);
  if (!is_disc_kernel(id)) throw ShapeMismatchError(to_string(id) + " is not a disc kernel");
  require_in_disc(z, "z");
  require_in_disc(w, "w");
  return detail::evaluate(id, 0.0, z * std::conj(w));
}

double kernel_bound_ratio(const KernelId& id, const CDBound& bound, const HPoint& z, const HPoint& w) {
  const auto shape = kernel_shape(id);
  if (!shape) throw ShapeMismatchError(to_string(id) + " lives on the disc; the bound is for H_" + bound.shape.str());
  if (!(*shape == bound.shape)) {
    throw ShapeMismatchError(to_string(id) + " lives on H_" + shape->str() + " but the bound is for H_" +
                             bound.shape.str());
  }
  const cplx k = kernel_value(id, z, w);
  const cplx s1 = z.z1 * std::conj(w.z1);
  const cplx s2 = z.z2 * std::conj(w.z2);
  const double near = std::norm(1.0 - s2);
  const double sing = std::norm(ipow(s2, shape->n()) - ipow(s1, shape->m()));
  const double model = std::pow(std::abs(z.z2), bound.c.to_double()) *
                       std::pow(std::abs(w.z2), bound.d.to_double()) / (near * sing);
  return kPi2 * std::abs(k) / model;
}

}  // namespace hartogs
