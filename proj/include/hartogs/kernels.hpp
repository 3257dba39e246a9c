#pragma once

// Pointwise kernel evaluation on the unit disc and on H_{m/n}.
//
// Every Hartogs kernel here is a function of s1 = z1 conj(w1), s2 = z2 conj(w2):
//
//   thin(n)      (1/pi^2) s2^n / ((1-s2)^2 (s2^n - s1)^2)               on H_{1/n}
//   thin-mod(n)  thin(s1, s2) - thin(0, s2)
//   sub          (1/pi^2) (2 s2^2 - s2^3) / ((s2 - s1)^2 (1-s2)^2)       on H_1
//   sub-mod      sub(s1, s2) - sub(0, s2)
//
// and the series kernel sums s1^a1 s2^a2 / ||z^a||^2 over an index set.
// Modified kernels are *defined* by the subtraction; the rational forms
// implemented below are tested against it.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "hartogs/exact_index.hpp"
#include "hartogs/monomial.hpp"

namespace hartogs {

using cplx = std::complex<double>;

struct HPoint {
  cplx z1;
  cplx z2;
};

enum class Membership { Strict, Closure };

/// Names the first violated inequality ("|z2| < 1", "z2 != 0",
/// "|z1|^m < |z2|^n"), or nullopt for a member.
std::optional<std::string> membership_violation(const GammaShape& shape, const HPoint& z,
                                                Membership mode = Membership::Strict);

/// Throws DomainMembershipError naming `role` and the violated inequality.
void require_member(const GammaShape& shape, const HPoint& z, const char* role);
void require_in_disc(cplx z, const char* role);

struct SeriesTruncation {
  std::int64_t max_weight = 400;
  double tail_tol = 1e-15;
};

enum class StopReason { Converged, WeightCap };
std::string to_string(StopReason reason);

struct SeriesValue {
  cplx value;
  StopReason stop = StopReason::Converged;
  std::int64_t last_weight = 0;  // last n*a1 + m*a2 shell summed
  std::int64_t terms = 0;
  bool converged() const { return stop == StopReason::Converged; }
};

namespace kernel_id {
struct Disc {};
struct DiscModified {
  int k = 1;
};
struct ThinHartogs {
  int n = 1;
};
struct HartogsSeries {
  GammaShape shape{1, 1};
  SeriesTruncation trunc{};
  Basis basis = Basis::Full;
};
struct ThinHartogsModified {
  int n = 1;
};
struct SubBergmanInfinity {};
struct SubBergmanInfinityModified {};
}  // namespace kernel_id

using KernelId = std::variant<kernel_id::Disc, kernel_id::DiscModified, kernel_id::ThinHartogs,
                              kernel_id::HartogsSeries, kernel_id::ThinHartogsModified,
                              kernel_id::SubBergmanInfinity, kernel_id::SubBergmanInfinityModified>;

std::string to_string(const KernelId& id);
bool is_disc_kernel(const KernelId& id);
/// The domain shape, or nullopt for the disc kernels.
std::optional<GammaShape> kernel_shape(const KernelId& id);
/// Throws PreconditionError for k < 1 or n < 1.
void validate(const KernelId& id);

// ---- disc --------------------------------------------------------------

/// (1/pi)(1 - z conj(w))^-2.
cplx disc_kernel(cplx z, cplx w);
/// (1/pi) sum_{j<N} (j+1)(z conj(w))^j.
cplx disc_kernel_series(cplx z, cplx w, int terms);
/// (1/pi)((k+1)s^k - k s^{k+1}) / (1-s)^2, which equals the disc kernel minus
/// its first k Taylor terms in s.
cplx disc_modified_kernel(cplx z, cplx w, int k);

// ---- Hartogs triangles --------------------------------------------------

cplx thin_hartogs_kernel(int n, const HPoint& z, const HPoint& w);
cplx thin_hartogs_modified_kernel(int n, const HPoint& z, const HPoint& w);
cplx subbergman_kernel(const HPoint& z, const HPoint& w);
cplx subbergman_modified_kernel(const HPoint& z, const HPoint& w);

/// sum over the basis index set of s1^a1 s2^a2 / ||z^a||^2, shells of
/// increasing weight n*a1 + m*a2, then increasing a1. Stops once two
/// consecutive windows of m shells contribute at most tail_tol * |sum|
/// (in absolute term size), or reports WeightCap.
SeriesValue hartogs_series_kernel(const GammaShape& shape, const HPoint& z, const HPoint& w,
                                  const SeriesTruncation& trunc = {}, Basis basis = Basis::Full);

/// The sub-Bergman kernel as a series over S(H_1, L^inf).
SeriesValue subbergman_kernel_series(const HPoint& z, const HPoint& w, const SeriesTruncation& trunc = {});

/// K(z, w) for a Hartogs kernel, with membership checks. Series kernels throw
/// QuadratureError when the series did not converge.
cplx kernel_value(const KernelId& id, const HPoint& z, const HPoint& w);
/// K(z, w) for a disc kernel, with membership checks.
cplx kernel_value(const KernelId& id, cplx z, cplx w);

/// pi^2 |K(z,w)| / ( |z2|^c |w2|^d / (|1 - z2 conj(w2)|^2 |z2^n conj(w2)^n - z1^m conj(w1)^m|^2) ).
/// The pi^2 removes the kernels' common normalization so the ratio is the
/// implied constant. Throws ShapeMismatchError for disc kernels or when the
/// bound's shape differs from the kernel's.
double kernel_bound_ratio(const KernelId& id, const CDBound& bound, const HPoint& z, const HPoint& w);

namespace detail {
// Formula evaluation without membership checks, for quadrature inner loops.
cplx thin(int n, cplx s1, cplx s2);
cplx thin_modified(int n, cplx s1, cplx s2);
cplx sub(cplx s1, cplx s2);
cplx sub_modified(cplx s1, cplx s2);
SeriesValue series(std::int64_t m, std::int64_t n, cplx s1, cplx s2, const SeriesTruncation& trunc,
                   Basis basis);
/// Dispatches on id; s1, s2 as above (s2 = z conj(w) for disc kernels).
cplx evaluate(const KernelId& id, cplx s1, cplx s2);
}  // namespace detail

}  // namespace hartogs
