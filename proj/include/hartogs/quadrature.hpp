#pragma once

// Deterministic quadrature on the disc, annuli, the Reinhardt shadow of
// H_{m/n} and the full 4-real-dimensional triangle.
//
// One-dimensional rules are Gauss-Legendre panels. Faces where the integrand
// has an algebraic singularity get a geometric stack of panels shrinking by
// `panel_ratio` down to `singular_depth`, whose innermost panel is graded by
// t -> t^g. Interior foci (near-diagonal kernel peaks) get `refinement_depth`
// geometric levels from each side. Error estimates compare against the same
// mesh at half the node budget.
//
// Parallel sums are split into a fixed set of chunks and reduced by a fixed
// pairwise tree, so results do not depend on the worker count
// (HARTOGS_THREADS, default hardware concurrency).

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "hartogs/exact_index.hpp"
#include "hartogs/kernels.hpp"

namespace hartogs {

enum class QuadMode { Tensor, MonteCarlo };
std::string to_string(QuadMode mode);

struct QuadConfig {
  int nodes_per_axis = 96;
  double grading_exponent = 3.0;
  std::int64_t mc_samples = 2'000'000;
  std::uint64_t seed = 20240601;
  QuadMode mode = QuadMode::Tensor;
  // Geometric mesh. panel_gauss_order = 0 means max(4, nodes_per_axis / 6).
  double panel_ratio = 0.25;
  double singular_depth = 1e-24;
  int refinement_depth = 3;
  int panel_gauss_order = 0;

  static QuadConfig defaults_2d();
  static QuadConfig defaults_4d();
  int panel_order() const;
  /// Same mesh with half the node budget; used for error estimates.
  QuadConfig halved() const;
  /// Throws PreconditionError on out-of-range fields.
  void validate() const;
};

struct DiscRegion {
  double radius = 1.0;
  double puncture_radius = 0.0;
  cplx center = 0.0;
};
struct AnnulusRegion {
  double r_in = 0.5;
  double r_out = 1.0;
  cplx center = 0.0;
};
struct HartogsShadow {
  GammaShape shape{1, 1};
  double delta_cut = 0.0;
};
struct Hartogs4D {
  GammaShape shape{1, 1};
  double delta_cut = 0.0;
};
using Region = std::variant<DiscRegion, AnnulusRegion, HartogsShadow, Hartogs4D>;

std::string to_string(const Region& region);
void validate(const Region& region);
bool is_origin_centered(const Region& region);

struct IntegralResult {
  cplx value;
  double error_estimate = 0.0;
  std::string method;
  std::int64_t cells_or_samples = 0;
  /// error_estimate <= 1e-6 * max(1, |value|) for Tensor results; always
  /// false for Monte Carlo, whose error is statistical.
  bool resolved = false;
};

// ---- one-dimensional rules --------------------------------------------------

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
  // Exact distances to the interval ends, generated alongside x so that
  // integrands singular at a face can avoid cancellation in (hi - x).
  std::vector<double> d_lo;
  std::vector<double> d_hi;
  std::size_t size() const { return x.size(); }
};

/// n-point Gauss-Legendre on [-1, 1], Newton iteration on the three-term
/// recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct Face {
  enum class Kind { Smooth, Power, Geometric };
  Kind kind = Kind::Smooth;
  double depth = 0.0;  // Geometric only: innermost panel length relative to the half-segment
  double grade = 0.0;  // Geometric only: innermost panel map exponent, 0 for grading_exponent
};

struct Focus {
  double at;
  double depth;  // relative innermost panel length on each side
};

struct AxisSpec {
  double lo = 0.0;
  double hi = 1.0;
  Face lo_face;
  Face hi_face;
  std::vector<Focus> foci;  // inside (lo, hi)
  bool periodic = false;    // trapezoid rule when there are no foci
  int trapezoid_nodes = 0;  // 0: nodes_per_axis
};

Rule1D build_rule(const AxisSpec& axis, const QuadConfig& config);

// ---- integrals --------------------------------------------------------------

using RadialShadowFn = std::function<cplx(double r1, double r2)>;
using RadialDiscFn = std::function<cplx(double r)>;
using PlanarFn = std::function<cplx(cplx w)>;
using HartogsFn = std::function<cplx(const HPoint& w)>;

/// 4 pi^2 int int f(r1, r2) r1 r2 dr1 dr2 over {r1 < r2^{n/m}, delta_cut < r2 < 1}.
IntegralResult integrate_radial(const HartogsShadow& region, const RadialShadowFn& f,
                                const QuadConfig& config = QuadConfig::defaults_2d());
/// 2 pi int f(r) r dr over (puncture_radius, radius). Requires a centered disc.
IntegralResult integrate_radial(const DiscRegion& region, const RadialDiscFn& f,
                                const QuadConfig& config = QuadConfig::defaults_2d());

/// Area integral of f over a disc or annulus (polar coordinates about the
/// region's center).
IntegralResult integrate_planar(const Region& region, const PlanarFn& f,
                                const QuadConfig& config = QuadConfig::defaults_2d());

/// int f dV over H_{m/n} cut to |z2| > delta_cut, in coordinates
/// w2 = r2 e^{i t2}, w1 = r2^{n/m} u e^{i t1}, dV = r2^{2n/m+1} u du dt1 dr2 dt2.
IntegralResult integrate_4d(const Hartogs4D& region, const HartogsFn& f,
                            const QuadConfig& config = QuadConfig::defaults_4d());

/// int_D K(z, w) f(w) dV(w) for a disc kernel.
IntegralResult apply_kernel(const KernelId& id, const PlanarFn& f, cplx z,
                            const QuadConfig& config = QuadConfig::defaults_2d());
/// int_H K(z, w) f(w) dV(w) for a Hartogs kernel, with refinement rings
/// around w2 = z2 and w1 = z1.
IntegralResult apply_kernel(const KernelId& id, const HartogsFn& f, const HPoint& z,
                            const QuadConfig& config = QuadConfig::defaults_4d());

struct SampleRatio {
  cplx z;
  double ratio;
  double error_estimate;
};
struct HSampleRatio {
  HPoint z;
  double ratio;
  double error_estimate;
};

/// int_D (1-|w|^2)^-eps |1 - z conj(w)|^-2 |w|^-A dV(w) / (1-|z|^2)^-eps.
/// Requires 0 < eps < 1 and A < 2.
std::vector<SampleRatio> forelli_rudin_ratio(double epsilon, double A, const std::vector<cplx>& z_samples,
                                             const QuadConfig& config = QuadConfig::defaults_2d());

/// |w2|^R (|w2|^{2n} - |w1|^{2m}) (1 - |w2|^2).
double auxiliary_h(const GammaShape& shape, double R, const HPoint& w);

/// Admissible window [alpha, beta) for the three-factor h:
///   alpha = max(0, (2n - c)/(2n + R)),  beta = (d + 2n/m - 2n + 2)/(2n + R).
struct SchurWindow {
  Rational alpha;
  Rational beta;
  bool admits(double epsilon) const;
  std::string str() const;
};
SchurWindow schur_window(const CDBound& bound, const Rational& R);

/// The disc case: int |B_D(z,w)| (1-|w|^2)^-eps dV(w) / (1-|z|^2)^-eps, any
/// 0 < eps < 1.
std::vector<SampleRatio> schur_ratio_disc(double epsilon, const std::vector<cplx>& z_samples,
                                          const QuadConfig& config = QuadConfig::defaults_2d());

/// int |K(z,w)| h(w)^-eps dV(w) / h(z)^-eps on H_{m/n} with the three-factor h.
/// The bound exponents (c, d) used for the window are those of the kernel:
/// thin(n) and series(1/n) use c = d = n, sub uses c = d = 2. Throws
/// PreconditionError when eps is outside the window.
std::vector<HSampleRatio> schur_ratio(const KernelId& id, double R, double epsilon,
                                      const std::vector<HPoint>& z_samples,
                                      const QuadConfig& config = QuadConfig::defaults_4d());

/// (c, d, shape) of the model bound a Hartogs kernel satisfies.
CDBound kernel_cd_bound(const KernelId& id);

// ---- plumbing exposed for tests ----------------------------------------------

/// Worker count from HARTOGS_THREADS (>= 1), else hardware concurrency.
int worker_count();
/// sum_{i < chunks} chunk(i), chunks evaluated in parallel, reduced by a
/// fixed pairwise tree.
cplx deterministic_sum(std::size_t chunks, const std::function<cplx(std::size_t)>& chunk);
/// Counter-based uniform in [0, 1): depends only on (seed, index, dim).
double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint32_t dim);

}  // namespace hartogs
