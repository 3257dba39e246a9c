#pragma once

// Executable checks of the identities and estimates behind the Bergman
// projection results. Every check returns a CheckReport; nothing here
// asserts operator boundedness directly, only exact interval formulas,
// finite-vs-infinite witness norms, truncated growth rates and sampled
// integral ratios.

#include <optional>
#include <string>
#include <vector>

#include "hartogs/json_io.hpp"
#include "hartogs/quadrature.hpp"

namespace hartogs {

struct CheckReport {
  std::string name;
  json inputs;    // everything needed to rerun the check, config included
  json measured;
  bool pass = false;
  double tolerance = 0.0;
  double runtime_ms = 0.0;

  /// fnv1a_hex of name + canonical inputs.
  std::string digest() const;
  json to_json() const;
  static CheckReport from_json(const json& j);
};

struct RateFit {
  enum class Model { Finite, Log, Power };
  std::vector<double> delta_samples;
  std::vector<double> measured;  // truncated integrals of |derivative|^p over {|z2| > delta}
  Model model = Model::Finite;
  // Power: exponent k in I ~ A delta^k. Log: slope B in I ~ A + B ln(1/delta).
  // Finite: the exact value of the full integral.
  double fitted_exponent = 0.0;
  double predicted_exponent = 0.0;
  double relative_misfit = 0.0;
  NormValue classification = NormValue::log_divergent();
  /// misfit <= 0.1 and the fitted exponent within 10% of the prediction.
  bool pass() const;
  json to_json() const;
  static RateFit from_json(const json& j);
};
std::string to_string(RateFit::Model model);

/// T_w g = conj(w) dg/dconj(w) - w dg/dw by central differences at each point.
CheckReport check_radial_annihilation(const std::string& label, const PlanarFn& g, const std::vector<cplx>& points,
                                      double fd_step = 1e-5);

/// int T_w f * g + int f * T_w g over a disc or annulus, T_w by central
/// differences. A region not centered at the origin is measured anyway but
/// the report fails: the identity has a boundary term there.
CheckReport check_integration_by_parts(const std::string& label, const Region& region, const PlanarFn& f,
                                       const PlanarFn& g, const QuadConfig& config = QuadConfig::defaults_2d(),
                                       double fd_step = 1e-5);

/// max |B(z^idx)(z) - z^idx| / (|z^idx| + 1) over the points. For disc
/// kernels idx.a2() must be 0 and the points' z1 is the disc variable.
/// Throws NotAllowableError when z^idx is not in the kernel's subspace.
CheckReport check_reproducing(const KernelId& id, const LatticeIndex& idx, const std::vector<HPoint>& z_points,
                              double tol, const QuadConfig& config = QuadConfig::defaults_4d());
CheckReport check_reproducing_disc(const KernelId& id, std::int64_t k, const std::vector<cplx>& z_points, double tol,
                                   const QuadConfig& config = QuadConfig::defaults_2d());

/// apply_kernel on z1^b1 conj(z2)^b2 against project_monomial. The kernel is
/// thin(n) for the Full basis on H_{1/n}, sub for the bounded subspace on
/// H_1, and the series kernel otherwise.
CheckReport check_projection_constants(const GammaShape& shape, const TestMonomial& beta, Basis basis,
                                       const std::vector<HPoint>& z_points, double tol,
                                       const QuadConfig& config = QuadConfig::defaults_4d());

/// Truncated norms of the witness derivative, fitted by the model the exact
/// classification predicts. Requires >= 4 strictly decreasing deltas in (0, 1).
RateFit certify_divergence_rate(const GammaShape& shape, const SobolevOrder& order, const Rational& p,
                                const std::vector<double>& deltas,
                                const QuadConfig& config = QuadConfig::defaults_2d());
CheckReport check_divergence_rate(const GammaShape& shape, const SobolevOrder& order, const Rational& p,
                                  const std::vector<double>& deltas,
                                  const QuadConfig& config = QuadConfig::defaults_2d());

struct IntervalRow {
  std::string label;
  PInterval computed;
  PInterval stated;
};
/// The stated intervals, each recomputed from lp_interval / cd_interval.
std::vector<IntervalRow> theorem_interval_rows();
CheckReport check_theorem_intervals();

/// Forelli-Rudin ratios along the radii; passes when every ratio is finite
/// and at most `factor` times the first.
CheckReport check_forelli_rudin(double epsilon, double A, const std::vector<double>& radii, double factor = 50.0,
                                const QuadConfig& config = QuadConfig::defaults_2d());
/// Disc Schur ratios with h = 1 - |w|^2, same criterion.
CheckReport check_schur_disc(double epsilon, const std::vector<double>& radii, double factor = 50.0,
                             const QuadConfig& config = QuadConfig::defaults_2d());
/// Schur ratios with the three-factor h along a path; same criterion.
/// epsilon = nullopt takes the midpoint of the window.
CheckReport check_schur_hartogs(const KernelId& id, const Rational& R, std::optional<double> epsilon,
                                const std::vector<HPoint>& path, double factor = 50.0,
                                const QuadConfig& config = QuadConfig::defaults_4d());

/// K(z,w) = conj(K(w,z)) and K(z,z) > 0 on random interior pairs.
CheckReport check_conjugate_symmetry(int pairs, std::uint64_t seed, double tol = 1e-12);
/// Series against closed forms for disc, thin(1..3), sub on pairs with
/// |z2 conj(w2)| <= 0.7 and |z1^m conj(w1)^m| <= 0.7 |z2 conj(w2)|^n.
CheckReport check_series_agreement(int pairs, std::uint64_t seed, double tol = 1e-8);
/// Modified kernels against their defining differences.
CheckReport check_subtraction_identities(int pairs, std::uint64_t seed, double tol = 1e-12);

}  // namespace hartogs
