#pragma once

// Closed-form calculus of Laurent monomials z1^a1 z2^a2 on H_{m/n}.
//
// Reinhardt symmetry reduces every integral of |z^a|^p to
//
//     4 pi^2 / (p a1 + 2) * int_0^1 r2^e dr2,   e = p a2 + 1 + (n/m)(p a1 + 2),
//
// so norms are exact rational multiples of pi^2 and divergence is read off e.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hartogs/exact_index.hpp"
#include "hartogs/rational.hpp"

namespace hartogs {

/// Which holomorphic subspace a projection maps onto.
///   Full:            S(H, L^2), the Bergman projection.
///   BoundedSubspace: { a1 >= 0, n a1 + m a2 >= 0 }, the p -> inf limit of the
///                    allowable sets. On H_1 this is S(H_1, L^inf); for other
///                    shapes it is an extension of the same rule.
enum class Basis { Full, BoundedSubspace };

std::string to_string(Basis basis);
Basis parse_basis(std::string_view text);

bool in_basis(const GammaShape& shape, const LatticeIndex& idx, Basis basis);

/// coeff * z1^a1 * z2^a2. A zero coefficient is the zero function; its index
/// is normalized to (0, 0).
struct LaurentMonomial {
  Rational coeff;
  LatticeIndex idx{0, 0};

  static LaurentMonomial zero() { return {Rational(0), LatticeIndex(0, 0)}; }
  bool is_zero() const { return coeff == Rational(0); }
  /// "-1/2*z1^1*z2^-2" style, or "0".
  std::string str() const;

  friend bool operator==(const LaurentMonomial&, const LaurentMonomial&) = default;
};

/// Value of int |z^a|^p dV.
class NormValue {
 public:
  enum class Kind { Finite, LogDivergent, PowerDivergent };

  /// value = pi2_multiple * pi^2. Zero is only used for the zero function.
  static NormValue finite(Rational pi2_multiple);
  static NormValue log_divergent();
  /// Truncated integral over {|z2| > delta} grows like delta^growth, growth < 0.
  static NormValue power_divergent(Rational growth);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const Rational& pi2_multiple() const;
  const Rational& growth_exponent() const;
  double to_double() const;  // +inf for divergent values

  /// "1/2*pi^2", "inf(log)", "inf(delta^-2)".
  std::string str() const;

  friend bool operator==(const NormValue&, const NormValue&) = default;

 private:
  NormValue(Kind kind, Rational value) : kind_(kind), value_(value) {}

  Kind kind_;
  Rational value_;
};

/// The radial exponent e = p a2 + 1 + (n/m)(p a1 + 2).
Rational r2_exponent(const GammaShape& shape, const LatticeIndex& idx, const Rational& p);

/// int_H |z1^a1 z2^a2|^p dV, exactly. Throws PreconditionError for p < 1.
NormValue monomial_lp_norm_pth_power(const GammaShape& shape, const LatticeIndex& idx,
                                     const Rational& p);

/// 1 / ||z^a||^2_{L^2} = (a1+1)(n a1 + m a2 + m + n) / (m pi^2), in double precision.
/// Only meaningful when z^a is square integrable.
double inverse_l2_norm_sq(std::int64_t m, std::int64_t n, std::int64_t a1, std::int64_t a2);

/// <z1^b1 conj(z2)^b2, z^d> / ||z^d||^2 with d = (b1, -b2):
///   C = (2 - 2 b2 + (n/m)(2 b1 + 2)) / (2 + (n/m)(2 b1 + 2)).
/// Throws NotAllowableError when d is not in the basis.
Rational projection_constant(const GammaShape& shape, const TestMonomial& beta, Basis basis);

/// C z1^b1 z2^-b2, or the zero monomial when (b1, -b2) is outside the basis:
/// by Reinhardt orthogonality no other basis element pairs with the input.
LaurentMonomial project_monomial(const GammaShape& shape, const TestMonomial& beta, Basis basis);

/// d^{j+l} / dz1^j dz2^l, falling-factorial coefficients.
LaurentMonomial differentiate(const LaurentMonomial& mono, const SobolevOrder& order);

struct WitnessSample {
  Rational p;
  NormValue f_norm;           // int |f|^p
  NormValue derivative_norm;  // int |d^{j+l} B f|^p for the unit-coefficient monomial
  bool expected_failure;      // p >= threshold
  bool consistent;            // f finite, and derivative infinite exactly when expected
};

struct WitnessReport {
  GammaShape shape;
  SobolevOrder order;
  TestMonomial beta;
  LaurentMonomial projection;
  LaurentMonomial derivative;
  Rational threshold;
  std::vector<WitnessSample> samples;

  bool all_consistent() const;
};

WitnessReport witness_report(const GammaShape& shape, const SobolevOrder& order,
                             const std::vector<Rational>& p_samples);

}  // namespace hartogs
