#pragma once

// Exact lattice-point calculus on generalized Hartogs triangles
//
//     H_{m/n} = { (z1, z2) : |z1|^{m/n} < |z2| < 1 },   gcd(m, n) = 1.
//
// Everything here is rational arithmetic: index-set thresholds involve a
// floor, and a floating-point p would silently move points across it.
//
// Irrational exponents are not representable. For those domains the L^p
// boundedness interval degenerates to the single point p = 2.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hartogs/rational.hpp"

namespace hartogs {

/// The exponent gamma = m/n in lowest terms.
class GammaShape {
 public:
  /// Reduces (m, n) by their gcd. Throws PreconditionError unless m, n >= 1.
  GammaShape(std::int64_t m, std::int64_t n);

  std::int64_t m() const { return m_; }
  std::int64_t n() const { return n_; }
  Rational gamma() const { return Rational(m_, n_); }
  std::string str() const;

  friend bool operator==(const GammaShape&, const GammaShape&) = default;

 private:
  std::int64_t m_;
  std::int64_t n_;
};

/// Exponent pair of the Laurent monomial z1^a1 z2^a2. a1 >= 0 always.
class LatticeIndex {
 public:
  LatticeIndex(std::int64_t a1, std::int64_t a2);

  std::int64_t a1() const { return a1_; }
  std::int64_t a2() const { return a2_; }
  std::string str() const;

  friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;

 private:
  std::int64_t a1_;
  std::int64_t a2_;
};

/// Exponents of the smooth test function z1^b1 * conj(z2)^b2, both >= 0.
class TestMonomial {
 public:
  TestMonomial(std::int64_t b1, std::int64_t b2);

  std::int64_t b1() const { return b1_; }
  std::int64_t b2() const { return b2_; }
  std::string str() const;

  friend bool operator==(const TestMonomial&, const TestMonomial&) = default;

 private:
  std::int64_t b1_;
  std::int64_t b2_;
};

/// Numbers of z1- and z2-derivatives.
class SobolevOrder {
 public:
  SobolevOrder(std::int64_t j, std::int64_t l);

  std::int64_t j() const { return j_; }
  std::int64_t l() const { return l_; }
  std::int64_t total() const { return j_ + l_; }

  friend bool operator==(const SobolevOrder&, const SobolevOrder&) = default;

 private:
  std::int64_t j_;
  std::int64_t l_;
};

/// Open interval of exponents p, 1 <= lower < upper <= inf, or the empty set.
class PInterval {
 public:
  /// `upper == std::nullopt` means +infinity. Throws PreconditionError when
  /// lower < 1 or lower >= upper; use empty() for the empty set.
  static PInterval open(Rational lower, std::optional<Rational> upper);
  static PInterval empty();

  bool is_empty() const { return empty_; }
  const Rational& lower() const;
  const std::optional<Rational>& upper() const;
  bool upper_is_infinite() const { return !empty_ && !upper_.has_value(); }

  bool contains(const Rational& p) const;
  PInterval intersect(const PInterval& other) const;

  /// "(4/3, 4)", "(1, inf)" or "empty".
  std::string str() const;

  friend bool operator==(const PInterval&, const PInterval&) = default;

 private:
  PInterval() = default;

  bool empty_ = true;
  Rational lower_{1};
  std::optional<Rational> upper_;
};

/// Exponents of the model bound
///   |K(z,w)| <~ |z2|^c |w2|^d / (|1 - z2 conj(w2)|^2 |z2^n conj(w2)^n - z1^m conj(w1)^m|^2).
struct CDBound {
  Rational c;
  Rational d;
  GammaShape shape;
};

/// The line n*x + m*y = constant, x >= 0, bounding the L^p-allowable set.
struct BoundaryRay {
  std::int64_t n_coeff;
  std::int64_t m_coeff;
  std::int64_t constant;

  bool contains(std::int64_t x, std::int64_t y) const {
    return x >= 0 && n_coeff * x + m_coeff * y == constant;
  }
  /// y-intercept constant / m, i.e. where the ray meets the a2 axis.
  Rational intercept() const { return Rational(constant, m_coeff); }
};

/// floor(1 - 2(m+n)/p). Throws PreconditionError for p < 1.
std::int64_t lp_threshold_floor(const GammaShape& shape, const Rational& p);

/// Membership in S(H_{m/n}, L^p) = { a1 >= 0, n*a1 + m*a2 >= lp_threshold_floor }.
bool is_allowable(const GammaShape& shape, const Rational& p, const LatticeIndex& idx);

BoundaryRay boundary_ray(const GammaShape& shape, const Rational& p);

/// ( (2m+2n)/(m+n+1), (2m+2n)/(m+n-1) ).
PInterval lp_interval(const GammaShape& shape);

/// Smallest p at which d^{j+l}/dz1^j dz2^l o B fails to map smooth functions
/// into L^p: (2m+2n) / (m(l+1) + n(j+1) - 1). Failure is inclusive at the
/// returned value.
Rational sobolev_failure_threshold(const GammaShape& shape, const SobolevOrder& order);

/// beta with minimal b1 >= j such that (b1, -b2) lies on the L^2 boundary ray,
/// i.e. n*b1 - m*b2 = 1 - m - n.
TestMonomial witness_index(const GammaShape& shape, std::int64_t j);

/// Names of the violated admissibility inequalities (empty when admissible).
std::vector<std::string> cd_condition_failures(const CDBound& bound);

/// c > 2n(1-1/m) - 2, d > 2n(1-1/m) - 2, c + d > 2n(2-1/m) - 2.
bool cd_conditions_hold(const CDBound& bound);

/// ( (2m+2n)/(2m+2n+dm-2mn), (2m+2n)/(2mn-cm) ), with the upper end taken to
/// be infinite once c >= 2n and the lower end clamped to 1 once d >= 2n (or
/// whenever the formula lands at or below 1). Throws AdmissibilityError when
/// cd_conditions_hold fails.
PInterval cd_interval(const CDBound& bound);

/// Schur-test exponent range (gamma/beta + 1, delta/alpha + 1); alpha = 0 maps
/// the upper end to infinity. Requires 0 <= alpha < beta and 0 <= gamma < delta.
PInterval schur_p_range(const Rational& alpha, const Rational& beta, const Rational& gamma,
                        const Rational& delta);

}  // namespace hartogs
