#include "hartogs/monomial.hpp"

#include <limits>
#include <numbers>

#include "hartogs/errors.hpp"

namespace hartogs {

std::string to_string(Basis basis) {
  return basis == Basis::Full ? "full" : "bounded";
}

Basis parse_basis(std::string_view text) {
  if (text == "full") return Basis::Full;
  if (text == "bounded") return Basis::BoundedSubspace;
  throw PreconditionError("unknown basis '" + std::string(text) + "' (expected full|bounded)");
}

bool in_basis(const GammaShape& shape, const LatticeIndex& idx, Basis basis) {
  if (basis == Basis::Full) return is_allowable(shape, Rational(2), idx);
  return idx.a1() >= 0 && shape.n() * idx.a1() + shape.m() * idx.a2() >= 0;
}

std::string LaurentMonomial::str() const {
  if (is_zero()) return "0";
  std::string out = coeff.str();
  if (idx.a1() != 0) out += "*z1^" + std::to_string(idx.a1());
  if (idx.a2() != 0) out += "*z2^" + std::to_string(idx.a2());
  return out;
}

NormValue NormValue::finite(Rational pi2_multiple) {
  if (pi2_multiple < Rational(0)) throw PreconditionError("negative norm value");
  return NormValue(Kind::Finite, pi2_multiple);
}

NormValue NormValue::log_divergent() { return NormValue(Kind::LogDivergent, Rational(0)); }

NormValue NormValue::power_divergent(Rational growth) {
  if (!(growth < Rational(0))) throw PreconditionError("power divergence needs a negative exponent");
  return NormValue(Kind::PowerDivergent, growth);
}

const Rational& NormValue::pi2_multiple() const {
  if (kind_ != Kind::Finite) throw std::logic_error("pi2_multiple() of a divergent norm");
  return value_;
}

const Rational& NormValue::growth_exponent() const {
  if (kind_ != Kind::PowerDivergent) throw std::logic_error("growth_exponent() of a non-power norm");
  return value_;
}

double NormValue::to_double() const {
  if (kind_ != Kind::Finite) return std::numeric_limits<double>::infinity();
  return value_.to_double() * std::numbers::pi * std::numbers::pi;
}

std::string NormValue::str() const {
  switch (kind_) {
    case Kind::Finite:
      return value_.str() + "*pi^2";
    case Kind::LogDivergent:
      return "inf(log)";
    case Kind::PowerDivergent:
      return "inf(delta^" + value_.str() + ")";
  }
  return {};
}

Rational r2_exponent(const GammaShape& shape, const LatticeIndex& idx, const Rational& p) {
  const Rational ratio(shape.n(), shape.m());
  return p * Rational(idx.a2()) + Rational(1) + ratio * (p * Rational(idx.a1()) + Rational(2));
}

NormValue monomial_lp_norm_pth_power(const GammaShape& shape, const LatticeIndex& idx,
                                     const Rational& p) {
  if (p < Rational(1)) throw PreconditionError("exponent p must be >= 1, got " + p.str());
  const Rational e = r2_exponent(shape, idx, p);
  const Rational growth = e + Rational(1);
  if (growth > Rational(0)) {
    // 4 pi^2 / ((p a1 + 2)(e + 1))
    return NormValue::finite(Rational(4) / ((p * Rational(idx.a1()) + Rational(2)) * growth));
  }
  if (growth == Rational(0)) return NormValue::log_divergent();
  return NormValue::power_divergent(growth);
}

double inverse_l2_norm_sq(std::int64_t m, std::int64_t n, std::int64_t a1, std::int64_t a2) {
  const double weight = static_cast<double>(n * a1 + m * a2 + m + n);
  return static_cast<double>(a1 + 1) * weight /
         (static_cast<double>(m) * std::numbers::pi * std::numbers::pi);
}

Rational projection_constant(const GammaShape& shape, const TestMonomial& beta, Basis basis) {
  const LatticeIndex target(beta.b1(), -beta.b2());
  if (!in_basis(shape, target, basis)) {
    throw NotAllowableError("target index " + target.str() + " is not in the " + to_string(basis) +
                            " basis for shape " + shape.str());
  }
  const Rational ratio(shape.n(), shape.m());
  const Rational holo = Rational(2) + ratio * Rational(2 * beta.b1() + 2);
  return (holo - Rational(2 * beta.b2())) / holo;
}

LaurentMonomial project_monomial(const GammaShape& shape, const TestMonomial& beta, Basis basis) {
  const LatticeIndex target(beta.b1(), -beta.b2());
  if (!in_basis(shape, target, basis)) return LaurentMonomial::zero();
  return {projection_constant(shape, beta, basis), target};
}

LaurentMonomial differentiate(const LaurentMonomial& mono, const SobolevOrder& order) {
  if (mono.is_zero()) return LaurentMonomial::zero();
  Rational coeff = mono.coeff;
  std::int64_t a1 = mono.idx.a1();
  std::int64_t a2 = mono.idx.a2();
  for (std::int64_t i = 0; i < order.j(); ++i) {
    if (a1 == 0) return LaurentMonomial::zero();
    coeff *= Rational(a1);
    --a1;
  }
  for (std::int64_t i = 0; i < order.l(); ++i) {
    if (a2 == 0) return LaurentMonomial::zero();
    coeff *= Rational(a2);
    --a2;
  }
  return {coeff, LatticeIndex(a1, a2)};
}

bool WitnessReport::all_consistent() const {
  for (const auto& s : samples) {
    if (!s.consistent) return false;
  }
  return true;
}

WitnessReport witness_report(const GammaShape& shape, const SobolevOrder& order,
                             const std::vector<Rational>& p_samples) {
  const TestMonomial beta = witness_index(shape, order.j());
  const LaurentMonomial projection = project_monomial(shape, beta, Basis::Full);
  const LaurentMonomial derivative = differentiate(projection, order);
  WitnessReport report{shape,      order,      beta, projection,
                       derivative, sobolev_failure_threshold(shape, order), {}};
  for (const auto& p : p_samples) {
    const NormValue f_norm = monomial_lp_norm_pth_power(shape, LatticeIndex(beta.b1(), beta.b2()), p);
    const NormValue d_norm = derivative.is_zero()
                                 ? NormValue::finite(Rational(0))
                                 : monomial_lp_norm_pth_power(shape, derivative.idx, p);
    const bool expected = p >= report.threshold;
    const bool consistent = f_norm.is_finite() && (d_norm.is_finite() != expected);
    report.samples.push_back({p, f_norm, d_norm, expected, consistent});
  }
  return report;
}

}  // namespace hartogs
