#include "hartogs/exact_index.hpp"

#include <numeric>

#include "hartogs/errors.hpp"

namespace hartogs {

namespace {

void require_p(const Rational& p) {
  if (p < Rational(1)) throw PreconditionError("exponent p must be >= 1, got " + p.str());
}

}  // namespace

GammaShape::GammaShape(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) {
    throw PreconditionError("shape needs m >= 1 and n >= 1, got m=" + std::to_string(m) +
                            " n=" + std::to_string(n));
  }
  const auto g = std::gcd(m, n);
  m_ = m / g;
  n_ = n / g;
}

std::string GammaShape::str() const { return std::to_string(m_) + "/" + std::to_string(n_); }

LatticeIndex::LatticeIndex(std::int64_t a1, std::int64_t a2) : a1_(a1), a2_(a2) {
  if (a1 < 0) throw PreconditionError("z1 exponent must be >= 0, got " + std::to_string(a1));
}

std::string LatticeIndex::str() const {
  return "(" + std::to_string(a1_) + "," + std::to_string(a2_) + ")";
}

TestMonomial::TestMonomial(std::int64_t b1, std::int64_t b2) : b1_(b1), b2_(b2) {
  if (b1 < 0 || b2 < 0) {
    throw PreconditionError("test monomial exponents must be >= 0, got (" + std::to_string(b1) + "," +
                            std::to_string(b2) + ")");
  }
}

std::string TestMonomial::str() const {
  return "(" + std::to_string(b1_) + "," + std::to_string(b2_) + ")";
}

SobolevOrder::SobolevOrder(std::int64_t j, std::int64_t l) : j_(j), l_(l) {
  if (j < 0 || l < 0) throw PreconditionError("derivative orders must be >= 0");
}

PInterval PInterval::open(Rational lower, std::optional<Rational> upper) {
  if (lower < Rational(1)) throw PreconditionError("interval lower end below 1: " + lower.str());
  if (upper && !(lower < *upper)) {
    throw PreconditionError("degenerate interval (" + lower.str() + ", " + upper->str() + ")");
  }
  PInterval out;
  out.empty_ = false;
  out.lower_ = lower;
  out.upper_ = upper;
  return out;
}

PInterval PInterval::empty() { return PInterval(); }

const Rational& PInterval::lower() const {
  if (empty_) throw std::logic_error("lower() of empty interval");
  return lower_;
}

const std::optional<Rational>& PInterval::upper() const {
  if (empty_) throw std::logic_error("upper() of empty interval");
  return upper_;
}

bool PInterval::contains(const Rational& p) const {
  if (empty_) return false;
  return lower_ < p && (!upper_ || p < *upper_);
}

PInterval PInterval::intersect(const PInterval& other) const {
  if (empty_ || other.empty_) return empty();
  Rational lo = std::max(lower_, other.lower_);
  std::optional<Rational> hi;
  if (upper_ && other.upper_) {
    hi = std::min(*upper_, *other.upper_);
  } else if (upper_) {
    hi = upper_;
  } else {
    hi = other.upper_;
  }
  if (hi && !(lo < *hi)) return empty();
  return open(lo, hi);
}

std::string PInterval::str() const {
  if (empty_) return "empty";
  return "(" + lower_.str() + ", " + (upper_ ? upper_->str() : std::string("inf")) + ")";
}

std::int64_t lp_threshold_floor(const GammaShape& shape, const Rational& p) {
  require_p(p);
  return (Rational(1) - Rational(2 * (shape.m() + shape.n())) / p).floor();
}

bool is_allowable(const GammaShape& shape, const Rational& p, const LatticeIndex& idx) {
  const auto threshold = lp_threshold_floor(shape, p);
  return idx.a1() >= 0 && shape.n() * idx.a1() + shape.m() * idx.a2() >= threshold;
}

BoundaryRay boundary_ray(const GammaShape& shape, const Rational& p) {
  return BoundaryRay{shape.n(), shape.m(), lp_threshold_floor(shape, p)};
}

PInterval lp_interval(const GammaShape& shape) {
  const auto m = shape.m();
  const auto n = shape.n();
  return PInterval::open(Rational(2 * m + 2 * n, m + n + 1), Rational(2 * m + 2 * n, m + n - 1));
}

Rational sobolev_failure_threshold(const GammaShape& shape, const SobolevOrder& order) {
  const auto m = shape.m();
  const auto n = shape.n();
  return Rational(2 * m + 2 * n, m * (order.l() + 1) + n * (order.j() + 1) - 1);
}

TestMonomial witness_index(const GammaShape& shape, std::int64_t j) {
  if (j < 0) throw PreconditionError("derivative order j must be >= 0");
  const auto m = shape.m();
  const auto n = shape.n();
  // n*b1 + m + n - 1 runs through every residue mod m within m consecutive b1.
  for (std::int64_t b1 = j; b1 < j + m; ++b1) {
    const auto top = n * b1 + m + n - 1;
    if (top % m == 0) return TestMonomial(b1, top / m);
  }
  throw std::logic_error("no witness index; shape not in lowest terms");
}

std::vector<std::string> cd_condition_failures(const CDBound& bound) {
  const Rational m(bound.shape.m());
  const Rational n(bound.shape.n());
  const Rational one_side = Rational(2) * n * (Rational(1) - m.reciprocal()) - Rational(2);
  const Rational both = Rational(2) * n * (Rational(2) - m.reciprocal()) - Rational(2);
  std::vector<std::string> failures;
  if (!(bound.c > one_side)) failures.push_back("c > 2n(1-1/m)-2 = " + one_side.str());
  if (!(bound.d > one_side)) failures.push_back("d > 2n(1-1/m)-2 = " + one_side.str());
  if (!(bound.c + bound.d > both)) failures.push_back("c+d > 2n(2-1/m)-2 = " + both.str());
  return failures;
}

bool cd_conditions_hold(const CDBound& bound) { return cd_condition_failures(bound).empty(); }

PInterval cd_interval(const CDBound& bound) {
  const auto failures = cd_condition_failures(bound);
  if (!failures.empty()) {
    std::string msg = "inadmissible (c,d) = (" + bound.c.str() + "," + bound.d.str() + "):";
    for (const auto& f : failures) msg += " violates " + f + ";";
    throw AdmissibilityError(msg);
  }
  const Rational m(bound.shape.m());
  const Rational n(bound.shape.n());
  const Rational two_m_n = Rational(2) * (m + n);

  Rational lower(1);
  if (bound.d < Rational(2) * n) {
    const Rational denom = two_m_n + bound.d * m - Rational(2) * m * n;
    // Admissibility makes denom > 0.
    lower = std::max(Rational(1), two_m_n / denom);
  }
  std::optional<Rational> upper;
  if (bound.c < Rational(2) * n) {
    const Rational denom = Rational(2) * m * n - bound.c * m;
    if (denom > Rational(0)) upper = two_m_n / denom;
  }
  return PInterval::open(lower, upper);
}

PInterval schur_p_range(const Rational& alpha, const Rational& beta, const Rational& gamma,
                        const Rational& delta) {
  if (!(Rational(0) <= alpha && alpha < beta)) {
    throw PreconditionError("schur range needs 0 <= alpha < beta");
  }
  if (!(Rational(0) <= gamma && gamma < delta)) {
    throw PreconditionError("schur range needs 0 <= gamma < delta");
  }
  const Rational lower = gamma / beta + Rational(1);
  std::optional<Rational> upper;
  if (alpha > Rational(0)) upper = delta / alpha + Rational(1);
  return PInterval::open(lower, upper);
}

}  // namespace hartogs
