#include "hartogs/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "hartogs/errors.hpp"

namespace hartogs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// ---- parallel map + fixed-tree reduction -----------------------------------

template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

template <class T, class Combine>
T pairwise(const std::vector<T>& v, std::size_t lo, std::size_t hi, Combine&& combine) {
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return combine(pairwise(v, lo, mid, combine), pairwise(v, mid, hi, combine));
}

cplx tree_sum(const std::vector<cplx>& v) {
  if (v.empty()) return 0.0;
  return pairwise(v, 0, v.size(), [](cplx a, cplx b) { return a + b; });
}

void require_finite(cplx v, const std::string& where) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw QuadratureError("non-finite integrand value " + where);
  }
}

IntegralResult finish(cplx fine, cplx coarse, std::string method, std::int64_t cells) {
  IntegralResult r;
  r.value = fine;
  r.error_estimate = std::abs(fine - coarse);
  r.method = std::move(method);
  r.cells_or_samples = cells;
  r.resolved = r.error_estimate <= 1e-6 * std::max(1.0, std::abs(fine));
  return r;
}

// ---- 1D rules ---------------------------------------------------------------

struct GaussTable {
  std::vector<double> x, w;
};

const GaussTable& gauss01(int n) {
  static std::mutex mutex;
  static std::map<int, GaussTable> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussTable t;
  gauss_legendre(n, t.x, t.w);
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    t.x[i] = 0.5 * (t.x[i] + 1.0);
    t.w[i] *= 0.5;
  }
  return cache.emplace(n, std::move(t)).first->second;
}

enum class Grade { Linear, TowardStart, TowardEnd, Both };

// Appends a q-point panel covering offsets [o0, o1] from an anchor. Offsets
// are mapped to the axis by the caller.
void panel(int q, double o0, double o1, Grade grade, double g, std::vector<double>& off,
           std::vector<double>& wt) {
  const auto& t = gauss01(q);
  const double len = o1 - o0;
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    const double s = t.x[i];
    switch (grade) {
      case Grade::Linear:
        off.push_back(o0 + len * s);
        wt.push_back(len * t.w[i]);
        break;
      case Grade::TowardStart:
        off.push_back(o0 + len * std::pow(s, g));
        wt.push_back(len * g * std::pow(s, g - 1.0) * t.w[i]);
        break;
      case Grade::TowardEnd: {
        const double c = 1.0 - s;
        off.push_back(o1 - len * std::pow(c, g));
        wt.push_back(len * g * std::pow(c, g - 1.0) * t.w[i]);
        break;
      }
      case Grade::Both: {
        const double a = std::pow(s, g), b = std::pow(1.0 - s, g);
        const double phi = a / (a + b);
        const double dphi = g * std::pow(s, g - 1.0) * std::pow(1.0 - s, g - 1.0) / ((a + b) * (a + b));
        off.push_back(o0 + len * phi);
        wt.push_back(len * dphi * t.w[i]);
        break;
      }
    }
  }
}

// Geometric stack of panels toward offset 0 over [0, len]; the outermost
// panel is graded toward `len` when far_power is set.
void stack(const QuadConfig& cfg, double len, const Face& face, bool far_power, std::vector<double>& off,
           std::vector<double>& wt) {
  const double depth = face.depth;
  const int q = cfg.panel_order();
  const double sigma = cfg.panel_ratio;
  const int levels = std::max(1, static_cast<int>(std::ceil(std::log(depth) / std::log(sigma))));
  // innermost, power graded toward 0
  double inner = len * std::pow(sigma, levels);
  panel(q, 0.0, inner, Grade::TowardStart, face.grade > 0.0 ? face.grade : cfg.grading_exponent, off, wt);
  for (int k = levels - 1; k >= 0; --k) {
    const double outer = len * std::pow(sigma, k);
    const bool last = k == 0;
    panel(q, inner, outer, last && far_power ? Grade::TowardEnd : Grade::Linear, cfg.grading_exponent, off, wt);
    inner = outer;
  }
}

struct Builder {
  const QuadConfig& cfg;
  double axis_lo, axis_hi;
  Rule1D rule;

  void emit_forward(double a, const std::vector<double>& off, const std::vector<double>& wt) {
    for (std::size_t i = 0; i < off.size(); ++i) {
      const double x = a + off[i];
      rule.x.push_back(x);
      rule.w.push_back(wt[i]);
      rule.d_lo.push_back(a == axis_lo ? off[i] : x - axis_lo);
      rule.d_hi.push_back(axis_hi - x);
    }
  }
  void emit_backward(double b, const std::vector<double>& off, const std::vector<double>& wt) {
    for (std::size_t i = off.size(); i-- > 0;) {
      const double x = b - off[i];
      rule.x.push_back(x);
      rule.w.push_back(wt[i]);
      rule.d_lo.push_back(x - axis_lo);
      rule.d_hi.push_back(b == axis_hi ? off[i] : axis_hi - x);
    }
  }

  void segment(double a, double b, Face fa, Face fb) {
    const double len = b - a;
    std::vector<double> off, wt;
    const bool ga = fa.kind == Face::Kind::Geometric;
    const bool gb = fb.kind == Face::Kind::Geometric;
    if (ga && gb) {
      const double mid = a + 0.5 * len;
      stack(cfg, mid - a, fa, false, off, wt);
      emit_forward(a, off, wt);
      off.clear();
      wt.clear();
      stack(cfg, b - mid, fb, false, off, wt);
      emit_backward(b, off, wt);
      return;
    }
    if (ga) {
      stack(cfg, len, fa, fb.kind == Face::Kind::Power, off, wt);
      emit_forward(a, off, wt);
      return;
    }
    if (gb) {
      stack(cfg, len, fb, fa.kind == Face::Kind::Power, off, wt);
      emit_backward(b, off, wt);
      return;
    }
    const bool pa = fa.kind == Face::Kind::Power;
    const bool pb = fb.kind == Face::Kind::Power;
    const Grade grade = pa && pb ? Grade::Both : pa ? Grade::TowardStart : pb ? Grade::TowardEnd : Grade::Linear;
    panel(cfg.nodes_per_axis, 0.0, len, grade, cfg.grading_exponent, off, wt);
    if (pb && !pa) {
      // measure offsets from b so points near b keep their exact distance
      std::vector<double> back(off.size());
      for (std::size_t i = 0; i < off.size(); ++i) back[i] = len - off[i];
      emit_backward(b, back, wt);
      std::reverse(rule.x.end() - static_cast<std::ptrdiff_t>(off.size()), rule.x.end());
      std::reverse(rule.w.end() - static_cast<std::ptrdiff_t>(off.size()), rule.w.end());
      std::reverse(rule.d_lo.end() - static_cast<std::ptrdiff_t>(off.size()), rule.d_lo.end());
      std::reverse(rule.d_hi.end() - static_cast<std::ptrdiff_t>(off.size()), rule.d_hi.end());
      return;
    }
    emit_forward(a, off, wt);
  }
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Face geometric(double depth) { return {Face::Kind::Geometric, depth}; }
// Geometric face for an integrand ~ d^(p-1): the innermost panel uses
// t -> t^(1/p), which turns d^(p-1) dd into a constant times dt.
Face algebraic(double p, double depth) { return {Face::Kind::Geometric, depth, 1.0 / p}; }
Face power() { return {Face::Kind::Power, 0.0}; }
Face smooth() { return {Face::Kind::Smooth, 0.0}; }

std::string rule_desc(const QuadConfig& cfg) {
  return "gauss-legendre panels q=" + std::to_string(cfg.panel_order()) +
         " N=" + std::to_string(cfg.nodes_per_axis) + " g=" + std::to_string(cfg.grading_exponent).substr(0, 4);
}

}  // namespace

// ---- config -------------------------------------------------------------------

std::string to_string(QuadMode mode) { return mode == QuadMode::Tensor ? "tensor" : "montecarlo"; }

QuadConfig QuadConfig::defaults_2d() { return QuadConfig{}; }

QuadConfig QuadConfig::defaults_4d() {
  QuadConfig c;
  c.nodes_per_axis = 24;
  return c;
}

int QuadConfig::panel_order() const {
  return panel_gauss_order > 0 ? panel_gauss_order : std::max(4, nodes_per_axis / 6);
}

QuadConfig QuadConfig::halved() const {
  QuadConfig c = *this;
  c.nodes_per_axis = std::max(2, nodes_per_axis / 2);
  c.panel_gauss_order = std::max(2, 3 * panel_order() / 4);
  c.mc_samples = std::max<std::int64_t>(1, mc_samples / 2);
  return c;
}

void QuadConfig::validate() const {
  if (nodes_per_axis < 2) throw PreconditionError("nodes_per_axis must be >= 2");
  if (!(grading_exponent >= 1.0)) throw PreconditionError("grading_exponent must be >= 1");
  if (mc_samples < 1) throw PreconditionError("mc_samples must be >= 1");
  if (!(panel_ratio > 0.0 && panel_ratio < 1.0)) throw PreconditionError("panel_ratio must lie in (0, 1)");
  if (!(singular_depth > 0.0 && singular_depth < 1.0)) throw PreconditionError("singular_depth must lie in (0, 1)");
  if (refinement_depth < 0) throw PreconditionError("refinement_depth must be >= 0");
  if (panel_gauss_order < 0) throw PreconditionError("panel_gauss_order must be >= 0");
}

// ---- regions -------------------------------------------------------------------

std::string to_string(const Region& region) {
  return std::visit(
      overloaded{
          [](const DiscRegion& d) {
            return "disc(r=" + std::to_string(d.radius) + ",puncture=" + std::to_string(d.puncture_radius) + ")";
          },
          [](const AnnulusRegion& a) {
            return "annulus(" + std::to_string(a.r_in) + "," + std::to_string(a.r_out) + ")";
          },
          [](const HartogsShadow& h) {
            return "shadow(" + h.shape.str() + ",delta=" + std::to_string(h.delta_cut) + ")";
          },
          [](const Hartogs4D& h) { return "hartogs4d(" + h.shape.str() + ",delta=" + std::to_string(h.delta_cut) + ")"; },
      },
      region);
}

void validate(const Region& region) {
  std::visit(overloaded{
                 [](const DiscRegion& d) {
                   if (!(d.radius > 0.0) || !(d.puncture_radius >= 0.0) || !(d.puncture_radius < d.radius)) {
                     throw PreconditionError("disc needs 0 <= puncture_radius < radius");
                   }
                 },
                 [](const AnnulusRegion& a) {
                   if (!(a.r_in > 0.0) || !(a.r_in < a.r_out)) throw PreconditionError("annulus needs 0 < r_in < r_out");
                 },
                 [](const HartogsShadow& h) {
                   if (!(h.delta_cut >= 0.0 && h.delta_cut < 1.0)) throw PreconditionError("delta_cut must lie in [0, 1)");
                 },
                 [](const Hartogs4D& h) {
                   if (!(h.delta_cut >= 0.0 && h.delta_cut < 1.0)) throw PreconditionError("delta_cut must lie in [0, 1)");
                 },
             },
             region);
}

bool is_origin_centered(const Region& region) {
  return std::visit(overloaded{
                        [](const DiscRegion& d) { return d.center == cplx(0.0, 0.0); },
                        [](const AnnulusRegion& a) { return a.center == cplx(0.0, 0.0); },
                        [](const auto&) { return true; },
                    },
                    region);
}

// ---- plumbing ------------------------------------------------------------------

int worker_count() {
  if (const char* env = std::getenv("HARTOGS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

cplx deterministic_sum(std::size_t chunks, const std::function<cplx(std::size_t)>& chunk) {
  return tree_sum(parallel_map<cplx>(chunks, chunk));
}

double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint32_t dim) {
  const std::uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(index * 8 + dim + 0x632be59bd9b4e019ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw PreconditionError("Gauss-Legendre needs n >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

Rule1D build_rule(const AxisSpec& axis, const QuadConfig& cfg) {
  if (!(axis.lo < axis.hi)) throw PreconditionError("axis needs lo < hi");
  std::vector<Focus> foci;
  for (Focus f : axis.foci) {
    if (axis.periodic) {
      const double period = axis.hi - axis.lo;
      f.at = axis.lo + std::fmod(std::fmod(f.at - axis.lo, period) + period, period);
      foci.push_back(f);
    } else if (f.at > axis.lo && f.at < axis.hi) {
      foci.push_back(f);
    }
  }
  std::sort(foci.begin(), foci.end(), [](const Focus& a, const Focus& b) { return a.at < b.at; });

  if (axis.periodic) {
    const double period = axis.hi - axis.lo;
    if (foci.empty()) {
      Rule1D r;
      const int N = axis.trapezoid_nodes > 0 ? axis.trapezoid_nodes : cfg.nodes_per_axis;
      const double h = period / N;
      for (int i = 0; i < N; ++i) {
        r.x.push_back(axis.lo + i * h);
        r.w.push_back(h);
        r.d_lo.push_back(i * h);
        r.d_hi.push_back(period - i * h);
      }
      return r;
    }
    // Start the period at the first focus; every focus becomes a geometric end.
    const double start = foci.front().at;
    AxisSpec unrolled;
    unrolled.lo = start;
    unrolled.hi = start + period;
    unrolled.lo_face = geometric(foci.front().depth);
    unrolled.hi_face = geometric(foci.front().depth);
    for (std::size_t i = 1; i < foci.size(); ++i) unrolled.foci.push_back(foci[i]);
    return build_rule(unrolled, cfg);
  }

  Builder b{cfg, axis.lo, axis.hi, {}};
  double a = axis.lo;
  Face fa = axis.lo_face;
  for (const auto& f : foci) {
    b.segment(a, f.at, fa, geometric(f.depth));
    a = f.at;
    fa = geometric(f.depth);
  }
  b.segment(a, axis.hi, fa, axis.hi_face);
  return std::move(b.rule);
}

// ---- integrals -------------------------------------------------------------------

IntegralResult integrate_radial(const HartogsShadow& region, const RadialShadowFn& f, const QuadConfig& config) {
  validate(Region(region));
  config.validate();
  const double g = static_cast<double>(region.shape.n()) / static_cast<double>(region.shape.m());
  std::int64_t cells = 0;
  auto run = [&](const QuadConfig& cfg) {
    const Rule1D r2 = build_rule({region.delta_cut, 1.0, geometric(cfg.singular_depth), geometric(cfg.singular_depth), {}, false}, cfg);
    const Rule1D u = build_rule({0.0, 1.0, geometric(cfg.singular_depth), geometric(cfg.singular_depth), {}, false}, cfg);
    cells = static_cast<std::int64_t>(r2.size() * u.size());
    return 4.0 * kPi2 * deterministic_sum(r2.size(), [&](std::size_t i) {
             const double r = r2.x[i];
             const double scale = std::pow(r, g);
             cplx inner = 0.0;
             for (std::size_t j = 0; j < u.size(); ++j) inner += f(scale * u.x[j], r) * (u.x[j] * u.w[j]);
             const cplx out = inner * (r2.w[i] * scale * scale * r);
             require_finite(out, "at r2 = " + std::to_string(r));
             return out;
           });
  };
  const cplx coarse = run(config.halved());
  const cplx fine = run(config);
  return finish(fine, coarse, "tensor " + rule_desc(config), cells);
}

IntegralResult integrate_radial(const DiscRegion& region, const RadialDiscFn& f, const QuadConfig& config) {
  validate(Region(region));
  config.validate();
  if (region.center != cplx(0.0, 0.0)) throw PreconditionError("radial integration needs a centered disc");
  std::int64_t cells = 0;
  auto run = [&](const QuadConfig& cfg) {
    const Rule1D r =
        build_rule({region.puncture_radius, region.radius, geometric(cfg.singular_depth), geometric(cfg.singular_depth), {}, false}, cfg);
    cells = static_cast<std::int64_t>(r.size());
    cplx sum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) sum += f(r.x[i]) * (r.x[i] * r.w[i]);
    require_finite(sum, "on the disc");
    return kTwoPi * sum;
  };
  const cplx coarse = run(config.halved());
  const cplx fine = run(config);
  return finish(fine, coarse, "tensor " + rule_desc(config), cells);
}

IntegralResult integrate_planar(const Region& region, const PlanarFn& f, const QuadConfig& config) {
  validate(region);
  config.validate();
  double r_in = 0.0, r_out = 1.0;
  cplx center = 0.0;
  if (const auto* d = std::get_if<DiscRegion>(&region)) {
    r_in = d->puncture_radius;
    r_out = d->radius;
    center = d->center;
  } else if (const auto* a = std::get_if<AnnulusRegion>(&region)) {
    r_in = a->r_in;
    r_out = a->r_out;
    center = a->center;
  } else {
    throw PreconditionError("planar integration needs a disc or an annulus");
  }
  std::int64_t cells = 0;
  auto run = [&](const QuadConfig& cfg) {
    const Face lo = r_in == 0.0 ? geometric(cfg.singular_depth) : smooth();
    const Rule1D r = build_rule({r_in, r_out, lo, smooth(), {}, false}, cfg);
    const Rule1D t = build_rule({0.0, kTwoPi, smooth(), smooth(), {}, true}, cfg);
    cells = static_cast<std::int64_t>(r.size() * t.size());
    return deterministic_sum(r.size(), [&](std::size_t i) {
      cplx inner = 0.0;
      for (std::size_t j = 0; j < t.size(); ++j) inner += f(center + std::polar(r.x[i], t.x[j])) * t.w[j];
      const cplx out = inner * (r.x[i] * r.w[i]);
      require_finite(out, "at radius " + std::to_string(r.x[i]));
      return out;
    });
  };
  const cplx coarse = run(config.halved());
  const cplx fine = run(config);
  return finish(fine, coarse, "tensor polar " + rule_desc(config), cells);
}

namespace {

struct Axes4D {
  Rule1D r2, u, t1, t2;
  bool relative = false;  // arg w1 = t1 + t2
};

cplx tensor_4d(const GammaShape& shape, const Axes4D& ax, const std::function<cplx(const HPoint&)>& f) {
  const double g = static_cast<double>(shape.n()) / static_cast<double>(shape.m());
  // e^{i t} tables
  std::vector<cplx> e1(ax.t1.size()), e2(ax.t2.size());
  for (std::size_t k = 0; k < e1.size(); ++k) e1[k] = std::polar(1.0, ax.t1.x[k]);
  for (std::size_t k = 0; k < e2.size(); ++k) e2[k] = std::polar(1.0, ax.t2.x[k]);
  return deterministic_sum(ax.r2.size(), [&](std::size_t i) {
    const double r = ax.r2.x[i];
    const double scale = std::pow(r, g);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < ax.u.size(); ++j) {
      const double r1 = scale * ax.u.x[j];
      cplx acc_u = 0.0;
      for (std::size_t k = 0; k < e1.size(); ++k) {
        cplx acc_t = 0.0;
        for (std::size_t l = 0; l < e2.size(); ++l) {
          const cplx w1 = ax.relative ? r1 * e1[k] * e2[l] : r1 * e1[k];
          acc_t += f(HPoint{w1, r * e2[l]}) * ax.t2.w[l];
        }
        acc_u += acc_t * ax.t1.w[k];
      }
      acc += acc_u * (ax.u.x[j] * ax.u.w[j]);
    }
    const cplx out = acc * (ax.r2.w[i] * scale * scale * r);
    require_finite(out, "at r2 = " + std::to_string(r));
    return out;
  });
}

// w1 is parametrized relative to w2 (arg w1 = t1 + t2) so the ridge s1 = s2
// sits at a fixed t1. Broad angular peaks get a trapezoid rule long enough to
// resolve the Fourier decay (|z2| r2)^k and (u_z u)^k; sharp ones near the
// boundary get geometric panels of doubled order.
std::pair<Rule1D, Rule1D> angular_rules(const GammaShape& shape, const HPoint& z, const QuadConfig& cfg) {
  const double g = static_cast<double>(shape.n()) / static_cast<double>(shape.m());
  const double rz2 = std::abs(z.z2);
  const double uz = std::abs(z.z1) / std::pow(rz2, g);
  const double ring = std::pow(cfg.panel_ratio, cfg.refinement_depth);
  auto angle = [](cplx v) {
    const double a = std::arg(v);
    return a < 0 ? a + kTwoPi : a;
  };
  auto modes = [](double rho) {
    if (rho <= 0.0) return 0;
    return static_cast<int>(std::ceil(std::log(1e-11) / std::log(rho)));
  };
  // In the relative angles s1^m / s2^n winds |m - n| / m times around t2.
  const double drift = std::abs(static_cast<double>(shape.m() - shape.n())) / static_cast<double>(shape.m());
  AxisSpec t1_axis{0.0, kTwoPi, smooth(), smooth(), {}, true};
  AxisSpec t2_axis{0.0, kTwoPi, smooth(), smooth(), {}, true};
  if (rz2 > 0.8) {
    t2_axis.foci.push_back({angle(z.z2), ring});
  } else {
    t2_axis.trapezoid_nodes =
        std::max(cfg.nodes_per_axis, modes(rz2) + static_cast<int>(std::ceil(drift * modes(uz))) + 8);
  }
  if (uz > 0.8) {
    t1_axis.foci.push_back({angle(z.z1 / z.z2), ring});
  } else {
    t1_axis.trapezoid_nodes = std::max(cfg.nodes_per_axis, modes(uz) + 8);
  }
  QuadConfig angular = cfg;
  angular.panel_gauss_order = 2 * cfg.panel_order();
  return {build_rule(t1_axis, angular), build_rule(t2_axis, angular)};
}

struct McAccum {
  cplx sum;
  double sumsq = 0.0;
};

}  // namespace

IntegralResult integrate_4d(const Hartogs4D& region, const HartogsFn& f, const QuadConfig& config) {
  validate(Region(region));
  config.validate();
  const double delta = region.delta_cut;
  const double g = static_cast<double>(region.shape.n()) / static_cast<double>(region.shape.m());

  if (config.mode == QuadMode::MonteCarlo) {
    constexpr std::int64_t kBlock = 4096;
    const std::int64_t n = config.mc_samples;
    const std::size_t blocks = static_cast<std::size_t>((n + kBlock - 1) / kBlock);
    const double volume_factor = (1.0 - delta) * kTwoPi * kTwoPi;
    auto parts = parallel_map<McAccum>(blocks, [&](std::size_t b) {
      McAccum acc{};
      const std::int64_t first = static_cast<std::int64_t>(b) * kBlock;
      const std::int64_t last = std::min(n, first + kBlock);
      for (std::int64_t s = first; s < last; ++s) {
        const auto idx = static_cast<std::uint64_t>(s);
        const double r = delta + (1.0 - delta) * counter_uniform(config.seed, idx, 0);
        const double u = counter_uniform(config.seed, idx, 1);
        const double t1 = kTwoPi * counter_uniform(config.seed, idx, 2);
        const double t2 = kTwoPi * counter_uniform(config.seed, idx, 3);
        const double scale = std::pow(r, g);
        const cplx v = f(HPoint{std::polar(scale * u, t1), std::polar(r, t2)}) * (volume_factor * scale * scale * r * u);
        require_finite(v, "at Monte Carlo sample " + std::to_string(s));
        acc.sum += v;
        acc.sumsq += std::norm(v);
      }
      return acc;
    });
    const McAccum total =
        pairwise(parts, 0, parts.size(), [](McAccum a, McAccum b) { return McAccum{a.sum + b.sum, a.sumsq + b.sumsq}; });
    const double nn = static_cast<double>(n);
    const cplx mean = total.sum / nn;
    const double var = std::max(0.0, total.sumsq / nn - std::norm(mean));
    IntegralResult r;
    r.value = mean;
    r.error_estimate = std::sqrt(var / nn);
    r.method = "montecarlo counter-splitmix64 seed=" + std::to_string(config.seed);
    r.cells_or_samples = n;
    r.resolved = false;
    return r;
  }

  std::int64_t cells = 0;
  auto run = [&](const QuadConfig& cfg) {
    Axes4D ax{build_rule({delta, 1.0, power(), power(), {}, false}, cfg),
              build_rule({0.0, 1.0, power(), power(), {}, false}, cfg),
              build_rule({0.0, kTwoPi, smooth(), smooth(), {}, true}, cfg),
              build_rule({0.0, kTwoPi, smooth(), smooth(), {}, true}, cfg)};
    cells = static_cast<std::int64_t>(ax.r2.size() * ax.u.size() * ax.t1.size() * ax.t2.size());
    return tensor_4d(region.shape, ax, f);
  };
  const cplx coarse = run(config.halved());
  const cplx fine = run(config);
  return finish(fine, coarse, "tensor polar4d " + rule_desc(config), cells);
}

IntegralResult apply_kernel(const KernelId& id, const PlanarFn& f, cplx z, const QuadConfig& config) {
  validate(id);
  config.validate();
  if (!is_disc_kernel(id)) throw ShapeMismatchError(to_string(id) + " is not a disc kernel");
  require_in_disc(z, "z");
  const double rz = std::abs(z);
  std::int64_t cells = 0;
  auto run = [&](const QuadConfig& cfg) {
    const double ring = std::pow(cfg.panel_ratio, cfg.refinement_depth);
    AxisSpec r_axis{0.0, 1.0, smooth(), power(), {}, false};
    if (rz > 0.0) r_axis.foci.push_back({rz, ring});
    AxisSpec t_axis{0.0, kTwoPi, smooth(), smooth(), {}, true};
    if (rz > 0.8) t_axis.foci.push_back({std::arg(z) < 0 ? std::arg(z) + kTwoPi : std::arg(z), ring});
    const Rule1D r = build_rule(r_axis, cfg);
    const Rule1D t = build_rule(t_axis, cfg);
    cells = static_cast<std::int64_t>(r.size() * t.size());
    return deterministic_sum(r.size(), [&](std::size_t i) {
      cplx inner = 0.0;
      for (std::size_t j = 0; j < t.size(); ++j) {
        const cplx w = std::polar(r.x[i], t.x[j]);
        inner += detail::evaluate(id, 0.0, z * std::conj(w)) * f(w) * t.w[j];
      }
      const cplx out = inner * (r.x[i] * r.w[i]);
      require_finite(out, "at |w| = " + std::to_string(r.x[i]));
      return out;
    });
  };
  const cplx coarse = run(config.halved());
  const cplx fine = run(config);
  return finish(fine, coarse, "tensor polar " + rule_desc(config) + " kernel=" + to_string(id), cells);
}

IntegralResult apply_kernel(const KernelId& id, const HartogsFn& f, const HPoint& z, const QuadConfig& config) {
  validate(id);
  config.validate();
  const auto shape = kernel_shape(id);
  if (!shape) throw ShapeMismatchError(to_string(id) + " is a disc kernel");
  require_member(*shape, z, "z");
  const double g = static_cast<double>(shape->n()) / static_cast<double>(shape->m());
  const double rz2 = std::abs(z.z2);
  const double uz = std::abs(z.z1) / std::pow(rz2, g);

  if (config.mode == QuadMode::MonteCarlo) {
    return integrate_4d(Hartogs4D{*shape, 0.0},
                        [&](const HPoint& w) {
                          return detail::evaluate(id, z.z1 * std::conj(w.z1), z.z2 * std::conj(w.z2)) * f(w);
                        },
                        config);
  }

  std::int64_t cells = 0;
  auto run = [&](const QuadConfig& cfg) {
    const double ring = std::pow(cfg.panel_ratio, cfg.refinement_depth);
    // The kernel is smooth up to the outer faces for fixed interior z; the
    // inner faces carry at most the Laurent powers of the test function.
    AxisSpec r2_axis{0.0, 1.0, geometric(1e-8), smooth(), {{rz2, ring}}, false};
    AxisSpec u_axis{0.0, 1.0, geometric(1e-8), smooth(), {}, false};
    if (uz > 0.0) u_axis.foci.push_back({uz, ring});
    auto [t1, t2] = angular_rules(*shape, z, cfg);
    Axes4D ax{build_rule(r2_axis, cfg), build_rule(u_axis, cfg), std::move(t1), std::move(t2), true};
    cells = static_cast<std::int64_t>(ax.r2.size() * ax.u.size() * ax.t1.size() * ax.t2.size());
    return tensor_4d(*shape, ax, [&](const HPoint& w) {
      return detail::evaluate(id, z.z1 * std::conj(w.z1), z.z2 * std::conj(w.z2)) * f(w);
    });
  };
  const cplx coarse = run(config.halved());
  const cplx fine = run(config);
  return finish(fine, coarse, "tensor polar4d " + rule_desc(config) + " kernel=" + to_string(id), cells);
}

// ---- Forelli-Rudin and Schur probes -----------------------------------------------

namespace {

// Face where the integrand is d^(p-1) times a smooth function.
Face singular_face(const QuadConfig& cfg, double p) { return algebraic(p, std::cbrt(cfg.singular_depth)); }

// int_D (1-|w|^2)^-eps |1 - z conj(w)|^-2 |w|^-A dV(w), with weight exponent
// and radial power supplied by the caller.
double weighted_disc_integral(double epsilon, double A, cplx z, const QuadConfig& cfg) {
  const double rz = std::abs(z);
  const double phi = std::arg(z);
  const double one_minus_rz = 1.0 - rz;
  AxisSpec r_axis{0.0, 1.0, singular_face(cfg, 2.0 - A), singular_face(cfg, 1.0 - epsilon), {}, false};
  AxisSpec t_axis{0.0, kTwoPi, smooth(), smooth(), {}, true};
  if (rz > 0.0) {
    // resolve the peak of width ~ 1 - |z| around w = z
    const double depth = std::min(0.1, std::max(1e-3 * one_minus_rz, cfg.singular_depth));
    r_axis.foci.push_back({rz, depth});
    t_axis.lo = phi;
    t_axis.hi = phi + kTwoPi;
    t_axis.foci.push_back({phi + kTwoPi / 2, 0.5});  // split point only
    t_axis.periodic = false;
    t_axis.lo_face = geometric(depth);
    t_axis.hi_face = geometric(depth);
  }
  const Rule1D r = build_rule(r_axis, cfg);
  const Rule1D t = build_rule(t_axis, cfg);
  const cplx total = deterministic_sum(r.size(), [&](std::size_t i) {
    const double rho = r.x[i];
    const double d = r.d_hi[i];  // 1 - rho, exact near the rim
    const double one_minus_rho2 = d * (2.0 - d);
    const double gap = one_minus_rz + rz * d;  // 1 - |z| rho
    double inner = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      const double half = 0.5 * (rz > 0.0 ? t.d_lo[j] : t.x[j] - phi);
      const double s = std::sin(half);
      inner += t.w[j] / (gap * gap + 4.0 * rz * rho * s * s);
    }
    const double radial = std::pow(one_minus_rho2, -epsilon) * std::pow(r.d_lo[i], 1.0 - A);
    const cplx out = inner * radial * r.w[i];
    require_finite(out, "at |w| = " + std::to_string(rho));
    return out;
  });
  return total.real();
}

}  // namespace

std::vector<SampleRatio> forelli_rudin_ratio(double epsilon, double A, const std::vector<cplx>& z_samples,
                                             const QuadConfig& config) {
  config.validate();
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("Forelli-Rudin needs 0 < epsilon < 1");
  if (!(A < 2.0)) throw PreconditionError("Forelli-Rudin needs A < 2 (|w|^-A must be integrable)");
  std::vector<SampleRatio> out;
  for (const cplx z : z_samples) {
    require_in_disc(z, "z");
    const double fine = weighted_disc_integral(epsilon, A, z, config);
    const double coarse = weighted_disc_integral(epsilon, A, z, config.halved());
    const double denom = std::pow(1.0 - std::norm(z), -epsilon);
    out.push_back({z, fine / denom, std::abs(fine - coarse) / denom});
  }
  return out;
}

double auxiliary_h(const GammaShape& shape, double R, const HPoint& w) {
  if (!(R >= 0.0)) throw PreconditionError("auxiliary h needs R >= 0");
  const double r1 = std::abs(w.z1), r2 = std::abs(w.z2);
  const double mid = std::pow(r2, 2.0 * static_cast<double>(shape.n())) - std::pow(r1, 2.0 * static_cast<double>(shape.m()));
  return std::pow(r2, R) * mid * (1.0 - r2 * r2);
}

bool SchurWindow::admits(double epsilon) const {
  return epsilon > 0.0 && epsilon < 1.0 && epsilon >= alpha.to_double() && epsilon < beta.to_double();
}

std::string SchurWindow::str() const { return "[" + alpha.str() + ", " + beta.str() + ")"; }

SchurWindow schur_window(const CDBound& bound, const Rational& R) {
  if (R < Rational(0)) throw PreconditionError("Schur window needs R >= 0");
  const Rational m(bound.shape.m()), n(bound.shape.n());
  const Rational denom = Rational(2) * n + R;
  Rational alpha = (Rational(2) * n - bound.c) / denom;
  if (alpha < Rational(0)) alpha = Rational(0);
  const Rational beta = (bound.d + Rational(2) * n / m - Rational(2) * n + Rational(2)) / denom;
  return {alpha, beta};
}

std::vector<SampleRatio> schur_ratio_disc(double epsilon, const std::vector<cplx>& z_samples, const QuadConfig& config) {
  auto raw = forelli_rudin_ratio(epsilon, 0.0, z_samples, config);
  for (auto& s : raw) {
    s.ratio /= kPi;  // |B_D| = (1/pi) |1 - z conj(w)|^-2
    s.error_estimate /= kPi;
  }
  return raw;
}

CDBound kernel_cd_bound(const KernelId& id) {
  return std::visit(
      overloaded{
          [](const kernel_id::ThinHartogs& k) -> CDBound { return {Rational(k.n), Rational(k.n), GammaShape(1, k.n)}; },
          [](const kernel_id::ThinHartogsModified& k) -> CDBound {
            return {Rational(k.n), Rational(k.n), GammaShape(1, k.n)};
          },
          [](const kernel_id::HartogsSeries& k) -> CDBound {
            if (k.shape.m() != 1 || k.basis != Basis::Full) {
              throw PreconditionError("no (c,d) bound is known for " + to_string(KernelId(k)));
            }
            return {Rational(k.shape.n()), Rational(k.shape.n()), k.shape};
          },
          [](const kernel_id::SubBergmanInfinity&) -> CDBound { return {Rational(2), Rational(2), GammaShape(1, 1)}; },
          [](const kernel_id::SubBergmanInfinityModified&) -> CDBound {
            return {Rational(2), Rational(2), GammaShape(1, 1)};
          },
          [](const auto&) -> CDBound { throw ShapeMismatchError("disc kernels have no Hartogs (c,d) bound"); },
      },
      id);
}

std::vector<HSampleRatio> schur_ratio(const KernelId& id, double R, double epsilon, const std::vector<HPoint>& z_samples,
                                      const QuadConfig& config) {
  validate(id);
  config.validate();
  const CDBound bound = kernel_cd_bound(id);
  const GammaShape shape = bound.shape;
  if (!(R >= 0.0)) throw PreconditionError("Schur ratio needs R >= 0");
  const auto window = schur_window(bound, Rational(std::llround(R * 1e6), 1000000));
  if (!window.admits(epsilon)) {
    throw PreconditionError("epsilon = " + std::to_string(epsilon) + " is outside the admissible window " +
                            window.str() + " (and (0,1))");
  }
  const double g = static_cast<double>(shape.n()) / static_cast<double>(shape.m());
  const double two_m = 2.0 * static_cast<double>(shape.m());
  const double two_n = 2.0 * static_cast<double>(shape.n());

  // Exponent of the r2 -> 0 behaviour: jacobian r2^{2n/m+1}, kernel
  // ~ r2^{d-2n}, weight r2^{-eps(R+2n)}.
  const double c_lo = 2.0 * g + 2.0 + bound.d.to_double() - two_n - epsilon * (R + two_n);
  auto integral = [&](const HPoint& z, const QuadConfig& cfg) {
    const double rz2 = std::abs(z.z2);
    const double uz = std::abs(z.z1) / std::pow(rz2, g);
    const double ring = std::pow(cfg.panel_ratio, cfg.refinement_depth);
    const Face rim = singular_face(cfg, 1.0 - epsilon);
    AxisSpec r2_axis{0.0, 1.0, singular_face(cfg, c_lo), rim, {{rz2, ring}}, false};
    AxisSpec u_axis{0.0, 1.0, smooth(), rim, {}, false};
    if (uz > 0.0) u_axis.foci.push_back({uz, ring});
    const Rule1D r2 = build_rule(r2_axis, cfg);
    const Rule1D u = build_rule(u_axis, cfg);
    const auto [t1, t2] = angular_rules(shape, z, cfg);
    std::vector<cplx> e1(t1.size()), e2(t2.size());
    for (std::size_t k = 0; k < e1.size(); ++k) e1[k] = std::polar(1.0, t1.x[k]);
    for (std::size_t k = 0; k < e2.size(); ++k) e2[k] = std::polar(1.0, t2.x[k]);
    return deterministic_sum(r2.size(), [&](std::size_t i) {
             const double r = r2.x[i];
             const double dr = r2.d_hi[i];
             const double scale = std::pow(r, g);
             // h = r^R * r^{2n} (1 - u^{2m}) * (1 - r^2); the r-powers are
             // merged with the jacobian r^{2n/m+1}.
             const double radial = std::pow(r, 2.0 * g + 1.0 - epsilon * (R + two_n)) * std::pow(dr * (2.0 - dr), -epsilon);
             double acc = 0.0;
             for (std::size_t j = 0; j < u.size(); ++j) {
               const double one_minus_u2m = -std::expm1(two_m * std::log1p(-u.d_hi[j]));
               const double weight = std::pow(one_minus_u2m, -epsilon) * u.x[j] * u.w[j];
               const double r1 = scale * u.x[j];
               double acc_u = 0.0;
               for (std::size_t k = 0; k < e1.size(); ++k) {
                 double acc_t = 0.0;
                 for (std::size_t l = 0; l < e2.size(); ++l) {
                   const cplx w2 = r * e2[l];
                   const cplx w1 = r1 * e1[k] * e2[l];
                   acc_t += std::abs(detail::evaluate(id, z.z1 * std::conj(w1), z.z2 * std::conj(w2))) * t2.w[l];
                 }
                 acc_u += acc_t * t1.w[k];
               }
               acc += acc_u * weight;
             }
             const cplx out = acc * (r2.w[i] * radial);
             require_finite(out, "at r2 = " + std::to_string(r));
             return out;
           })
        .real();
  };

  std::vector<HSampleRatio> out;
  for (const auto& z : z_samples) {
    require_member(shape, z, "z");
    const double fine = integral(z, config);
    const double coarse = integral(z, config.halved());
    const double hz = std::pow(auxiliary_h(shape, R, z), -epsilon);
    out.push_back({z, fine / hz, std::abs(fine - coarse) / hz});
  }
  return out;
}

}  // namespace hartogs
