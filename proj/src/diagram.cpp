#include "hartogs/diagram.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

#include "hartogs/errors.hpp"

namespace hartogs {

namespace {

constexpr double kCell = 32.0;
constexpr double kMargin = 48.0;
constexpr int kTop = 2;  // rows above the a1 axis
constexpr double kLegend = 190.0;  // legend column right of the grid

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Pt {
  double x, y;  // lattice coordinates (a1, a2)
};

struct Frame {
  int e1, e2;
  double sx(double a1) const { return kMargin + a1 * kCell; }
  double sy(double a2) const { return kMargin + (kTop - a2) * kCell; }
  double width() const { return 2 * kMargin + e1 * kCell + kLegend; }
  double height() const { return 2 * kMargin + (kTop + e2) * kCell; }
};

// Box [0, e1] x [-e2, top] clipped to n*x + m*y >= c (one Sutherland-Hodgman pass).
std::vector<Pt> clip_cone(const Frame& f, double n, double m, double c) {
  const std::vector<Pt> box{{0, kTop}, {double(f.e1), kTop}, {double(f.e1), double(-f.e2)}, {0, double(-f.e2)}};
  const auto side = [&](Pt p) { return n * p.x + m * p.y - c; };
  std::vector<Pt> out;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const Pt a = box[i], b = box[(i + 1) % box.size()];
    const double sa = side(a), sb = side(b);
    if (sa >= 0) out.push_back(a);
    if ((sa >= 0) != (sb >= 0)) {
      const double t = sa / (sa - sb);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

std::string num(double v) { return fmt::format("{:.2f}", v); }

}  // namespace

void DiagramSpec::validate() const {
  if (alpha1_extent < 1 || alpha1_extent > 64 || alpha2_extent < 1 || alpha2_extent > 64) {
    throw PreconditionError("diagram extents must lie in [1, 64]");
  }
  if (p_list.empty()) throw PreconditionError("diagram needs at least one p");
  for (const auto& p : p_list) {
    if (p < Rational(1)) throw PreconditionError("diagram p must be >= 1, got " + p.str());
  }
  for (const auto& h : highlight) {
    if (h.a1() > alpha1_extent || h.a2() < -alpha2_extent || h.a2() > kTop) {
      throw PreconditionError("highlight " + h.str() + " lies outside the diagram");
    }
  }
}

std::vector<Arrow> derivative_arrows(const DiagramSpec& spec) {
  std::vector<Arrow> arrows;
  for (const auto& h : spec.highlight) {
    if (h.a1() >= 1) arrows.push_back({h, LatticeIndex(h.a1() - 1, h.a2()), "d1"});
    arrows.push_back({h, LatticeIndex(h.a1(), h.a2() - 1), "d2"});
  }
  return arrows;
}

std::string render_diagram_svg(const DiagramSpec& spec) {
  spec.validate();
  const Frame f{spec.alpha1_extent, spec.alpha2_extent};
  const auto m = spec.shape.m(), n = spec.shape.n();
  std::string s;
  const auto out = [&s](std::string line) {
    s += line;
    s += '\n';
  };

  out("<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
  out(fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
                  "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"12\">",
                  num(f.width()), num(f.height()), num(f.width()), num(f.height())));
  out(fmt::format("<title>S(H_{}, L^p) for p in {{{}}}</title>", spec.shape.str(), [&] {
    std::string ps;
    for (std::size_t i = 0; i < spec.p_list.size(); ++i) ps += (i ? ", " : "") + spec.p_list[i].str();
    return ps;
  }()));
  out("<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">"
      "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"#000\"/></marker></defs>");
  out(fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#fff\"/>", num(f.width()), num(f.height())));

  // cones, then rays and labels on top
  for (std::size_t i = 0; i < spec.p_list.size(); ++i) {
    const auto ray = boundary_ray(spec.shape, spec.p_list[i]);
    const auto poly = clip_cone(f, double(n), double(m), double(ray.constant));
    std::string pts;
    for (const auto& p : poly) pts += (pts.empty() ? "" : " ") + num(f.sx(p.x)) + "," + num(f.sy(p.y));
    out(fmt::format("<polygon class=\"cone\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.10\" stroke=\"none\"/>", pts,
                    kPalette[i % kPalette.size()]));
  }

  // axes
  out(fmt::format("<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000\"/>", num(f.sx(0)),
                  num(f.sy(0)), num(f.sx(f.e1 + 0.5)), num(f.sy(0))));
  out(fmt::format("<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000\"/>", num(f.sx(0)),
                  num(f.sy(kTop)), num(f.sx(0)), num(f.sy(-f.e2 - 0.5))));
  out(fmt::format("<text x=\"{}\" y=\"{}\">&#945;1</text>", num(f.sx(f.e1 + 0.6)), num(f.sy(0) + 4)));
  out(fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">&#945;2</text>", num(f.sx(0)),
                  num(f.sy(-f.e2 - 0.5) + 16)));
  for (int a1 = 1; a1 <= f.e1; ++a1) {
    out(fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"#555\">{}</text>", num(f.sx(a1)),
                    num(f.sy(kTop) - 10), a1));
  }
  for (int a2 = kTop; a2 >= -f.e2; --a2) {
    out(fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\" fill=\"#555\">{}</text>", num(f.sx(0) - 14),
                    num(f.sy(a2) + 4), a2));
  }

  // lattice dots
  for (int a2 = kTop; a2 >= -f.e2; --a2) {
    for (int a1 = 0; a1 <= f.e1; ++a1) {
      out(fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"#333\"/>", num(f.sx(a1)), num(f.sy(a2))));
    }
  }

  for (std::size_t i = 0; i < spec.p_list.size(); ++i) {
    const auto ray = boundary_ray(spec.shape, spec.p_list[i]);
    const char* color = kPalette[i % kPalette.size()];
    // from the a2-axis intercept until the line leaves the box
    const double y0 = double(ray.constant) / double(m);
    double x1 = f.e1, y1 = (double(ray.constant) - double(n) * x1) / double(m);
    if (y1 < -f.e2) {
      y1 = -f.e2;
      x1 = (double(ray.constant) - double(m) * y1) / double(n);
    }
    if (y0 < -f.e2) continue;  // ray below the drawn window
    out(fmt::format("<line class=\"ray\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>",
                    num(f.sx(0)), num(f.sy(y0)), num(f.sx(x1)), num(f.sy(y1)), color));
    out(fmt::format("<circle class=\"intercept\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"none\" stroke=\"{}\"/>",
                    num(f.sx(0)), num(f.sy(y0)), color));
  }

  // legend, one entry per exponent including rays outside the window
  const double lx = f.sx(f.e1) + 40;
  for (std::size_t i = 0; i < spec.p_list.size(); ++i) {
    const auto ray = boundary_ray(spec.shape, spec.p_list[i]);
    const char* color = kPalette[i % kPalette.size()];
    const double ly = f.sy(kTop) + 20.0 * double(i);
    out(fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>", num(lx),
                    num(ly), num(lx + 18), num(ly), color));
    out(fmt::format("<text class=\"ray-label\" x=\"{}\" y=\"{}\" fill=\"{}\">L^{} ({}x + {}y = {})</text>",
                    num(lx + 24), num(ly + 4), color, spec.p_list[i].str(), n, m, ray.constant));
  }

  for (const auto& h : spec.highlight) {
    out(fmt::format("<circle class=\"highlight\" cx=\"{}\" cy=\"{}\" r=\"6\" fill=\"none\" stroke=\"#000\" "
                    "stroke-width=\"1.5\"/>",
                    num(f.sx(double(h.a1()))), num(f.sy(double(h.a2())))));
  }
  for (const auto& a : derivative_arrows(spec)) {
    const double fx = f.sx(double(a.from.a1())), fy = f.sy(double(a.from.a2()));
    const double tx = f.sx(double(a.to.a1())), ty = f.sy(double(a.to.a2()));
    // stop short of the target dot
    const double ex = tx + (fx - tx) * 0.2, ey = ty + (fy - ty) * 0.2;
    out(fmt::format("<line class=\"arrow\" data-to=\"{},{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000\" "
                    "marker-end=\"url(#head)\"/>",
                    a.to.a1(), a.to.a2(), num(fx), num(fy), num(ex), num(ey)));
    out(fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\">&#8706;{}</text>", num((fx + tx) / 2 + 3),
                    num((fy + ty) / 2 - 4), a.label == "d1" ? "1" : "2"));
  }
  out("</svg>");
  return s;
}

}  // namespace hartogs
