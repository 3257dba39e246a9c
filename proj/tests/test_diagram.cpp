#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hartogs/diagram.hpp"
#include "hartogs/errors.hpp"

using namespace hartogs;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rays and cones") {
  // 48 px margin, 32 px cells, two rows above the a1 axis:
  // (a1, a2) -> (48 + 32 a1, 48 + 32 (2 - a2))
  DiagramSpec spec{GammaShape(1, 1), {Rational(2), Rational(4, 3)}};
  const auto svg = render_diagram_svg(spec);
  CHECK(count(svg, "class=\"ray\"") == 2);
  CHECK(count(svg, "class=\"cone\"") == 2);
  CHECK(count(svg, "<circle cx=") == 7 * 9);
  // L^2: a1 + a2 = -1 from (0,-1) to (5,-6)
  CHECK(svg.find("x1=\"48.00\" y1=\"144.00\" x2=\"208.00\" y2=\"304.00\"") != std::string::npos);
  // L^{4/3}: a1 + a2 = -2 from (0,-2) to (4,-6)
  CHECK(svg.find("x1=\"48.00\" y1=\"176.00\" x2=\"176.00\" y2=\"304.00\"") != std::string::npos);
  CHECK(svg.find("L^4/3") != std::string::npos);

  // H_{1/2}, p = 2: 2 a1 + a2 = -2, slope -2 through (0,-2)
  const auto svg12 = render_diagram_svg(DiagramSpec{GammaShape(1, 2), {Rational(2)}});
  CHECK(svg12.find("x1=\"48.00\" y1=\"176.00\" x2=\"112.00\" y2=\"304.00\"") != std::string::npos);
  CHECK(svg12.find("(2x + 1y = -2)") != std::string::npos);
}

TEST_CASE("derivative arrows") {
  DiagramSpec spec{GammaShape(1, 1), {Rational(2)}, 6, 6, {LatticeIndex(1, -2), LatticeIndex(0, -1)}};
  const auto arrows = derivative_arrows(spec);
  REQUIRE(arrows.size() == 3);
  CHECK(arrows[0].to == LatticeIndex(0, -2));
  CHECK(arrows[0].label == "d1");
  CHECK(arrows[1].to == LatticeIndex(1, -3));
  CHECK(arrows[1].label == "d2");
  CHECK(arrows[2].to == LatticeIndex(0, -2));
  const auto svg = render_diagram_svg(spec);
  CHECK(count(svg, "class=\"arrow\"") == 3);
  CHECK(svg.find("data-to=\"0,-2\"") != std::string::npos);
  CHECK(svg.find("data-to=\"1,-3\"") != std::string::npos);
}

TEST_CASE("diagram validation and determinism") {
  CHECK_THROWS_AS(render_diagram_svg(DiagramSpec{GammaShape(1, 1), {Rational(2)}, 65, 6}), PreconditionError);
  CHECK_THROWS_AS(render_diagram_svg(DiagramSpec{GammaShape(1, 1), {Rational(2)}, 6, 0}), PreconditionError);
  CHECK_THROWS_AS(render_diagram_svg(DiagramSpec{GammaShape(1, 1), {Rational(1, 2)}}), PreconditionError);
  CHECK_THROWS_AS(render_diagram_svg(DiagramSpec{GammaShape(1, 1), {}}), PreconditionError);
  CHECK_NOTHROW(render_diagram_svg(DiagramSpec{GammaShape(1, 1), {Rational(2)}, 64, 64}));
  const DiagramSpec spec{GammaShape(2, 3), {Rational(2), Rational(6, 5)}, 10, 12, {LatticeIndex(2, -3)}};
  CHECK(render_diagram_svg(spec) == render_diagram_svg(spec));
}

TEST_CASE("golden diagrams") {
  const std::vector<Rational> ps{Rational(2), Rational(4, 3), Rational(3, 2), Rational(6, 5)};
  for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
    const std::string path =
        std::string(HARTOGS_GOLDEN_DIR) + "/diagram_" + std::to_string(m) + "_" + std::to_string(n) + ".svg";
    INFO(path);
    CHECK(render_diagram_svg(DiagramSpec{GammaShape(m, n), ps}) == read_file(path));
  }
}
