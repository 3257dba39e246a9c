#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hartogs/cli.hpp"
#include "hartogs/diagram.hpp"
#include "hartogs/json_io.hpp"
#include "hartogs/verify.hpp"

using namespace hartogs;

namespace {

constexpr double kPi = std::numbers::pi;

struct Run {
  int code;
  std::string out;
  std::string err;
  json envelope() const { return json::parse(out); }
  json payload() const { return envelope()["payload"]; }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("index") {
  auto r = run({"index", "-m", "1", "-n", "1", "-p", "2", "--alpha", "0,-1"});
  CHECK(r.code == 0);
  CHECK(r.payload()["threshold"] == -1);
  CHECK(r.payload()["allowable"] == true);
  CHECK(r.payload()["ray"]["intercept"] == "-1");
  r = run({"index", "-m", "1", "-n", "1", "-p", "4"});
  CHECK(r.payload()["threshold"] == 0);
  r = run({"index", "-m", "1", "-n", "1", "-p", "0.5"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"index", "-m", "1", "-n", "1", "-p", "2/x"}).code == 2);
  CHECK(run({"index", "-m", "1", "-p", "2"}).code == 2);
}

TEST_CASE("interval") {
  auto r = run({"interval", "-m", "1", "-n", "1"});
  CHECK(r.code == 0);
  CHECK(r.payload()["lower"] == "4/3");
  CHECK(r.payload()["upper"] == "4");
  CHECK(r.payload().get<PInterval>() == lp_interval(GammaShape(1, 1)));
  r = run({"interval", "-m", "1", "-n", "1", "-c", "2", "-d", "2"});
  CHECK(r.payload()["lower"] == "1");
  CHECK(r.payload()["upper"] == "inf");
  r = run({"interval", "-m", "1", "-n", "1", "-j", "1", "-l", "0"});
  CHECK(r.payload()["threshold"] == "2");
  CHECK(r.payload()["inclusive"] == true);
  r = run({"interval", "-m", "1", "-n", "1", "-c", "-5", "-d", "0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("violates") != std::string::npos);
  CHECK(run({"interval", "-m", "1", "-n", "1", "-c", "2", "-d", "2", "-j", "1"}).code == 2);
  CHECK(run({"interval", "-m", "1", "-n", "1", "-c", "2"}).code == 2);
}

TEST_CASE("witness") {
  auto r = run({"witness", "-m", "1", "-n", "1", "-j", "0", "-l", "0", "-p", "2,4"});
  CHECK(r.code == 0);
  const auto w = r.payload().get<WitnessReport>();
  CHECK(w.projection.str() == "1/2*z2^-1");
  CHECK(w.samples[0].derivative_norm.is_finite());
  CHECK_FALSE(w.samples[1].derivative_norm.is_finite());
  CHECK(json(w) == r.payload());

  r = run({"witness", "-m", "1", "-n", "2", "-j", "0", "-l", "0", "-p", "3"});
  CHECK_FALSE(r.payload().get<WitnessReport>().samples[0].derivative_norm.is_finite());
  r = run({"witness", "-m", "1", "-n", "1", "-j", "2", "-l", "0", "-p", "2"});
  CHECK(r.payload()["beta"]["b1"] == 2);
  CHECK(r.payload()["beta"]["b2"] == 3);
  CHECK(r.payload()["threshold"] == "4/3");

  r = run({"--format", "csv", "witness", "-m", "1", "-n", "1", "-p", "2,4"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("p,f_norm,derivative_norm,expected_failure,consistent\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
  CHECK(r.out.find("4,1/4*pi^2,inf(log),true,true") != std::string::npos);
}

TEST_CASE("kernel") {
  auto r = run({"kernel", "disc", "--z", "0", "--w", "0"});
  CHECK(r.code == 0);
  CHECK(r.payload()["values"][0]["value"]["re"].get<double>() == doctest::Approx(1 / kPi).epsilon(1e-15));
  r = run({"kernel", "thin", "-n", "1", "--z", "0,0.5", "--w", "0,0.5"});
  CHECK(r.payload()["values"][0]["value"]["re"].get<double>() ==
        doctest::Approx(1 / (kPi * kPi * 0.25 * 0.5625)).epsilon(1e-14));
  r = run({"kernel", "sub", "--z", "0,0.5", "--w", "0,0.5", "--compare-series"});
  CHECK(r.payload()["values"][0]["series"]["rel_diff"].get<double>() <= 1e-8);
  r = run({"kernel", "disc", "--z", "0.3", "0.1+0.2i", "--w", "0.4i", "-0.5i", "--compare-series"});
  CHECK(r.code == 0);
  CHECK(r.payload()["values"].size() == 2);
  CHECK(r.payload()["values"][1]["w"]["im"] == -0.5);
  CHECK(r.payload()["values"][1]["series"]["rel_diff"].get<double>() <= 1e-10);

  r = run({"kernel", "thin", "-n", "1", "--z", "0.7,0.5", "--w", "0,0.5"});
  CHECK(r.code == 3);
  CHECK(r.err.find("|z1|^m < |z2|^n") != std::string::npos);
  CHECK(run({"kernel", "szego", "--z", "0", "--w", "0"}).code == 2);
  CHECK(run({"kernel", "disc", "--z", "0", "0.1", "--w", "0"}).code == 2);
}

TEST_CASE("verify") {
  auto r = run({"verify", "intervals"});
  CHECK(r.code == 0);
  CHECK(r.payload()["measured"]["rows_compared"] == 12);
  CHECK_FALSE(r.payload().contains("runtime_ms"));
  CHECK(CheckReport::from_json(r.payload()).pass);

  CHECK(run({"verify", "divergence", "-m", "1", "-n", "1", "-j", "0", "-l", "1", "-p", "2"}).payload()["measured"]
            ["model"] == "log");
  CHECK(run({"verify", "ibp", "--region", "annulus:0.3,0.8"}).code == 0);
  CHECK(run({"verify", "ibp", "--region", "annulus:0.3,0.8@0.5,0", "--g", "conj(w)^2"}).code == 1);
  CHECK(run({"verify", "annihilation"}).code == 0);
  CHECK(run({"verify", "annihilation", "--g", "re(w)"}).code == 1);
  CHECK(run({"verify", "reproducing", "--kernel", "disc", "--index", "3"}).code == 0);
  r = run({"verify", "reproducing", "--kernel", "sub", "--index", "0,-1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("is_allowable") != std::string::npos);
  CHECK(run({"verify", "forelli", "--epsilon", "0.25"}).code == 0);
  CHECK(run({"verify", "subtraction", "--pairs", "50"}).code == 0);
  CHECK(run({"verify", "nope"}).code == 2);
  CHECK(run({"verify"}).code == 2);
}

TEST_CASE("envelopes are deterministic apart from timing") {
  const std::vector<std::string> args{"verify", "divergence", "-m", "1", "-n", "1", "-j", "1", "-l", "0", "-p", "3"};
  auto a = run(args).envelope(), b = run(args).envelope();
  CHECK(a.contains("timing"));
  a.erase("timing");
  b.erase("timing");
  CHECK(a.dump() == b.dump());
  CHECK(a["tool"] == "hartogs");
  CHECK(a["command"] == json(args));
  CHECK(a["config_digest"] == config_digest(QuadConfig::defaults_2d()));
}

TEST_CASE("config flags and files") {
  const auto path = (std::filesystem::temp_directory_path() / "hartogs_cli_cfg.ini").string();
  std::ofstream(path) << "[quadrature]\nnodes_per_axis = 40\n";
  auto r = run({"--config", path, "index", "-m", "1", "-n", "1", "-p", "2"});
  CHECK(r.envelope()["config"]["nodes_per_axis"] == 40);
  r = run({"--config", path, "--nodes", "30", "index", "-m", "1", "-n", "1", "-p", "2"});
  CHECK(r.envelope()["config"]["nodes_per_axis"] == 30);
  r = run({"index", "-m", "1", "-n", "1", "-p", "2", "--nodes", "30"});
  CHECK(r.envelope()["config"]["nodes_per_axis"] == 30);
  CHECK(run({"--config", "/nonexistent.ini", "index", "-m", "1", "-n", "1", "-p", "2"}).code == 2);
  CHECK(run({"--mode", "adaptive", "index", "-m", "1", "-n", "1", "-p", "2"}).code == 2);
}

TEST_CASE("diagram") {
  const auto path = (std::filesystem::temp_directory_path() / "hartogs_cli_diagram.svg").string();
  auto r = run({"diagram", "-m", "1", "-n", "1", "-p", "2,4/3", "--highlight", "1,-2", "-o", path});
  CHECK(r.code == 0);
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  const DiagramSpec spec{GammaShape(1, 1), {Rational(2), Rational(4, 3)}, 6, 6, {LatticeIndex(1, -2)}};
  CHECK(ss.str() == render_diagram_svg(spec));
  CHECK(r.payload()["arrows"][0]["to"]["a1"] == 0);
  CHECK(r.payload()["arrows"][1]["to"]["a2"] == -3);
  CHECK(r.payload()["rays"][1]["ray"]["intercept"] == "-2");

  r = run({"diagram", "-m", "1", "-n", "2", "-p", "2"});
  CHECK(r.out == render_diagram_svg(DiagramSpec{GammaShape(1, 2), {Rational(2)}}));
  CHECK(run({"diagram", "-m", "1", "-n", "1", "-p", "2", "--extent1", "65"}).code == 2);
  CHECK(run({"diagram", "-m", "1", "-n", "1", "-p", "1/2"}).code == 2);
}

TEST_CASE("usage") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}
