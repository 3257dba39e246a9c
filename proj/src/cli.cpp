#include "hartogs/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hartogs/config.hpp"
#include "hartogs/diagram.hpp"
#include "hartogs/errors.hpp"
#include "hartogs/verify.hpp"

#ifndef HARTOGS_VERSION
#define HARTOGS_VERSION "0.0.0"
#endif

namespace hartogs {

namespace {

using Clock = std::chrono::steady_clock;

struct Output {
  json payload;
  json table;  // array of rows for --format csv; defaults to [payload]
  std::vector<std::string> columns;  // leading csv columns, the rest follow sorted
  bool pass = true;
  double check_ms = -1.0;
  std::optional<std::string> raw;  // written verbatim instead of an envelope
};

// ---- argument parsing -----------------------------------------------------------

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::logic_error&) {
    throw PreconditionError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw PreconditionError("not a number: '" + text + "'");
  return v;
}

std::int64_t parse_int(const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::logic_error&) {
    throw PreconditionError("not an integer: '" + text + "'");
  }
  if (used != text.size()) throw PreconditionError("not an integer: '" + text + "'");
  return v;
}

// "0.3", "0.4i", "i", "0.3+0.4i", "0.3-0.4i", "1e-3-2e-1i"
cplx parse_complex(const std::string& text) {
  if (text.empty()) throw PreconditionError("empty complex number");
  if (text.back() != 'i') return parse_real(text);
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  const auto imag = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split_at == std::string::npos) return {0.0, imag(body)};
  return {parse_real(body.substr(0, split_at)), imag(body.substr(split_at))};
}

HPoint parse_hpoint(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw PreconditionError("expected a point z1,z2, got '" + text + "'");
  return {parse_complex(parts[0]), parse_complex(parts[1])};
}

std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw PreconditionError("expected two integers a,b, got '" + text + "'");
  return {parse_int(parts[0]), parse_int(parts[1])};
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& s : split(text, ',')) out.push_back(Rational::parse(s));
  return out;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_real(s));
  return out;
}

Basis parse_basis_flag(const std::string& text) {
  if (text == "full") return Basis::Full;
  if (text == "bounded") return Basis::BoundedSubspace;
  return parse_basis(text);
}

struct KernelArgs {
  std::string name = "thin";
  int n = 1;
  int k = 1;
  std::string shape = "1,1";
  std::string basis = "full";
  std::int64_t max_weight = 400;

  void add_to(CLI::App* app, bool positional) {
    if (positional) {
      app->add_option("name", name, "disc, disc-mod, thin, thin-mod, series, sub, sub-mod")->required();
    } else {
      app->add_option("--kernel", name, "disc, disc-mod, thin, thin-mod, series, sub, sub-mod");
    }
    app->add_option("-n", n, "thin kernels: H_{1/n}");
    app->add_option("-k", k, "disc-mod: number of Taylor terms removed");
    app->add_option("--shape", shape, "series: m,n");
    app->add_option("--basis", basis, "series: full or bounded");
    app->add_option("--max-weight", max_weight, "series: weight cap");
  }
  KernelId id() const {
    KernelId out;
    if (name == "disc") out = kernel_id::Disc{};
    else if (name == "disc-mod") out = kernel_id::DiscModified{k};
    else if (name == "thin") out = kernel_id::ThinHartogs{n};
    else if (name == "thin-mod") out = kernel_id::ThinHartogsModified{n};
    else if (name == "sub") out = kernel_id::SubBergmanInfinity{};
    else if (name == "sub-mod") out = kernel_id::SubBergmanInfinityModified{};
    else if (name == "series") {
      const auto [m, nn] = parse_pair(shape);
      out = kernel_id::HartogsSeries{GammaShape(m, nn), SeriesTruncation{max_weight, 1e-15}, parse_basis_flag(basis)};
    } else {
      throw PreconditionError("unknown kernel '" + name + "'");
    }
    validate(out);
    return out;
  }
};

// Named test functions for the T_w checks.
PlanarFn planar_function(const std::string& name) {
  static const std::map<std::string, PlanarFn> table = {
      {"1", [](cplx) { return cplx(1.0); }},
      {"w", [](cplx w) { return w; }},
      {"conj(w)", [](cplx w) { return std::conj(w); }},
      {"w^2", [](cplx w) { return w * w; }},
      {"conj(w)^2", [](cplx w) { return std::conj(w) * std::conj(w); }},
      {"|w|^2", [](cplx w) { return cplx(std::norm(w)); }},
      {"exp(|w|^2)", [](cplx w) { return cplx(std::exp(std::norm(w))); }},
      {"re(w)", [](cplx w) { return cplx(w.real()); }},
  };
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string names;
    for (const auto& [k, v] : table) names += (names.empty() ? "" : ", ") + k;
    throw PreconditionError("unknown function '" + name + "' (one of " + names + ")");
  }
  return it->second;
}

// "disc:R", "annulus:r_in,r_out", optionally followed by "@cx,cy"
Region parse_region(const std::string& text) {
  std::string body = text;
  cplx center = 0.0;
  if (const auto at = text.find('@'); at != std::string::npos) {
    body = text.substr(0, at);
    const auto c = parse_reals(text.substr(at + 1));
    if (c.size() != 2) throw PreconditionError("region center must be cx,cy");
    center = {c[0], c[1]};
  }
  const auto colon = body.find(':');
  const std::string kind = body.substr(0, colon);
  const auto vals = colon == std::string::npos ? std::vector<double>{} : parse_reals(body.substr(colon + 1));
  Region region;
  if (kind == "disc" && vals.size() <= 1) {
    region = DiscRegion{vals.empty() ? 1.0 : vals[0], 0.0, center};
  } else if (kind == "annulus" && vals.size() == 2) {
    region = AnnulusRegion{vals[0], vals[1], center};
  } else {
    throw PreconditionError("region must be disc:R or annulus:r_in,r_out, got '" + text + "'");
  }
  validate(region);
  return region;
}

// ---- CSV -----------------------------------------------------------------------

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& cells) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, cells);
  } else if (v.is_string()) {
    cells.emplace_back(prefix, v.get<std::string>());
  } else {
    cells.emplace_back(prefix, v.dump());
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string to_csv(const json& rows, std::vector<std::string> header) {
  std::vector<std::map<std::string, std::string>> table;
  for (const auto& row : rows) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(row, "", cells);
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : cells) {
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
      m[k] = v;
    }
    table.push_back(std::move(m));
  }
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + csv_cell(header[i]);
  out += '\n';
  for (const auto& m : table) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto it = m.find(header[i]);
      out += (i ? "," : "") + (it == m.end() ? std::string() : csv_cell(it->second));
    }
    out += '\n';
  }
  return out;
}

// ---- commands ------------------------------------------------------------------

Output report_output(CheckReport r) {
  Output o;
  o.pass = r.pass;
  o.check_ms = r.runtime_ms;
  json j = r.to_json();
  j.erase("runtime_ms");  // timing lives in the envelope
  o.payload = j;
  return o;
}

json series_comparison(const KernelId& id, const HPoint& z, const HPoint& w) {
  const auto pack = [&](const SeriesValue& v, cplx closed) {
    return json{{"value", v.value},
                {"converged", v.converged()},
                {"terms", v.terms},
                {"abs_diff", std::abs(v.value - closed)},
                {"rel_diff", std::abs(v.value - closed) / std::abs(closed)}};
  };
  const HPoint z0{0.0, z.z2}, w0{0.0, w.z2};
  const cplx closed = kernel_value(id, z, w);
  if (const auto* t = std::get_if<kernel_id::ThinHartogs>(&id)) {
    return pack(hartogs_series_kernel(GammaShape(1, t->n), z, w), closed);
  }
  if (const auto* t = std::get_if<kernel_id::ThinHartogsModified>(&id)) {
    const GammaShape s(1, t->n);
    auto v = hartogs_series_kernel(s, z, w);
    const auto v0 = hartogs_series_kernel(s, z0, w0);
    v.value -= v0.value;
    if (!v0.converged()) v.stop = v0.stop;
    return pack(v, closed);
  }
  if (std::holds_alternative<kernel_id::SubBergmanInfinity>(id)) return pack(subbergman_kernel_series(z, w), closed);
  if (std::holds_alternative<kernel_id::SubBergmanInfinityModified>(id)) {
    auto v = subbergman_kernel_series(z, w);
    const auto v0 = subbergman_kernel_series(z0, w0);
    v.value -= v0.value;
    if (!v0.converged()) v.stop = v0.stop;
    return pack(v, closed);
  }
  throw PreconditionError("no separate series form for " + to_string(id));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  CLI::App app{"Exact index sets, kernels, quadrature and checks on generalized Hartogs triangles", "hartogs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", HARTOGS_VERSION);

  std::string format = "json";
  std::string config_path;
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", config_path, "file with a [quadrature] section");
  std::optional<int> q_nodes, q_refine, q_order;
  std::optional<double> q_grading, q_ratio, q_depth;
  std::optional<std::int64_t> q_mc;
  std::optional<std::uint64_t> q_seed;
  std::optional<std::string> q_mode;
  auto* qg = app.add_option_group("quadrature");
  qg->add_option("--nodes", q_nodes, "nodes_per_axis");
  qg->add_option("--grading", q_grading, "grading_exponent");
  qg->add_option("--mc-samples", q_mc, "mc_samples");
  qg->add_option("--seed", q_seed, "Monte Carlo seed");
  qg->add_option("--mode", q_mode, "tensor or montecarlo");
  qg->add_option("--panel-ratio", q_ratio, "panel_ratio");
  qg->add_option("--singular-depth", q_depth, "singular_depth");
  qg->add_option("--refinement-depth", q_refine, "refinement_depth");
  qg->add_option("--panel-order", q_order, "panel_gauss_order");

  // index
  auto* c_index = app.add_subcommand("index", "allowable-set threshold and membership");
  std::int64_t m = 1, n = 1;
  std::string p_text, alpha_text;
  c_index->add_option("-m", m)->required();
  c_index->add_option("-n", n)->required();
  c_index->add_option("-p", p_text, "exponent, e.g. 2, 4/3, 1.5")->required();
  c_index->add_option("--alpha", alpha_text, "a1,a2");

  // interval
  auto* c_interval = app.add_subcommand("interval", "L^p interval, (c,d) interval or Sobolev threshold");
  std::string c_text, d_text;
  std::optional<std::int64_t> j_ord, l_ord;
  c_interval->add_option("-m", m)->required();
  c_interval->add_option("-n", n)->required();
  c_interval->add_option("-c", c_text);
  c_interval->add_option("-d", d_text);
  c_interval->add_option("-j", j_ord);
  c_interval->add_option("-l", l_ord);

  // witness
  auto* c_witness = app.add_subcommand("witness", "Sobolev irregularity witness");
  std::int64_t j_w = 0, l_w = 0;
  c_witness->add_option("-m", m)->required();
  c_witness->add_option("-n", n)->required();
  c_witness->add_option("-j", j_w);
  c_witness->add_option("-l", l_w);
  c_witness->add_option("-p", p_text, "comma-separated exponents")->required();

  // kernel
  auto* c_kernel = app.add_subcommand("kernel", "pointwise kernel values");
  KernelArgs kargs;
  kargs.add_to(c_kernel, true);
  std::vector<std::string> z_text, w_text;
  bool compare_series = false;
  c_kernel->add_option("--z", z_text, "points: complex for disc kernels, z1,z2 otherwise")->required();
  c_kernel->add_option("--w", w_text, "points paired with --z")->required();
  c_kernel->add_flag("--compare-series", compare_series, "also evaluate the series form");

  // diagram
  auto* c_diagram = app.add_subcommand("diagram", "SVG lattice-point diagram");
  int ext1 = 6, ext2 = 6;
  std::vector<std::string> highlight_text;
  std::string out_path;
  c_diagram->add_option("-m", m)->required();
  c_diagram->add_option("-n", n)->required();
  c_diagram->add_option("-p", p_text, "comma-separated exponents")->required();
  c_diagram->add_option("--extent1", ext1, "a1 extent (<= 64)");
  c_diagram->add_option("--extent2", ext2, "a2 extent below the axis (<= 64)");
  c_diagram->add_option("--highlight", highlight_text, "a1,a2 with derivative arrows");
  c_diagram->add_option("-o,--output", out_path, "SVG path; stdout when omitted");

  // verify
  auto* c_verify = app.add_subcommand("verify", "run a named check; exit 1 when it fails");
  c_verify->require_subcommand(1);
  auto* v_intervals = c_verify->add_subcommand("intervals", "exact interval table");

  auto* v_ibp = c_verify->add_subcommand("ibp", "integration by parts for T_w");
  std::string region_text = "annulus:0.3,0.8", f_name = "w", g_name = "conj(w)";
  v_ibp->add_option("--region", region_text, "disc:R or annulus:r_in,r_out, optional @cx,cy");
  v_ibp->add_option("--f", f_name);
  v_ibp->add_option("--g", g_name);

  auto* v_annih = c_verify->add_subcommand("annihilation", "T_w kills radial functions");
  std::string annih_g = "|w|^2";
  double radius = 0.7, fd_step = 1e-5;
  int count = 8;
  v_annih->add_option("--g", annih_g);
  v_annih->add_option("--radius", radius);
  v_annih->add_option("--count", count);
  v_annih->add_option("--fd-step", fd_step);

  auto* v_div = c_verify->add_subcommand("divergence", "truncated-norm growth of a witness derivative");
  std::string deltas_text = "1e-1,1e-2,1e-3,1e-4";
  v_div->add_option("-m", m)->required();
  v_div->add_option("-n", n)->required();
  v_div->add_option("-j", j_w);
  v_div->add_option("-l", l_w);
  v_div->add_option("-p", p_text)->required();
  v_div->add_option("--deltas", deltas_text);

  auto* v_rep = c_verify->add_subcommand("reproducing", "B z^a = z^a by quadrature");
  KernelArgs rargs;
  rargs.add_to(v_rep, false);
  std::string index_text = "1,-1";
  std::vector<std::string> rz_text;
  std::optional<double> tol;
  v_rep->add_option("--index", index_text, "a1,a2 (disc kernels: the power k)");
  v_rep->add_option("--z", rz_text);
  v_rep->add_option("--tol", tol);

  auto* v_proj = c_verify->add_subcommand("projection", "projection constants by quadrature");
  std::string beta_text = "0,1", basis_text = "full";
  v_proj->add_option("-m", m);
  v_proj->add_option("-n", n);
  v_proj->add_option("--beta", beta_text, "b1,b2");
  v_proj->add_option("--basis", basis_text, "full or bounded");
  v_proj->add_option("--z", rz_text);
  v_proj->add_option("--tol", tol);

  auto* v_forelli = c_verify->add_subcommand("forelli", "Forelli-Rudin ratio along radii");
  double epsilon = 0.5, A = 0.0, factor = 50.0;
  std::string radii_text = "0.5,0.9,0.99,0.999";
  v_forelli->add_option("--epsilon", epsilon);
  v_forelli->add_option("--A", A);
  v_forelli->add_option("--radii", radii_text);
  v_forelli->add_option("--factor", factor);

  auto* v_schur = c_verify->add_subcommand("schur", "Schur ratios (disc: h = 1-|w|^2; H: three-factor h)");
  KernelArgs sargs;
  sargs.name = "disc";
  sargs.add_to(v_schur, false);
  std::string R_text = "2";
  std::optional<double> s_eps;
  v_schur->add_option("--R", R_text);
  v_schur->add_option("--epsilon", s_eps, "default: disc 1/2, H the window midpoint");
  v_schur->add_option("--radii", radii_text, "disc path");
  v_schur->add_option("--z", rz_text, "Hartogs path, z1,z2 per point");
  v_schur->add_option("--factor", factor);

  int pairs = 1000;
  std::uint64_t seed = 1;
  auto* v_sym = c_verify->add_subcommand("symmetry", "conjugate symmetry and diagonal positivity");
  auto* v_series = c_verify->add_subcommand("series", "series against closed forms");
  auto* v_sub = c_verify->add_subcommand("subtraction", "modified kernels as differences");
  for (auto* s : {v_sym, v_series, v_sub}) {
    s->add_option("--pairs", pairs);
    s->add_option("--rng-seed", seed);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    json overrides = json::object();
    if (q_nodes) overrides["nodes_per_axis"] = *q_nodes;
    if (q_grading) overrides["grading_exponent"] = *q_grading;
    if (q_mc) overrides["mc_samples"] = *q_mc;
    if (q_seed) overrides["seed"] = *q_seed;
    if (q_mode) overrides["mode"] = *q_mode;
    if (q_ratio) overrides["panel_ratio"] = *q_ratio;
    if (q_depth) overrides["singular_depth"] = *q_depth;
    if (q_refine) overrides["refinement_depth"] = *q_refine;
    if (q_order) overrides["panel_gauss_order"] = *q_order;
    const QuadConfig cfg2 = resolve_quad_config(QuadConfig::defaults_2d(), config_path, overrides);
    const QuadConfig cfg4 = resolve_quad_config(QuadConfig::defaults_4d(), config_path, overrides);
    QuadConfig used = cfg2;

    Output o;
    if (c_index->parsed()) {
      const GammaShape shape(m, n);
      const Rational p = Rational::parse(p_text);
      const auto ray = boundary_ray(shape, p);
      o.payload = json{{"shape", shape}, {"p", p}, {"threshold", lp_threshold_floor(shape, p)}, {"ray", ray}};
      if (!alpha_text.empty()) {
        const auto [a1, a2] = parse_pair(alpha_text);
        const LatticeIndex idx(a1, a2);
        o.payload["alpha"] = idx;
        o.payload["allowable"] = is_allowable(shape, p, idx);
      }
    } else if (c_interval->parsed()) {
      const GammaShape shape(m, n);
      const bool cd_mode = !c_text.empty() || !d_text.empty();
      const bool sob_mode = j_ord.has_value() || l_ord.has_value();
      if (cd_mode && sob_mode) throw PreconditionError("-c/-d and -j/-l are mutually exclusive");
      if (cd_mode) {
        if (c_text.empty() || d_text.empty()) throw PreconditionError("-c and -d must be given together");
        const CDBound b{Rational::parse(c_text), Rational::parse(d_text), shape};
        const PInterval iv = cd_interval(b);
        o.payload = json{{"mode", "cd"}, {"shape", shape}, {"c", b.c}, {"d", b.d}};
        o.payload.update(json(iv));
      } else if (sob_mode) {
        const SobolevOrder ord(j_ord.value_or(0), l_ord.value_or(0));
        o.payload = json{{"mode", "sobolev"},
                         {"shape", shape},
                         {"order", ord},
                         {"threshold", sobolev_failure_threshold(shape, ord)},
                         {"inclusive", true}};
      } else {
        o.payload = json{{"mode", "lp"}, {"shape", shape}};
        o.payload.update(json(lp_interval(shape)));
      }
    } else if (c_witness->parsed()) {
      const auto report = witness_report(GammaShape(m, n), SobolevOrder(j_w, l_w), parse_rationals(p_text));
      o.payload = report;
      o.table = json::array();
      o.columns = {"p", "f_norm", "derivative_norm", "expected_failure", "consistent"};
      for (const auto& s : report.samples) {
        o.table.push_back({{"p", s.p},
                           {"f_norm", s.f_norm.str()},
                           {"derivative_norm", s.derivative_norm.str()},
                           {"expected_failure", s.expected_failure},
                           {"consistent", s.consistent}});
      }
    } else if (c_kernel->parsed()) {
      const KernelId id = kargs.id();
      if (z_text.size() != w_text.size()) throw PreconditionError("--z and --w need the same number of points");
      json values = json::array();
      o.table = json::array();
      for (std::size_t i = 0; i < z_text.size(); ++i) {
        json row;
        if (is_disc_kernel(id)) {
          const cplx z = parse_complex(z_text[i]), w = parse_complex(w_text[i]);
          const cplx v = kernel_value(id, z, w);
          row = json{{"z", z}, {"w", w}, {"value", v}};
          if (compare_series) {
            cplx s = disc_kernel_series(z, w, 400);
            if (const auto* dm = std::get_if<kernel_id::DiscModified>(&id)) s -= disc_kernel_series(z, w, dm->k);
            row["series"] = json{{"value", s}, {"terms", 400}, {"abs_diff", std::abs(s - v)},
                                 {"rel_diff", std::abs(s - v) / std::abs(v)}};
          }
        } else {
          const HPoint z = parse_hpoint(z_text[i]), w = parse_hpoint(w_text[i]);
          const cplx v = kernel_value(id, z, w);
          row = json{{"z", z}, {"w", w}, {"value", v}};
          if (compare_series) row["series"] = series_comparison(id, z, w);
        }
        values.push_back(row);
        o.table.push_back(row);
      }
      o.payload = json{{"kernel", kernel_id_to_json(id)}, {"values", values}};
    } else if (c_diagram->parsed()) {
      DiagramSpec spec{GammaShape(m, n), parse_rationals(p_text), ext1, ext2, {}};
      for (const auto& h : highlight_text) {
        const auto [a1, a2] = parse_pair(h);
        spec.highlight.emplace_back(a1, a2);
      }
      const std::string svg = render_diagram_svg(spec);
      if (out_path.empty()) {
        o.raw = svg;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw PreconditionError("cannot write '" + out_path + "'");
        f << svg;
        json rays = json::array();
        for (const auto& p : spec.p_list) rays.push_back({{"p", p}, {"ray", boundary_ray(spec.shape, p)}});
        json arrows = json::array();
        for (const auto& a : derivative_arrows(spec)) {
          arrows.push_back({{"from", a.from}, {"to", a.to}, {"label", a.label}});
        }
        o.payload = json{{"path", out_path}, {"bytes", svg.size()}, {"fnv1a", fnv1a_hex(svg)},
                         {"rays", rays},     {"arrows", arrows}};
      }
    } else if (c_verify->parsed()) {
      if (v_intervals->parsed()) {
        o = report_output(check_theorem_intervals());
        o.table = o.payload["measured"]["rows"];
      } else if (v_ibp->parsed()) {
        o = report_output(check_integration_by_parts(f_name + ", " + g_name, parse_region(region_text),
                                                     planar_function(f_name), planar_function(g_name), cfg2));
      } else if (v_annih->parsed()) {
        std::vector<cplx> pts;
        for (int i = 0; i < count; ++i) pts.push_back(std::polar(radius, 0.3 + 2 * std::numbers::pi * i / count));
        o = report_output(check_radial_annihilation(annih_g, planar_function(annih_g), pts, fd_step));
      } else if (v_div->parsed()) {
        o = report_output(check_divergence_rate(GammaShape(m, n), SobolevOrder(j_w, l_w), Rational::parse(p_text),
                                                parse_reals(deltas_text), cfg2));
      } else if (v_rep->parsed()) {
        const KernelId id = rargs.id();
        if (is_disc_kernel(id)) {
          std::vector<cplx> zs;
          for (const auto& s : rz_text) zs.push_back(parse_complex(s));
          if (zs.empty()) zs = {0.2, std::polar(0.5, std::numbers::pi / 3)};
          const auto parts = split(index_text, ',');
          if (parts.size() == 2 && parse_int(parts[1]) != 0) throw PreconditionError("disc monomials have a2 = 0");
          o = report_output(check_reproducing_disc(id, parse_int(parts[0]), zs, tol.value_or(1e-8), cfg2));
        } else {
          used = cfg4;
          std::vector<HPoint> zs;
          for (const auto& s : rz_text) zs.push_back(parse_hpoint(s));
          if (zs.empty()) zs = {HPoint{0.1, 0.6}};
          const auto [a1, a2] = parse_pair(index_text);
          o = report_output(check_reproducing(id, LatticeIndex(a1, a2), zs, tol.value_or(1e-4), cfg4));
        }
      } else if (v_proj->parsed()) {
        used = cfg4;
        std::vector<HPoint> zs;
        for (const auto& s : rz_text) zs.push_back(parse_hpoint(s));
        if (zs.empty()) zs = {HPoint{0.1, 0.6}};
        const auto [b1, b2] = parse_pair(beta_text);
        o = report_output(check_projection_constants(GammaShape(m, n), TestMonomial(b1, b2),
                                                     parse_basis_flag(basis_text), zs, tol.value_or(1e-4), cfg4));
      } else if (v_forelli->parsed()) {
        o = report_output(check_forelli_rudin(epsilon, A, parse_reals(radii_text), factor, cfg2));
      } else if (v_schur->parsed()) {
        const KernelId id = sargs.id();
        if (std::holds_alternative<kernel_id::Disc>(id)) {
          o = report_output(check_schur_disc(s_eps.value_or(0.5), parse_reals(radii_text), factor, cfg2));
        } else {
          used = cfg4;
          std::vector<HPoint> path;
          for (const auto& s : rz_text) path.push_back(parse_hpoint(s));
          if (path.empty()) path = {HPoint{0.0, 0.5}, HPoint{0.1, 0.6}, HPoint{0.0, 0.9}, HPoint{0.45, 0.5}};
          o = report_output(check_schur_hartogs(id, Rational::parse(R_text), s_eps, path, factor, cfg4));
        }
      } else if (v_sym->parsed()) {
        o = report_output(check_conjugate_symmetry(pairs, seed));
      } else if (v_series->parsed()) {
        o = report_output(check_series_agreement(pairs, seed));
      } else if (v_sub->parsed()) {
        o = report_output(check_subtraction_identities(pairs, seed));
      }
    }

    if (o.raw) {
      out << *o.raw;
      return kExitOk;
    }
    if (format == "csv") {
      out << to_csv(o.table.is_null() ? json::array({o.payload}) : o.table, o.columns);
    } else {
      json timing{{"elapsed_ms", std::chrono::duration<double, std::milli>(Clock::now() - start).count()}};
      if (o.check_ms >= 0) timing["check_ms"] = o.check_ms;
      const json envelope{{"tool", "hartogs"},
                          {"version", HARTOGS_VERSION},
                          {"command", args},
                          {"config_digest", config_digest(used)},
                          {"config", quad_config_to_json(used)},
                          {"payload", o.payload},
                          {"timing", timing}};
      out << envelope.dump(2) << '\n';
    }
    return o.pass ? kExitOk : kExitCheckFailed;
  } catch (const DomainMembershipError& e) {
    err << "hartogs: domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const QuadratureError& e) {
    err << "hartogs: quadrature failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "hartogs: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace hartogs
