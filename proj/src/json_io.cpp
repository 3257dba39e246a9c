#include "hartogs/json_io.hpp"

#include <cstdio>

#include "hartogs/errors.hpp"

namespace hartogs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json quad_config_to_json(const QuadConfig& c) {
  return json{{"nodes_per_axis", c.nodes_per_axis},
              {"grading_exponent", c.grading_exponent},
              {"mc_samples", c.mc_samples},
              {"seed", c.seed},
              {"mode", to_string(c.mode)},
              {"panel_ratio", c.panel_ratio},
              {"singular_depth", c.singular_depth},
              {"refinement_depth", c.refinement_depth},
              {"panel_gauss_order", c.panel_gauss_order}};
}

QuadConfig quad_config_from_json(const json& j) {
  QuadConfig c;
  merge_quad_config(c, j);
  return c;
}

void merge_quad_config(QuadConfig& c, const json& j) {
  if (!j.is_object()) throw PreconditionError("quadrature config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "nodes_per_axis") c.nodes_per_axis = v.get<int>();
    else if (key == "grading_exponent") c.grading_exponent = v.get<double>();
    else if (key == "mc_samples") c.mc_samples = v.get<std::int64_t>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "mode") {
      const auto s = v.get<std::string>();
      if (s == "tensor") c.mode = QuadMode::Tensor;
      else if (s == "montecarlo") c.mode = QuadMode::MonteCarlo;
      else throw PreconditionError("unknown quadrature mode '" + s + "'");
    } else if (key == "panel_ratio") c.panel_ratio = v.get<double>();
    else if (key == "singular_depth") c.singular_depth = v.get<double>();
    else if (key == "refinement_depth") c.refinement_depth = v.get<int>();
    else if (key == "panel_gauss_order") c.panel_gauss_order = v.get<int>();
    else throw PreconditionError("unknown quadrature key '" + key + "'");
  }
  c.validate();
}

std::string config_digest(const QuadConfig& config) { return fnv1a_hex(quad_config_to_json(config).dump()); }

json kernel_id_to_json(const KernelId& id) {
  return std::visit(overloaded{
                        [](const kernel_id::Disc&) { return json{{"kernel", "disc"}}; },
                        [](const kernel_id::DiscModified& k) { return json{{"kernel", "disc-mod"}, {"k", k.k}}; },
                        [](const kernel_id::ThinHartogs& k) { return json{{"kernel", "thin"}, {"n", k.n}}; },
                        [](const kernel_id::HartogsSeries& k) {
                          return json{{"kernel", "series"},
                                      {"shape", k.shape},
                                      {"basis", to_string(k.basis)},
                                      {"max_weight", k.trunc.max_weight},
                                      {"tail_tol", k.trunc.tail_tol}};
                        },
                        [](const kernel_id::ThinHartogsModified& k) {
                          return json{{"kernel", "thin-mod"}, {"n", k.n}};
                        },
                        [](const kernel_id::SubBergmanInfinity&) { return json{{"kernel", "sub"}}; },
                        [](const kernel_id::SubBergmanInfinityModified&) { return json{{"kernel", "sub-mod"}}; },
                    },
                    id);
}

KernelId kernel_id_from_json(const json& j) {
  const auto name = field(j, "kernel").get<std::string>();
  KernelId id;
  if (name == "disc") id = kernel_id::Disc{};
  else if (name == "disc-mod") id = kernel_id::DiscModified{field(j, "k").get<int>()};
  else if (name == "thin") id = kernel_id::ThinHartogs{field(j, "n").get<int>()};
  else if (name == "thin-mod") id = kernel_id::ThinHartogsModified{field(j, "n").get<int>()};
  else if (name == "sub") id = kernel_id::SubBergmanInfinity{};
  else if (name == "sub-mod") id = kernel_id::SubBergmanInfinityModified{};
  else if (name == "series") {
    kernel_id::HartogsSeries s{field(j, "shape").get<GammaShape>()};
    s.basis = parse_basis(field(j, "basis").get<std::string>());
    s.trunc.max_weight = field(j, "max_weight").get<std::int64_t>();
    s.trunc.tail_tol = field(j, "tail_tol").get<double>();
    id = s;
  } else {
    throw PreconditionError("unknown kernel '" + name + "'");
  }
  validate(id);
  return id;
}

}  // namespace hartogs

using hartogs::json;
namespace h = hartogs;

void nlohmann::adl_serializer<h::Rational>::to_json(json& j, const h::Rational& v) { j = v.str(); }
h::Rational nlohmann::adl_serializer<h::Rational>::from_json(const json& j) {
  return h::Rational::parse(j.get<std::string>());
}

void nlohmann::adl_serializer<h::GammaShape>::to_json(json& j, const h::GammaShape& v) {
  j = json{{"m", v.m()}, {"n", v.n()}};
}
h::GammaShape nlohmann::adl_serializer<h::GammaShape>::from_json(const json& j) {
  return {h::field(j, "m").get<std::int64_t>(), h::field(j, "n").get<std::int64_t>()};
}

void nlohmann::adl_serializer<h::LatticeIndex>::to_json(json& j, const h::LatticeIndex& v) {
  j = json{{"a1", v.a1()}, {"a2", v.a2()}};
}
h::LatticeIndex nlohmann::adl_serializer<h::LatticeIndex>::from_json(const json& j) {
  return {h::field(j, "a1").get<std::int64_t>(), h::field(j, "a2").get<std::int64_t>()};
}

void nlohmann::adl_serializer<h::TestMonomial>::to_json(json& j, const h::TestMonomial& v) {
  j = json{{"b1", v.b1()}, {"b2", v.b2()}};
}
h::TestMonomial nlohmann::adl_serializer<h::TestMonomial>::from_json(const json& j) {
  return {h::field(j, "b1").get<std::int64_t>(), h::field(j, "b2").get<std::int64_t>()};
}

void nlohmann::adl_serializer<h::SobolevOrder>::to_json(json& j, const h::SobolevOrder& v) {
  j = json{{"j", v.j()}, {"l", v.l()}};
}
h::SobolevOrder nlohmann::adl_serializer<h::SobolevOrder>::from_json(const json& j) {
  return {h::field(j, "j").get<std::int64_t>(), h::field(j, "l").get<std::int64_t>()};
}

void nlohmann::adl_serializer<h::PInterval>::to_json(json& j, const h::PInterval& v) {
  if (v.is_empty()) {
    j = json{{"empty", true}};
    return;
  }
  j = json{{"lower", v.lower()}, {"upper", v.upper() ? v.upper()->str() : "inf"}};
}
h::PInterval nlohmann::adl_serializer<h::PInterval>::from_json(const json& j) {
  if (j.value("empty", false)) return h::PInterval::empty();
  const auto upper = h::field(j, "upper").get<std::string>();
  return h::PInterval::open(h::field(j, "lower").get<h::Rational>(),
                            upper == "inf" ? std::nullopt : std::optional(h::Rational::parse(upper)));
}

void nlohmann::adl_serializer<h::BoundaryRay>::to_json(json& j, const h::BoundaryRay& v) {
  j = json{{"n_coeff", v.n_coeff}, {"m_coeff", v.m_coeff}, {"constant", v.constant}, {"intercept", v.intercept()}};
}
h::BoundaryRay nlohmann::adl_serializer<h::BoundaryRay>::from_json(const json& j) {
  return {h::field(j, "n_coeff").get<std::int64_t>(), h::field(j, "m_coeff").get<std::int64_t>(),
          h::field(j, "constant").get<std::int64_t>()};
}

void nlohmann::adl_serializer<h::CDBound>::to_json(json& j, const h::CDBound& v) {
  j = json{{"c", v.c}, {"d", v.d}, {"shape", v.shape}};
}
h::CDBound nlohmann::adl_serializer<h::CDBound>::from_json(const json& j) {
  return {h::field(j, "c").get<h::Rational>(), h::field(j, "d").get<h::Rational>(),
          h::field(j, "shape").get<h::GammaShape>()};
}

void nlohmann::adl_serializer<h::NormValue>::to_json(json& j, const h::NormValue& v) {
  switch (v.kind()) {
    case h::NormValue::Kind::Finite:
      j = json{{"kind", "finite"}, {"pi2_multiple", v.pi2_multiple()}};
      break;
    case h::NormValue::Kind::LogDivergent:
      j = json{{"kind", "log"}};
      break;
    case h::NormValue::Kind::PowerDivergent:
      j = json{{"kind", "power"}, {"growth", v.growth_exponent()}};
      break;
  }
  j["str"] = v.str();
}
h::NormValue nlohmann::adl_serializer<h::NormValue>::from_json(const json& j) {
  const auto kind = h::field(j, "kind").get<std::string>();
  if (kind == "finite") return h::NormValue::finite(h::field(j, "pi2_multiple").get<h::Rational>());
  if (kind == "log") return h::NormValue::log_divergent();
  if (kind == "power") return h::NormValue::power_divergent(h::field(j, "growth").get<h::Rational>());
  throw h::PreconditionError("unknown norm kind '" + kind + "'");
}

void nlohmann::adl_serializer<h::LaurentMonomial>::to_json(json& j, const h::LaurentMonomial& v) {
  j = json{{"coeff", v.coeff}, {"index", v.idx}, {"str", v.str()}};
}
h::LaurentMonomial nlohmann::adl_serializer<h::LaurentMonomial>::from_json(const json& j) {
  return {h::field(j, "coeff").get<h::Rational>(), h::field(j, "index").get<h::LatticeIndex>()};
}

void nlohmann::adl_serializer<h::WitnessSample>::to_json(json& j, const h::WitnessSample& v) {
  j = json{{"p", v.p},
           {"f_norm", v.f_norm},
           {"derivative_norm", v.derivative_norm},
           {"expected_failure", v.expected_failure},
           {"consistent", v.consistent}};
}
h::WitnessSample nlohmann::adl_serializer<h::WitnessSample>::from_json(const json& j) {
  return {h::field(j, "p").get<h::Rational>(), h::field(j, "f_norm").get<h::NormValue>(),
          h::field(j, "derivative_norm").get<h::NormValue>(), h::field(j, "expected_failure").get<bool>(),
          h::field(j, "consistent").get<bool>()};
}

void nlohmann::adl_serializer<h::WitnessReport>::to_json(json& j, const h::WitnessReport& v) {
  j = json{{"shape", v.shape},         {"order", v.order},           {"beta", v.beta},
           {"projection", v.projection}, {"derivative", v.derivative}, {"threshold", v.threshold},
           {"threshold_inclusive", true}, {"samples", v.samples},     {"all_consistent", v.all_consistent()}};
}
h::WitnessReport nlohmann::adl_serializer<h::WitnessReport>::from_json(const json& j) {
  return {h::field(j, "shape").get<h::GammaShape>(),
          h::field(j, "order").get<h::SobolevOrder>(),
          h::field(j, "beta").get<h::TestMonomial>(),
          h::field(j, "projection").get<h::LaurentMonomial>(),
          h::field(j, "derivative").get<h::LaurentMonomial>(),
          h::field(j, "threshold").get<h::Rational>(),
          h::field(j, "samples").get<std::vector<h::WitnessSample>>()};
}

void nlohmann::adl_serializer<std::complex<double>>::to_json(json& j, const std::complex<double>& v) {
  j = json{{"re", v.real()}, {"im", v.imag()}};
}
std::complex<double> nlohmann::adl_serializer<std::complex<double>>::from_json(const json& j) {
  return {h::field(j, "re").get<double>(), h::field(j, "im").get<double>()};
}

void nlohmann::adl_serializer<h::HPoint>::to_json(json& j, const h::HPoint& v) {
  j = json{{"z1", v.z1}, {"z2", v.z2}};
}
h::HPoint nlohmann::adl_serializer<h::HPoint>::from_json(const json& j) {
  return {h::field(j, "z1").get<std::complex<double>>(), h::field(j, "z2").get<std::complex<double>>()};
}

void nlohmann::adl_serializer<h::IntegralResult>::to_json(json& j, const h::IntegralResult& v) {
  j = json{{"value", v.value},
           {"error_estimate", v.error_estimate},
           {"method", v.method},
           {"cells_or_samples", v.cells_or_samples},
           {"resolved", v.resolved}};
}
h::IntegralResult nlohmann::adl_serializer<h::IntegralResult>::from_json(const json& j) {
  return {h::field(j, "value").get<std::complex<double>>(), h::field(j, "error_estimate").get<double>(),
          h::field(j, "method").get<std::string>(), h::field(j, "cells_or_samples").get<std::int64_t>(),
          h::field(j, "resolved").get<bool>()};
}
