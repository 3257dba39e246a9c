#pragma once

// JSON forms of the domain types. Exact quantities are "num/den" strings,
// an infinite interval end is "inf". Every to_json has a matching from_json
// that rebuilds the same value.

#include <complex>
#include <string>

#include <json.hpp>

#include "hartogs/exact_index.hpp"
#include "hartogs/kernels.hpp"
#include "hartogs/monomial.hpp"
#include "hartogs/quadrature.hpp"
#include "hartogs/rational.hpp"

namespace hartogs {

using json = nlohmann::json;

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

json quad_config_to_json(const QuadConfig& config);
/// Overwrites the fields present in j. Unknown keys are rejected; the
/// result is validated.
void merge_quad_config(QuadConfig& config, const json& j);
/// Built-in defaults with j merged in.
QuadConfig quad_config_from_json(const json& j);
/// fnv1a_hex of the canonical (sorted-key, compact) dump.
std::string config_digest(const QuadConfig& config);

json kernel_id_to_json(const KernelId& id);
KernelId kernel_id_from_json(const json& j);

}  // namespace hartogs

#define HARTOGS_JSON_SERIALIZER(T)         \
  template <>                              \
  struct nlohmann::adl_serializer<T> {     \
    static void to_json(nlohmann::json& j, const T& v); \
    static T from_json(const nlohmann::json& j); \
  }

HARTOGS_JSON_SERIALIZER(hartogs::Rational);
HARTOGS_JSON_SERIALIZER(hartogs::GammaShape);
HARTOGS_JSON_SERIALIZER(hartogs::LatticeIndex);
HARTOGS_JSON_SERIALIZER(hartogs::TestMonomial);
HARTOGS_JSON_SERIALIZER(hartogs::SobolevOrder);
HARTOGS_JSON_SERIALIZER(hartogs::PInterval);
HARTOGS_JSON_SERIALIZER(hartogs::BoundaryRay);
HARTOGS_JSON_SERIALIZER(hartogs::CDBound);
HARTOGS_JSON_SERIALIZER(hartogs::NormValue);
HARTOGS_JSON_SERIALIZER(hartogs::LaurentMonomial);
HARTOGS_JSON_SERIALIZER(hartogs::WitnessSample);
HARTOGS_JSON_SERIALIZER(hartogs::WitnessReport);
HARTOGS_JSON_SERIALIZER(std::complex<double>);
HARTOGS_JSON_SERIALIZER(hartogs::HPoint);
HARTOGS_JSON_SERIALIZER(hartogs::IntegralResult);

#undef HARTOGS_JSON_SERIALIZER
