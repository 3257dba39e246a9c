#pragma once

// Quadrature settings from a sectioned key-value file:
//
//   [quadrature]
//   nodes_per_axis = 48
//   mode = tensor
//
// Precedence is flags over file over built-in defaults.

#include <string>

#include "hartogs/json_io.hpp"
#include "hartogs/quadrature.hpp"

namespace hartogs {

/// The [quadrature] section as typed JSON (the keys of quad_config_to_json).
/// Throws PreconditionError on unreadable files, unknown keys or sections,
/// and values that do not parse.
json read_config_file(const std::string& path);

/// builtin, then the file's [quadrature] section (if a path is given), then
/// the flag overrides.
QuadConfig resolve_quad_config(QuadConfig builtin, const std::string& path, const json& flag_overrides);

}  // namespace hartogs
