#include "hartogs/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hartogs/errors.hpp"

namespace hartogs {

namespace {

json typed_value(const std::string& key, const std::string& text) {
  const auto fail = [&] { return PreconditionError("config key '" + key + "' has bad value '" + text + "'"); };
  if (key == "mode") return text;
  std::size_t used = 0;
  try {
    if (key == "grading_exponent" || key == "panel_ratio" || key == "singular_depth") {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw fail();
      return v;
    }
    if (key == "seed") {
      const unsigned long long v = std::stoull(text, &used);
      if (used != text.size() || text.front() == '-') throw fail();
      return static_cast<std::uint64_t>(v);
    }
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw fail();
    return static_cast<std::int64_t>(v);
  } catch (const std::logic_error&) {
    throw fail();
  }
}

}  // namespace

json read_config_file(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw PreconditionError("cannot read config file: " + std::string(e.what()));
  }
  json out = json::object();
  for (const auto& [section, body] : tree) {
    if (section != "quadrature") throw PreconditionError("unknown config section '" + section + "'");
    for (const auto& [key, value] : body) out[key] = typed_value(key, value.data());
  }
  // key validation happens on merge
  QuadConfig probe;
  merge_quad_config(probe, out);
  return out;
}

QuadConfig resolve_quad_config(QuadConfig builtin, const std::string& path, const json& flag_overrides) {
  if (!path.empty()) merge_quad_config(builtin, read_config_file(path));
  if (!flag_overrides.empty()) merge_quad_config(builtin, flag_overrides);
  return builtin;
}

}  // namespace hartogs
