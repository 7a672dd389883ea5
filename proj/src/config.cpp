#include "margulis/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "margulis/errors.hpp"

namespace margulis {

namespace {

void validate_generator(const GeneratorSpec& spec, std::size_t index) {
  const LinearIsometry lin{spec.linear};
  const std::string label = "generator " + std::to_string(index);
  if (lin.isometry_residual() > 1e-8)
    throw ValidationError(label + ": linear block is not a special isometry");
  if (!lin.preserves_time_orientation())
    throw ValidationError(label + ": linear block reverses time orientation");
  const double tr = spec.linear.trace();
  if (std::fabs(tr - 3.0) < 1e-6)
    throw ValidationError(label + ": linear block is parabolic or trivial");
  if (tr < 3.0)
    throw ValidationError(label + ": linear block is not hyperbolic");
}

}  // namespace

GroupConfig preset_config(const std::string& name) {
  if (name != "example2")
    throw ParseError("unknown preset: " + name);
  constexpr double half_pi = 1.5707963267948966192313216916398;
  const LinearIsometry a4 = boost(4.0);
  const LinearIsometry r = rotation(half_pi);
  GroupConfig config;
  config.name = "example2";
  config.generators.push_back({a4.m, Vec3{1.0, 0.0, 0.0}});
  config.generators.push_back({(r * a4 * r.inverse()).m, Vec3{0.0, 1.0, 0.0}});
  for (std::size_t i = 0; i < config.generators.size(); ++i)
    validate_generator(config.generators[i], i);
  return config;
}

GroupConfig parse_config(const std::string& json_text,
                         const std::string& name_hint) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string())
      throw ParseError("preset must be a string");
    return preset_config(doc["preset"].get<std::string>());
  }
  if (!doc.contains("generators") || !doc["generators"].is_array() ||
      doc["generators"].empty())
    throw ParseError("config needs a nonempty generators array or a preset");

  GroupConfig config;
  config.name = name_hint;
  for (const auto& entry : doc["generators"]) {
    if (!entry.contains("linear") || !entry["linear"].is_array() ||
        entry["linear"].size() != 9)
      throw ParseError("each generator needs a 9-entry linear block");
    if (!entry.contains("translation") || !entry["translation"].is_array() ||
        entry["translation"].size() != 3)
      throw ParseError("each generator needs a 3-entry translation");
    GeneratorSpec spec;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const auto& cell = entry["linear"][3 * i + j];
        if (!cell.is_number()) throw ParseError("linear entries must be numbers");
        spec.linear.at(i, j) = cell.get<double>();
      }
    for (int i = 0; i < 3; ++i) {
      const auto& cell = entry["translation"][i];
      if (!cell.is_number())
        throw ParseError("translation entries must be numbers");
      if (i == 0) spec.translation.x1 = cell.get<double>();
      if (i == 1) spec.translation.x2 = cell.get<double>();
      if (i == 2) spec.translation.x3 = cell.get<double>();
    }
    validate_generator(spec, config.generators.size());
    config.generators.push_back(spec);
  }
  return config;
}

GroupConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

SchottkyGroup build_group(const GroupConfig& config) {
  std::vector<AffineIsometry> generators;
  for (const GeneratorSpec& spec : config.generators)
    generators.push_back({LinearIsometry{spec.linear}, spec.translation});
  return SchottkyGroup::from_generators(std::move(generators));
}

}  // namespace margulis
