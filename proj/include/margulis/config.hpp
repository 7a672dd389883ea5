#pragma once

#include <string>
#include <vector>

#include "margulis/schottky.hpp"

namespace margulis {

struct GeneratorSpec {
  Mat3 linear;       // row major in the file
  Vec3 translation;
};

struct GroupConfig {
  std::vector<GeneratorSpec> generators;
  std::string name = "custom";
};

/// Built-in configurations. "example2": two hyperbolic generators with
/// crossed axes (length 4 each, meeting at right angles through distinct
/// boundary pairs) and translations along the neutral directions, giving
/// Margulis invariant 1 each.
GroupConfig preset_config(const std::string& name);

/// Reads a JSON config: either {"preset": "<name>"} or
/// {"generators": [{"linear": [9 reals row-major], "translation": [3]}]}.
/// Throws ParseError on malformed input and ValidationError on a linear
/// block that is not a time-orientation preserving special isometry
/// (residual <= 1e-8) or is parabolic (trace within 1e-6 of 3).
GroupConfig load_config(const std::string& path);
GroupConfig parse_config(const std::string& json_text,
                         const std::string& name_hint = "custom");

/// Builds the Schottky group from a validated config.
SchottkyGroup build_group(const GroupConfig& config);

}  // namespace margulis
