#pragma once

#include <string>

#include "bidlab/distributions.hpp"
#include "bidlab/harness.hpp"

namespace bidlab {

// Environment variable that overrides the configured output directory.
inline constexpr const char* kOutDirEnv = "BIDLAB_OUT_DIR";

// Parses an experiment document (JSON). Sections: "auction", "policies",
// "sweep". Unknown keys, wrong types and invalid values raise ConfigError.
// Schema: docs/config.md.
ExperimentSpec parse_experiment(const std::string& text);
ExperimentSpec load_experiment(const std::string& path);

// {"type": tag, "params": [...]} <-> DistributionSpec.
DistributionSpec parse_distribution(const std::string& json_text);
std::string distribution_to_json(const DistributionSpec& spec);

// --out beats the environment, which beats the config file.
std::string resolve_output_dir(const std::string& flag, const std::string& configured);

}  // namespace bidlab
