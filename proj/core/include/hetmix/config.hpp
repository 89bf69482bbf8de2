#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hetmix/sweep.hpp"

namespace hetmix {

// A fully validated run configuration. Defaults (empty document) are the
// standard calibration baked into ModelParams / IntegrationConfig.
struct RunConfig {
  ModelParams params;
  IntegrationConfig integration;
  std::optional<SweepAxis> axis1;
  std::optional<SweepAxis> axis2;
  std::optional<std::string> out;
};

// Parses a flat "key = value" document ('#' starts a comment). Model
// keys: gamma, pi, r0, r01, r02, alpha1, alpha2, h, n1, n2,
// seed_fraction. Integration keys: dt, horizon, record_every,
// extinction_threshold. Sweep axes: axisN (parameter name), then either
// axisN_min/axisN_max/axisN_points or axisN_values (comma-separated).
// Optional output path: out. Unknown and duplicate keys are rejected
// with their line number; the assembled config is validated before
// returning, so errors surface before any work starts.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

}  // namespace hetmix
