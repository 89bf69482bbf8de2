#pragma once

#include <array>

#include "hetmix/errors.hpp"

namespace hetmix {

// Index 0 is the majority (high testing propensity), index 1 the skeptics.
inline constexpr int kGroups = 2;

// All scalar parameters of the two-group system. Defaults are the
// calibration used throughout the bundled experiments: gamma = 1/7,
// pi = 0.01, R0 = 2.5 for both groups, alpha = (0.45, 0.27),
// proportionate mixing, equal group sizes, seed 1e-4.
struct ModelParams {
  double gamma = 1.0 / 7.0;            // removal rate, 1/duration of illness
  double pi = 0.01;                    // per-infection death probability
  std::array<double, 2> r0{2.5, 2.5};  // basic reproduction number per group
  std::array<double, 2> alpha{0.45, 0.27};  // testing/quarantine propensity
  double h = 0.0;                      // homophily of contacts, 0..1
  std::array<double, 2> n{0.5, 0.5};   // initial group sizes, sum to 1
  double seed_fraction = 1e-4;         // initially infected fraction
};

// Population-sum tolerance for n[0] + n[1] = 1.
inline constexpr double kSizeTolerance = 1e-9;

// Throws Error with a distinct code for the first violated invariant;
// returns its argument unchanged when all invariants hold.
//   gamma > 0, pi in [0,1], r0[i] >= 0, alpha[i] in [pi, 1],
//   h in [0,1], n[i] > 0 with n[0]+n[1] = 1, seed in (0, min(n)).
const ModelParams& validate_params(const ModelParams& params);

}  // namespace hetmix
