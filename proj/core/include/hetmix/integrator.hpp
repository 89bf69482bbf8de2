#pragma once

#include <vector>

#include "hetmix/dynamics.hpp"

namespace hetmix {

struct IntegrationConfig {
  double dt = 0.05;                   // fixed step, model time units
  double horizon = 500.0;             // end time
  double record_every = 1.0;          // sampling interval for the trajectory
  double extinction_threshold = 1e-9; // I+Q below this counts as over
};

// dt > 0, horizon >= dt, record_every >= dt, extinction_threshold > 0.
const IntegrationConfig& validate_config(const IntegrationConfig& config);

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  ModelParams params;
  IntegrationConfig config;

  const StateVector& back() const { return states.back(); }
};

// Terminal outcomes of one integration.
struct RunSummary {
  std::array<double, 2> attack_rate;  // (N_i - S_i(T)) / N_i
  double total_infected;              // sum of N_i - S_i(T)
  double reported_cumulative;         // C_1(T) + C_2(T)
  double deaths;                      // D(T)
  bool extinct;                       // I+Q below extinction threshold at T
};

// Classical fourth-order Runge-Kutta update. Components in [-1e-12, 0)
// are clamped to zero (integrator roundoff); a component above 2 or below
// -1e-6 signals mis-scaled inputs and throws numerical_blowup.
StateVector rk4_step(const StateVector& state, const ModelParams& params,
                     const MixingMatrix& mix, double dt);

// Zeroes components in [-1e-12, 0). Exposed for tests.
void clamp_roundoff(StateVector& state);
// Throws numerical_blowup if any component exceeds 2 or is below -1e-6.
void check_in_range(const StateVector& state);

// Integrates from initial_state(params) to config.horizon, sampling every
// config.record_every plus the endpoint. The horizon is rounded to the
// nearest whole step. Rethrows numerical_blowup with the failing time
// attached. r0 = (0, 0) runs with transmission switched off rather than
// tripping the degenerate-mixing error, so no-transmission scenarios
// integrate cleanly.
Trajectory simulate(const ModelParams& params,
                    const IntegrationConfig& config = {});

RunSummary summarize(const Trajectory& trajectory);

}  // namespace hetmix
