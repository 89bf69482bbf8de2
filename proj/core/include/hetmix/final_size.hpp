#pragma once

#include <array>

#include "hetmix/params.hpp"

namespace hetmix {

// Integration-free prediction of terminal outcomes from the final-size
// fixed point. Used as an independent check on the integrator.
struct FinalSizePrediction {
  std::array<double, 2> s_inf;  // predicted S_i at the end of the epidemic
  double total_infected;        // sum of N_i - s_inf_i
  double reported_cumulative;   // sum of alpha_i (N_i - s_inf_i)
  double deaths;                // pi * total_infected, exact by construction
  double solver_residual;       // fixed-point residual, < 1e-12
};

// Attack rate of an isolated group: the largest root in [0, 1) of
// z = 1 - exp(-r0 (1-alpha) z), by bisection to 1e-13. Only I transmits
// and a (1-alpha) share of incidence enters I, so the effective
// reproduction number is r0 (1-alpha). Returns 0 when that is <= 1.
double single_group_final_size(double r0, double alpha);

// Requires h = 0 and r0[0] = r0[1] (throws bad_input otherwise). Both
// groups then share one attack rate z solving
//   z = 1 - exp(-r0 ((1-alpha_1) N_1 + (1-alpha_2) N_2) z),
// with S_i(inf) = N_i (1 - z).
FinalSizePrediction homogeneous_final_size(const ModelParams& params);

// General two-group final size: damped fixed-point iteration (damping 0.5)
// on
//   S_i = N_i exp(-r0_i sum_j p_ij (1-alpha_j) (N_j - S_j) / N_j),
// started from S = 0 so the iteration climbs to the epidemic branch
// rather than sitting on the disease-free root S = N. Converges to
// residual < 1e-12 or throws no_convergence after 1e6 iterations.
FinalSizePrediction two_group_final_size(const ModelParams& params);

// Dominant eigenvalue of the next-generation matrix
//   K_ij = (1 - alpha_i) r0_i p_ij N_i / N_j.
// The epidemic takes off iff this exceeds 1.
double next_generation_eigenvalue(const ModelParams& params);

}  // namespace hetmix
