#pragma once

#include <array>

#include "hetmix/mixing.hpp"
#include "hetmix/params.hpp"

namespace hetmix {

// Instantaneous compartment occupancies. S and I/Q are per group; R and D
// are pooled. c tracks cumulative *reported* infections per group (the
// running integral of detected incidence) and is excluded from the mass
// balance, which covers s + i + q + r + d = 1.
struct StateVector {
  std::array<double, 2> s{};  // susceptible
  std::array<double, 2> i{};  // infectious, undetected
  std::array<double, 2> q{};  // quarantined (detected, not transmitting)
  double r = 0.0;             // recovered, pooled
  double d = 0.0;             // cumulative deaths
  std::array<double, 2> c{};  // cumulative reported infections

  double mass() const { return s[0] + s[1] + i[0] + i[1] + q[0] + q[1] + r + d; }
  double prevalence() const { return i[0] + i[1] + q[0] + q[1]; }
};

// Time derivatives, same layout as StateVector.
struct Derivatives {
  std::array<double, 2> ds{};
  std::array<double, 2> di{};
  std::array<double, 2> dq{};
  double dr = 0.0;
  double dd = 0.0;
  std::array<double, 2> dc{};

  // Mass balance over the eight epidemiological compartments. dr is
  // evaluated as the closing term of the system, so this is exactly 0.
  double sum() const {
    return (ds[0] + ds[1] + di[0] + di[1] + dq[0] + dq[1] + dd) + dr;
  }
};

// Right-hand side of the two-group SIRD-with-quarantine system:
//   force_i     = beta_i (p_i1 I_1/N_1 + p_i2 I_2/N_2)
//   incidence_i = S_i force_i
//   dS_i = -incidence_i
//   dI_i = (1 - alpha_i) incidence_i - gamma I_i
//   dQ_i = alpha_i incidence_i - gamma Q_i
//   dR   = gamma (I_1 + I_2) + gamma ((1-mu_1) Q_1 + (1-mu_2) Q_2)
//   dD   = gamma (mu_1 Q_1 + mu_2 Q_2)
//   dC_i = alpha_i incidence_i
// dR is computed as the exact closure of the other seven flows, which is
// algebraically identical to the line above and keeps sum() at exactly 0.
Derivatives derivatives(const StateVector& state, const ModelParams& params,
                        const MixingMatrix& mix);

// Seeds a fraction seed_fraction of each group as newly infected, split
// by the group's testing propensity exactly like live incidence:
//   I_i(0) = (1 - alpha_i) eps N_i,  Q_i(0) = C_i(0) = alpha_i eps N_i,
//   S_i(0) = N_i - eps N_i,          R(0) = D(0) = 0.
// Routing seeds through the detection split keeps the terminal identities
// D = pi * total_infected and C_i = alpha_i (N_i - S_i) exact instead of
// off by O(pi * eps).
StateVector initial_state(const ModelParams& params);

}  // namespace hetmix
