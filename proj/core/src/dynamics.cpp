#include "hetmix/dynamics.hpp"

namespace hetmix {

Derivatives derivatives(const StateVector& x, const ModelParams& p,
                        const MixingMatrix& mix) {
  const auto mu = mortality_given_detection(p);

  Derivatives d;
  for (int i = 0; i < kGroups; ++i) {
    const double force = mix.beta[i] * (mix.p[i][0] * x.i[0] / p.n[0] +
                                        mix.p[i][1] * x.i[1] / p.n[1]);
    const double incidence = x.s[i] * force;
    const double detected = p.alpha[i] * incidence;
    d.ds[i] = -incidence;
    d.di[i] = (incidence - detected) - p.gamma * x.i[i];
    d.dq[i] = detected - p.gamma * x.q[i];
    d.dc[i] = detected;
  }
  d.dd = p.gamma * (mu[0] * x.q[0] + mu[1] * x.q[1]);
  // Closing flow of the system; identical to
  // gamma (I1 + I2) + gamma ((1-mu1) Q1 + (1-mu2) Q2) and zeroes the mass
  // balance exactly. Keep the summation order in sync with
  // Derivatives::sum().
  d.dr = -((d.ds[0] + d.ds[1] + d.di[0] + d.di[1] + d.dq[0] + d.dq[1]) + d.dd);
  return d;
}

StateVector initial_state(const ModelParams& p) {
  StateVector x;
  for (int i = 0; i < kGroups; ++i) {
    const double seeded = p.seed_fraction * p.n[i];
    x.s[i] = p.n[i] - seeded;
    x.i[i] = (1.0 - p.alpha[i]) * seeded;
    x.q[i] = seeded - x.i[i];  // complement, so i + q == seeded
    x.c[i] = x.q[i];
  }
  return x;
}

}  // namespace hetmix
