#include "hetmix/mixing.hpp"

namespace hetmix {

std::array<double, 2> mixing_fractions(const ModelParams& p) {
  const double w1 = p.r0[0] * p.n[0];
  const double w2 = p.r0[1] * p.n[1];
  const double total = w1 + w2;
  if (total <= 0.0)
    throw Error(errc::degenerate_mixing,
                "r01*n1 + r02*n2 = 0, contact shares undefined");
  return {w1 / total, w2 / total};
}

MixingMatrix mixing_matrix(const ModelParams& p) {
  const auto frac = mixing_fractions(p);
  MixingMatrix m;
  m.p_frac = frac;
  for (int i = 0; i < kGroups; ++i) {
    for (int j = 0; j < kGroups; ++j) {
      m.p[i][j] = (i == j) ? p.h + (1.0 - p.h) * frac[j]
                           : (1.0 - p.h) * frac[j];
    }
    m.beta[i] = p.gamma * p.r0[i];
  }
  return m;
}

std::array<double, 2> mortality_given_detection(const ModelParams& p) {
  std::array<double, 2> mu{0.0, 0.0};
  for (int i = 0; i < kGroups; ++i) {
    // alpha_i >= pi after validation; pi = 0 gives mu = 0 even at alpha = 0.
    mu[i] = p.pi == 0.0 ? 0.0 : p.pi / p.alpha[i];
  }
  return mu;
}

MixingMatrix transmission_structure(const ModelParams& p) {
  if (p.r0[0] * p.n[0] + p.r0[1] * p.n[1] > 0.0) return mixing_matrix(p);
  MixingMatrix m;
  m.p_frac = p.n;
  for (int i = 0; i < kGroups; ++i) {
    for (int j = 0; j < kGroups; ++j) {
      m.p[i][j] = (i == j) ? p.h + (1.0 - p.h) * p.n[j]
                           : (1.0 - p.h) * p.n[j];
    }
    m.beta[i] = 0.0;
  }
  return m;
}

}  // namespace hetmix
