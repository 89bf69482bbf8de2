#pragma once

#include <array>

#include "hetmix/params.hpp"

namespace hetmix {

// Preferred-mixing contact structure. A fraction h of contacts is reserved
// within-group; the remainder is allocated proportionally to group
// activity (r0) times size. p[i][j] is the share of group i's contacts
// spent with group j; rows sum to 1.
struct MixingMatrix {
  std::array<double, 2> p_frac;            // proportionate shares p1, p2
  std::array<std::array<double, 2>, 2> p;  // contact allocation, row-stochastic
  std::array<double, 2> beta;              // transmission rates gamma * r0_i
};

// Proportionate shares p_i = r0_i n_i / (r0_1 n_1 + r0_2 n_2).
// The (1-h)*gamma factors that appear in the textbook form cancel between
// numerator and denominator; the cancelled form stays defined at h = 1.
// Throws degenerate_mixing when both activity weights are zero.
std::array<double, 2> mixing_fractions(const ModelParams& params);

// Full structure: p_ii = h + (1-h) p_i, p_ij = (1-h) p_j for j != i,
// beta_i = gamma * r0_i.
MixingMatrix mixing_matrix(const ModelParams& params);

// Death probability conditional on detection, mu_i = pi / alpha_i.
// Validation guarantees alpha_i >= pi, so mu_i <= 1.
std::array<double, 2> mortality_given_detection(const ModelParams& params);

// mixing_matrix, except that r0 = (0, 0) yields size-proportionate
// contact shares with beta = 0 instead of the degenerate-mixing error.
// This is what the integrator uses, so no-transmission runs work.
MixingMatrix transmission_structure(const ModelParams& params);

}  // namespace hetmix
