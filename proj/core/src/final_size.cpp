#include "hetmix/final_size.hpp"

#include <cmath>

#include "hetmix/mixing.hpp"

namespace hetmix {

namespace {

// Largest root in [0, 1) of z = 1 - exp(-reff z). The map is concave with
// f(0) = 0, so for reff > 1 there is exactly one positive root and
// bisection on [0, 1] walks to it; expm1 keeps f accurate near 0.
double epidemic_root(double reff) {
  if (!(reff > 1.0)) return 0.0;
  auto f = [reff](double z) { return -std::expm1(-reff * z) - z; };
  double lo = 0.0, hi = 1.0;
  int iterations = 0;
  while (hi - lo > 1e-13 && ++iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

FinalSizePrediction predict(const ModelParams& p,
                            const std::array<double, 2>& s_inf,
                            double residual) {
  FinalSizePrediction out;
  out.s_inf = s_inf;
  out.total_infected = (p.n[0] - s_inf[0]) + (p.n[1] - s_inf[1]);
  out.reported_cumulative =
      p.alpha[0] * (p.n[0] - s_inf[0]) + p.alpha[1] * (p.n[1] - s_inf[1]);
  out.deaths = p.pi * out.total_infected;
  out.solver_residual = residual;
  return out;
}

}  // namespace

double single_group_final_size(double r0, double alpha) {
  if (!(r0 >= 0.0) || !std::isfinite(r0))
    throw Error(errc::bad_input, "r0 must be >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error(errc::bad_input, "alpha must be in [0, 1]");
  return epidemic_root(r0 * (1.0 - alpha));
}

FinalSizePrediction homogeneous_final_size(const ModelParams& p) {
  validate_params(p);
  if (p.h != 0.0)
    throw Error(errc::bad_input, "homogeneous final size requires h = 0");
  if (p.r0[0] != p.r0[1])
    throw Error(errc::bad_input,
                "homogeneous final size requires equal r0 for both groups");
  // With p_ij = N_j the exponent is shared, so both groups deplete at one
  // rate z solving z = 1 - exp(-r0 sum_i (1-alpha_i) N_i z).
  const double weight = (1.0 - p.alpha[0]) * p.n[0] + (1.0 - p.alpha[1]) * p.n[1];
  const double reff = p.r0[0] * weight;
  const double z = epidemic_root(reff);
  const std::array<double, 2> s_inf{p.n[0] * (1.0 - z), p.n[1] * (1.0 - z)};
  const double residual = std::abs(-std::expm1(-reff * z) - z);
  return predict(p, s_inf, residual);
}

FinalSizePrediction two_group_final_size(const ModelParams& p) {
  validate_params(p);
  const MixingMatrix mix = transmission_structure(p);

  auto apply = [&](const std::array<double, 2>& s) {
    std::array<double, 2> next;
    for (int i = 0; i < kGroups; ++i) {
      double exponent = 0.0;
      for (int j = 0; j < kGroups; ++j) {
        exponent -= p.r0[i] * mix.p[i][j] * (1.0 - p.alpha[j]) *
                    (p.n[j] - s[j]) / p.n[j];
      }
      next[i] = p.n[i] * std::exp(exponent);
    }
    return next;
  };
  auto residual_of = [&](const std::array<double, 2>& s) {
    const auto mapped = apply(s);
    return std::max(std::abs(mapped[0] - s[0]), std::abs(mapped[1] - s[1]));
  };

  // Start below every fixed point; the damped monotone iteration then
  // converges to the smallest one, which is the epidemic branch when the
  // system is supercritical and S = N otherwise.
  std::array<double, 2> s{0.0, 0.0};
  constexpr double kDamping = 0.5;
  constexpr long kMaxIterations = 1000000;
  constexpr double kTolerance = 1e-12;
  for (long it = 0; it < kMaxIterations; ++it) {
    const auto mapped = apply(s);
    const double res = std::max(std::abs(mapped[0] - s[0]),
                                std::abs(mapped[1] - s[1]));
    s = {kDamping * s[0] + (1.0 - kDamping) * mapped[0],
         kDamping * s[1] + (1.0 - kDamping) * mapped[1]};
    if (res < kTolerance) return predict(p, s, residual_of(s));
  }
  throw Error(errc::no_convergence,
              "final-size iteration exceeded 1e6 iterations; parameters sit "
              "too close to the epidemic threshold");
}

double next_generation_eigenvalue(const ModelParams& p) {
  validate_params(p);
  const MixingMatrix mix = transmission_structure(p);
  double k[2][2];
  for (int i = 0; i < kGroups; ++i)
    for (int j = 0; j < kGroups; ++j)
      k[i][j] = (1.0 - p.alpha[i]) * p.r0[i] * mix.p[i][j] * p.n[i] / p.n[j];
  // Entries are non-negative, so the dominant eigenvalue is real.
  const double half_trace = 0.5 * (k[0][0] + k[1][1]);
  const double half_gap = 0.5 * (k[0][0] - k[1][1]);
  return half_trace + std::sqrt(half_gap * half_gap + k[0][1] * k[1][0]);
}

}  // namespace hetmix
