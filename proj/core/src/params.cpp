#include "hetmix/params.hpp"

#include <cmath>
#include <sstream>

namespace hetmix {

const char* errc_name(errc code) {
  switch (code) {
    case errc::nonpositive_gamma: return "nonpositive-gamma";
    case errc::pi_out_of_range: return "pi-out-of-range";
    case errc::negative_r0: return "negative-r0";
    case errc::alpha_out_of_range: return "alpha-out-of-range";
    case errc::alpha_below_pi: return "alpha-below-pi";
    case errc::h_out_of_range: return "h-out-of-range";
    case errc::sizes_not_normalized: return "sizes-not-normalized";
    case errc::seed_out_of_range: return "seed-out-of-range";
    case errc::degenerate_mixing: return "degenerate-mixing";
    case errc::bad_integration_config: return "bad-integration-config";
    case errc::numerical_blowup: return "numerical-blowup";
    case errc::no_convergence: return "no-convergence";
    case errc::too_few_points: return "too-few-points";
    case errc::missing_group_mean: return "missing-group-mean";
    case errc::incomplete_table: return "incomplete-table";
    case errc::sweep_failure: return "sweep-failure";
    case errc::bad_input: return "bad-input";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

std::string describe(const char* name, double value) {
  std::ostringstream os;
  os << name << " = " << value;
  return os.str();
}

}  // namespace

const ModelParams& validate_params(const ModelParams& p) {
  if (!(p.gamma > 0.0) || !std::isfinite(p.gamma))
    fail(errc::nonpositive_gamma, describe("gamma", p.gamma));
  if (!(p.pi >= 0.0 && p.pi <= 1.0))
    fail(errc::pi_out_of_range, describe("pi", p.pi));
  for (int i = 0; i < kGroups; ++i) {
    if (!(p.r0[i] >= 0.0) || !std::isfinite(p.r0[i]))
      fail(errc::negative_r0, describe(i == 0 ? "r01" : "r02", p.r0[i]));
    if (!(p.alpha[i] >= 0.0 && p.alpha[i] <= 1.0))
      fail(errc::alpha_out_of_range,
           describe(i == 0 ? "alpha1" : "alpha2", p.alpha[i]));
    if (p.alpha[i] < p.pi)
      fail(errc::alpha_below_pi,
           describe(i == 0 ? "alpha1" : "alpha2", p.alpha[i]) +
               " < " + describe("pi", p.pi));
  }
  if (!(p.h >= 0.0 && p.h <= 1.0)) fail(errc::h_out_of_range, describe("h", p.h));
  if (!(p.n[0] > 0.0) || !(p.n[1] > 0.0) ||
      std::abs(p.n[0] + p.n[1] - 1.0) > kSizeTolerance)
    fail(errc::sizes_not_normalized,
         describe("n1", p.n[0]) + ", " + describe("n2", p.n[1]));
  const double n_min = std::min(p.n[0], p.n[1]);
  if (!(p.seed_fraction > 0.0 && p.seed_fraction < n_min))
    fail(errc::seed_out_of_range, describe("seed_fraction", p.seed_fraction) +
                                      " outside (0, " + describe("min n", n_min) + ")");
  return p;
}

}  // namespace hetmix
