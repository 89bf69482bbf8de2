#include "hetmix/integrator.hpp"

#include <cmath>
#include <sstream>

namespace hetmix {

namespace {

constexpr double kClampFloor = -1e-12;  // roundoff band, clamped to 0
constexpr double kBlowupFloor = -1e-6;  // anything below this is an error
constexpr double kBlowupCeiling = 2.0;  // population is normalized to 1

// x + a * k, component-wise.
StateVector shifted(const StateVector& x, double a, const Derivatives& k) {
  StateVector y;
  for (int i = 0; i < kGroups; ++i) {
    y.s[i] = x.s[i] + a * k.ds[i];
    y.i[i] = x.i[i] + a * k.di[i];
    y.q[i] = x.q[i] + a * k.dq[i];
    y.c[i] = x.c[i] + a * k.dc[i];
  }
  y.r = x.r + a * k.dr;
  y.d = x.d + a * k.dd;
  return y;
}

constexpr const char* kComponentNames[] = {"S1", "S2", "I1", "I2", "Q1",
                                           "Q2", "R",  "D",  "C1", "C2"};

std::array<double*, 10> component_view(StateVector& x) {
  return {&x.s[0], &x.s[1], &x.i[0], &x.i[1], &x.q[0],
          &x.q[1], &x.r,    &x.d,    &x.c[0], &x.c[1]};
}

}  // namespace

const IntegrationConfig& validate_config(const IntegrationConfig& c) {
  if (!(c.dt > 0.0) || !std::isfinite(c.dt))
    throw Error(errc::bad_integration_config, "dt must be positive");
  if (!(c.horizon >= c.dt))
    throw Error(errc::bad_integration_config, "horizon must be >= dt");
  if (!(c.record_every >= c.dt))
    throw Error(errc::bad_integration_config, "record_every must be >= dt");
  if (!(c.extinction_threshold > 0.0))
    throw Error(errc::bad_integration_config,
                "extinction_threshold must be positive");
  return c;
}

void clamp_roundoff(StateVector& x) {
  for (double* v : component_view(x)) {
    if (*v < 0.0 && *v >= kClampFloor) *v = 0.0;
  }
}

void check_in_range(const StateVector& x) {
  StateVector copy = x;
  const auto view = component_view(copy);
  for (std::size_t k = 0; k < view.size(); ++k) {
    const double v = *view[k];
    if (v > kBlowupCeiling || v < kBlowupFloor) {
      std::ostringstream os;
      os << "component " << kComponentNames[k] << " = " << v;
      throw Error(errc::numerical_blowup, os.str());
    }
  }
}

StateVector rk4_step(const StateVector& x, const ModelParams& p,
                     const MixingMatrix& mix, double dt) {
  const Derivatives k1 = derivatives(x, p, mix);
  const Derivatives k2 = derivatives(shifted(x, dt / 2.0, k1), p, mix);
  const Derivatives k3 = derivatives(shifted(x, dt / 2.0, k2), p, mix);
  const Derivatives k4 = derivatives(shifted(x, dt, k3), p, mix);

  StateVector y;
  const double w = dt / 6.0;
  for (int i = 0; i < kGroups; ++i) {
    y.s[i] = x.s[i] + w * (k1.ds[i] + 2.0 * k2.ds[i] + 2.0 * k3.ds[i] + k4.ds[i]);
    y.i[i] = x.i[i] + w * (k1.di[i] + 2.0 * k2.di[i] + 2.0 * k3.di[i] + k4.di[i]);
    y.q[i] = x.q[i] + w * (k1.dq[i] + 2.0 * k2.dq[i] + 2.0 * k3.dq[i] + k4.dq[i]);
    y.c[i] = x.c[i] + w * (k1.dc[i] + 2.0 * k2.dc[i] + 2.0 * k3.dc[i] + k4.dc[i]);
  }
  y.r = x.r + w * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
  y.d = x.d + w * (k1.dd + 2.0 * k2.dd + 2.0 * k3.dd + k4.dd);

  clamp_roundoff(y);
  check_in_range(y);
  return y;
}

Trajectory simulate(const ModelParams& params, const IntegrationConfig& config) {
  validate_params(params);
  validate_config(config);
  const MixingMatrix mix = transmission_structure(params);

  const long long steps = std::max(1ll, std::llround(config.horizon / config.dt));
  const long long stride =
      std::max(1ll, std::llround(config.record_every / config.dt));

  Trajectory traj;
  traj.params = params;
  traj.config = config;
  traj.times.reserve(static_cast<std::size_t>(steps / stride) + 2);
  traj.states.reserve(traj.times.capacity());

  StateVector x = initial_state(params);
  traj.times.push_back(0.0);
  traj.states.push_back(x);

  for (long long k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    try {
      x = rk4_step(x, params, mix, config.dt);
    } catch (const Error& e) {
      if (e.code() == errc::numerical_blowup) {
        std::ostringstream os;
        os << e.detail() << " at t = " << t;
        throw Error(errc::numerical_blowup, os.str());
      }
      throw;
    }
    if (k % stride == 0 || k == steps) {
      traj.times.push_back(t);
      traj.states.push_back(x);
    }
  }
  return traj;
}

RunSummary summarize(const Trajectory& traj) {
  const StateVector& x = traj.back();
  const auto& n = traj.params.n;
  RunSummary s;
  for (int i = 0; i < kGroups; ++i)
    s.attack_rate[i] = (n[i] - x.s[i]) / n[i];
  s.total_infected = (n[0] - x.s[0]) + (n[1] - x.s[1]);
  s.reported_cumulative = x.c[0] + x.c[1];
  s.deaths = x.d;
  s.extinct = x.prevalence() < traj.config.extinction_threshold;
  return s;
}

}  // namespace hetmix
