#include <cmath>
#include <cstring>
#include <sstream>

#include <doctest.h>

#include "hetmix/csv_io.hpp"
#include "hetmix/final_size.hpp"
#include "hetmix/integrator.hpp"
#include "test_support.hpp"

using namespace hetmix;
using test::thrown_code;

namespace {

double max_component_gap(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  auto update = [&](double x, double y) { m = std::max(m, std::abs(x - y)); };
  for (int i = 0; i < 2; ++i) {
    update(a.s[i], b.s[i]);
    update(a.i[i], b.i[i]);
    update(a.q[i], b.q[i]);
    update(a.c[i], b.c[i]);
  }
  update(a.r, b.r);
  update(a.d, b.d);
  return m;
}

}  // namespace

TEST_CASE("integration config invariants") {
  IntegrationConfig c;
  CHECK_NOTHROW(validate_config(c));
  c.dt = 0.0;
  CHECK(thrown_code([&] { validate_config(c); }) == errc::bad_integration_config);
  c = {};
  c.horizon = 0.01;  // below dt
  CHECK(thrown_code([&] { validate_config(c); }) == errc::bad_integration_config);
  c = {};
  c.record_every = 0.01;
  CHECK(thrown_code([&] { validate_config(c); }) == errc::bad_integration_config);
  c = {};
  c.extinction_threshold = 0.0;
  CHECK(thrown_code([&] { validate_config(c); }) == errc::bad_integration_config);
}

TEST_CASE("a disease-free state steps to itself bit for bit") {
  ModelParams p;
  const auto mix = mixing_matrix(p);
  StateVector x;
  x.s = {0.6, 0.4};
  x.r = 0.0;
  const auto y = rk4_step(x, p, mix, 0.05);
  CHECK(std::memcmp(&x, &y, sizeof x) == 0);
}

TEST_CASE("one step conserves mass to machine precision") {
  auto rng = test::seeded_rng(23);
  ModelParams p;
  const auto mix = mixing_matrix(p);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = test::random_state(rng);
    const auto y = rk4_step(x, p, mix, 0.05);
    CHECK(std::abs(y.mass() - x.mass()) < 1e-14);
  }
}

TEST_CASE("roundoff clamp and blowup bands") {
  StateVector x;
  x.s = {0.5, 0.5};

  SUBCASE("tiny negatives are zeroed") {
    x.i[0] = -1e-13;
    clamp_roundoff(x);
    CHECK(x.i[0] == 0.0);
  }
  SUBCASE("moderate negatives are tolerated unchanged") {
    x.i[0] = -1e-7;
    clamp_roundoff(x);
    CHECK(x.i[0] == -1e-7);
    CHECK_NOTHROW(check_in_range(x));
  }
  SUBCASE("large negatives are an error") {
    x.i[0] = -1e-5;
    CHECK(thrown_code([&] { check_in_range(x); }) == errc::numerical_blowup);
  }
  SUBCASE("components above the normalized scale are an error") {
    x.q[1] = 2.5;
    CHECK(thrown_code([&] { check_in_range(x); }) == errc::numerical_blowup);
    ModelParams p;
    const auto mix = mixing_matrix(p);
    CHECK(thrown_code([&] { rk4_step(x, p, mix, 0.05); }) ==
          errc::numerical_blowup);
  }
}

TEST_CASE("simulate reports the blowup time for mis-scaled inputs") {
  ModelParams p;
  // Pushes force * dt past the stability limit once the epidemic peaks;
  // the S update then oscillates negative.
  p.r0 = {2000.0, 2000.0};
  try {
    simulate(p);
    FAIL("expected numerical blowup");
  } catch (const Error& e) {
    CHECK(e.code() == errc::numerical_blowup);
    CHECK(std::string(e.what()).find("at t = ") != std::string::npos);
  }
}

TEST_CASE("calibration run is over well before the horizon") {
  ModelParams p;
  const auto traj = simulate(p);
  const auto& x = traj.back();
  CHECK(x.i[0] + x.i[1] < 1e-9);
  CHECK(summarize(traj).extinct);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(500.0));
  CHECK(traj.times.size() == 501);
  for (std::size_t k = 1; k < traj.times.size(); ++k)
    CHECK(traj.times[k] > traj.times[k - 1]);
}

TEST_CASE("trajectories conserve mass and move monotonically") {
  ModelParams p;
  p.r0 = {2.5, 3.2};
  p.h = 0.4;
  const auto traj = simulate(p);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const auto& x = traj.states[k];
    CHECK(std::abs(x.mass() - 1.0) < 1e-9);
    CHECK(x.c[0] >= x.q[0]);
    CHECK(x.c[1] >= x.q[1]);
    if (k == 0) continue;
    const auto& prev = traj.states[k - 1];
    CHECK(x.s[0] <= prev.s[0] + 1e-12);
    CHECK(x.s[1] <= prev.s[1] + 1e-12);
    CHECK(x.d >= prev.d - 1e-12);
    CHECK(x.c[0] >= prev.c[0] - 1e-12);
    CHECK(x.c[1] >= prev.c[1] - 1e-12);
  }
}

TEST_CASE("terminal deaths and reported counts follow the exact identities") {
  // D(T) = pi * total infected and C_i(T) = alpha_i (N_i - S_i(T)) once
  // the epidemic is extinct: the detected share of every infection is
  // alpha_i and a detected case dies with pi/alpha_i.
  ModelParams p;
  p.r0 = {2.5, 3.5};
  p.h = 0.25;
  p.n = {0.6, 0.4};
  const auto traj = simulate(p);
  const auto summary = summarize(traj);
  REQUIRE(summary.extinct);
  const auto& x = traj.back();
  CHECK(x.d == doctest::Approx(p.pi * summary.total_infected).epsilon(1e-8));
  for (int i = 0; i < 2; ++i)
    CHECK(x.c[i] ==
          doctest::Approx(p.alpha[i] * (p.n[i] - x.s[i])).epsilon(1e-8));
  CHECK(summary.deaths <= p.pi * summary.total_infected + 1e-10);
  CHECK(summary.reported_cumulative <= summary.total_infected);
}

TEST_CASE("calibration endpoint matches the final-size oracle") {
  ModelParams p;
  const auto traj = simulate(p);
  CHECK(std::abs(traj.back().s[0] - test::kCalibrationSInf) < 1e-4);
  CHECK(std::abs(traj.back().s[1] - test::kCalibrationSInf) < 1e-4);
}

TEST_CASE("subcritical runs stay within the branching bound") {
  ModelParams p;
  p.r0 = {0.5, 0.5};
  const auto summary = summarize(simulate(p));
  const double lambda = next_generation_eigenvalue(p);
  REQUIRE(lambda < 1.0);
  CHECK(summary.extinct);
  CHECK(summary.total_infected <=
        2.0 * p.seed_fraction / (1.0 - lambda));
}

TEST_CASE("pi = 0 produces exactly zero deaths") {
  ModelParams p;
  p.pi = 0.0;
  const auto traj = simulate(p);
  CHECK(traj.back().d == 0.0);
}

TEST_CASE("no transmission leaves only the seeds infected") {
  ModelParams p;
  p.r0 = {0.0, 0.0};
  const auto summary = summarize(simulate(p));
  CHECK(summary.extinct);
  CHECK(summary.total_infected ==
        doctest::Approx(p.seed_fraction).epsilon(1e-10));
  CHECK(summary.attack_rate[0] ==
        doctest::Approx(p.seed_fraction).epsilon(1e-10));
  CHECK(summary.deaths ==
        doctest::Approx(p.pi * p.seed_fraction).epsilon(1e-6));
}

TEST_CASE("endpoint error scales as dt^4") {
  // Fast timescales push truncation error well above roundoff; at the
  // default calibration the dt = 0.1 error already sits at 1e-13 and the
  // ratio is noise.
  ModelParams p;
  p.gamma = 0.5;
  p.r0 = {4.0, 6.0};
  p.h = 0.2;
  IntegrationConfig ref;
  ref.dt = 0.0125;
  const auto reference = simulate(p, ref).back();
  double errors[3];
  int k = 0;
  for (double dt : {0.2, 0.1, 0.05}) {
    IntegrationConfig c;
    c.dt = dt;
    errors[k++] = max_component_gap(simulate(p, c).back(), reference);
  }
  CHECK(errors[0] / errors[1] > 12.0);
  CHECK(errors[0] / errors[1] < 20.0);
  CHECK(errors[1] / errors[2] > 12.0);
  CHECK(errors[1] / errors[2] < 20.0);
}

TEST_CASE("trajectory CSV format") {
  ModelParams p;
  IntegrationConfig c;
  c.horizon = 3.0;
  const auto traj = simulate(p, c);
  std::ostringstream out;
  write_trajectory_csv(out, traj);
  const std::string text = out.str();
  CHECK(text.rfind("t,S1,S2,I1,I2,Q1,Q2,R,D,C1,C2\n", 0) == 0);
  // header + 4 samples (t = 0..3)
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  // deterministic output
  std::ostringstream again;
  write_trajectory_csv(again, traj);
  CHECK(text == again.str());
  // values round-trip at 17 significant digits
  const auto pos = text.find('\n') + 1;
  const auto line = text.substr(pos, text.find('\n', pos) - pos);
  CHECK(line.substr(0, 2) == "0,");
  CHECK(line.find("0.49995000000000001") != std::string::npos);
}
