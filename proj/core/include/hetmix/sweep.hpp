#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hetmix/final_size.hpp"
#include "hetmix/integrator.hpp"

namespace hetmix {

struct SweepAxis {
  std::string name;            // a sweepable parameter, see apply_parameter
  std::vector<double> values;  // non-empty, strictly increasing
};

struct SweepSpec {
  ModelParams base;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  IntegrationConfig config;
};

struct SweepRow {
  double axis1;
  std::optional<double> axis2;
  RunSummary summary;
  FinalSizePrediction oracle;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // grid order, axis1-major
};

// Sets one named parameter on params. Recognized names: gamma, pi, r0
// (both groups), r01, r02, alpha1, alpha2, h, n1, n2, seed_fraction.
// n1/n2 set the complementary size so the population stays normalized.
void apply_parameter(ModelParams& params, const std::string& name,
                     double value);
bool is_sweepable(const std::string& name);

// count >= 2 evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t count);

// The standard skeptic-share grid: 100 points on [1e-3, 0.999], endpoints
// pulled in so both groups stay seedable.
std::vector<double> default_n2_grid();

// Thread cap from HETMIX_THREADS (0 or unset = all cores).
unsigned thread_count_from_env();

// One simulate + summarize + final-size oracle per grid point. Rows are
// independent, evaluated in parallel (threads = 0 defers to
// HETMIX_THREADS), and always emitted in grid order, so results are
// bit-identical for any thread count. Per-point failures are collected
// and reported together with their grid coordinates via sweep_failure.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);

// Canned experiments behind the fig6/fig7/fig8 CLI subcommands. Each
// returns one n2-sweep block per outer setting; rows carry the outer
// value in axis2.
//
// fig6: homogeneous mixing (h = 0, r0 shared by both groups), testing gap
// alpha = (0.45, 0.27); deaths and reported cases vs. skeptic share.
std::vector<SweepResult> fig6_sweep(const std::vector<double>& r0_values,
                                    const std::vector<double>& n2_grid,
                                    const IntegrationConfig& config = {},
                                    unsigned threads = 0);
// fig7: proportionate mixing with an activity gap, r01 = 2.5 fixed and
// r02 >= r01 from the grid; per-group attack rates vs. skeptic share.
std::vector<SweepResult> fig7_sweep(const std::vector<double>& r02_values,
                                    const std::vector<double>& n2_grid,
                                    const IntegrationConfig& config = {},
                                    unsigned threads = 0);
// fig8: homophilic mixing, r01 = 2.5, two r02 settings, homophily from
// h_values; one block per (r02, h) pair, r02-major.
std::vector<SweepResult> fig8_sweep(const std::vector<double>& h_values,
                                    const std::vector<double>& n2_grid,
                                    const std::vector<double>& r02_values = {3.0, 3.5},
                                    const IntegrationConfig& config = {},
                                    unsigned threads = 0);

enum class Monotonicity { increasing, decreasing, flat, non_monotone };

// Qualitative shape of a sampled curve.
struct ShapeReport {
  std::string curve;
  Monotonicity monotonicity;
  bool affine;  // max |second difference| below 1e-6 x curve range
  double max_abs_second_difference;
  std::optional<std::size_t> extremum_index;  // interior extremum, if any
  std::optional<double> extremum_x;
  bool extremum_is_maximum = false;

  std::string label() const;  // e.g. "increasing, affine" or "non-monotone"
};

// Tolerance on first differences when deciding monotonicity (absolute,
// for curves of order 1).
inline constexpr double kMonotoneTolerance = 1e-9;

// Classifies ys over strictly increasing xs (>= 3 points, uniform spacing
// assumed for the second differences). Throws too_few_points.
ShapeReport classify_shape(std::span<const double> xs,
                           std::span<const double> ys,
                           std::string curve_name = {});

// Least-squares slopes of deaths and reported cases against the skeptic
// share over a window, raw and after rescaling each curve to unit range.
// The normalized pair is the scale-free comparison: deaths live at
// pi * attack scale, reported cases at alpha * attack scale.
struct ParadoxSummary {
  double slope_deaths;
  double slope_reported;
  double normalized_slope_deaths;
  double normalized_slope_reported;
  SweepResult sweep;
};

ParadoxSummary paradox_summary(const std::vector<double>& n2_grid,
                               const ModelParams& base,
                               const IntegrationConfig& config = {},
                               unsigned threads = 0);

// OLS slope of y against x.
double ols_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace hetmix
