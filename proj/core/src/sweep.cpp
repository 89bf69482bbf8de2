#include "hetmix/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

namespace hetmix {

void apply_parameter(ModelParams& p, const std::string& name, double value) {
  if (name == "gamma") p.gamma = value;
  else if (name == "pi") p.pi = value;
  else if (name == "r0") p.r0 = {value, value};
  else if (name == "r01") p.r0[0] = value;
  else if (name == "r02") p.r0[1] = value;
  else if (name == "alpha1") p.alpha[0] = value;
  else if (name == "alpha2") p.alpha[1] = value;
  else if (name == "h") p.h = value;
  else if (name == "n1") p.n = {value, 1.0 - value};
  else if (name == "n2") p.n = {1.0 - value, value};
  else if (name == "seed_fraction") p.seed_fraction = value;
  else throw Error(errc::bad_input, "unknown parameter '" + name + "'");
}

bool is_sweepable(const std::string& name) {
  static const char* names[] = {"gamma", "pi",     "r0", "r01", "r02",
                                "alpha1", "alpha2", "h",  "n1",  "n2",
                                "seed_fraction"};
  return std::find_if(std::begin(names), std::end(names), [&](const char* s) {
           return name == s;
         }) != std::end(names);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw Error(errc::bad_input, "linspace needs >= 2 points");
  std::vector<double> xs(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k)
    xs[k] = lo + static_cast<double>(k) * step;
  xs.back() = hi;
  return xs;
}

std::vector<double> default_n2_grid() { return linspace(1e-3, 0.999, 100); }

unsigned thread_count_from_env() {
  if (const char* env = std::getenv("HETMIX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void validate_axis(const SweepAxis& axis) {
  if (!is_sweepable(axis.name))
    throw Error(errc::bad_input, "unknown sweep axis '" + axis.name + "'");
  if (axis.values.empty())
    throw Error(errc::bad_input, "empty grid for axis '" + axis.name + "'");
  for (std::size_t k = 1; k < axis.values.size(); ++k) {
    if (!(axis.values[k] > axis.values[k - 1]))
      throw Error(errc::bad_input,
                  "grid for axis '" + axis.name + "' must be strictly increasing");
  }
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  validate_axis(spec.axis1);
  if (spec.axis2) validate_axis(*spec.axis2);
  validate_config(spec.config);

  const std::size_t n1 = spec.axis1.values.size();
  const std::size_t n2 = spec.axis2 ? spec.axis2->values.size() : 1;
  const std::size_t total = n1 * n2;

  SweepResult result;
  result.spec = spec;
  result.rows.resize(total);

  std::vector<std::string> failures;
  std::mutex failures_mutex;

  auto evaluate = [&](std::size_t index) {
    const std::size_t i1 = index / n2;
    const std::size_t i2 = index % n2;
    SweepRow& row = result.rows[index];
    row.axis1 = spec.axis1.values[i1];
    if (spec.axis2) row.axis2 = spec.axis2->values[i2];
    try {
      ModelParams params = spec.base;
      apply_parameter(params, spec.axis1.name, row.axis1);
      if (spec.axis2) apply_parameter(params, spec.axis2->name, *row.axis2);
      validate_params(params);
      row.summary = summarize(simulate(params, spec.config));
      row.oracle = two_group_final_size(params);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << spec.axis1.name << " = " << row.axis1;
      if (row.axis2) os << ", " << spec.axis2->name << " = " << *row.axis2;
      os << ": " << e.what();
      std::lock_guard lock(failures_mutex);
      failures.push_back(os.str());
    }
  };

  const unsigned workers = std::min<std::size_t>(
      total, threads > 0 ? threads : thread_count_from_env());
  if (workers <= 1) {
    for (std::size_t k = 0; k < total; ++k) evaluate(k);
  } else {
    // Rows are written to preassigned slots, so the schedule cannot
    // change the result.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next.fetch_add(1); k < total;
             k = next.fetch_add(1))
          evaluate(k);
      });
    }
    for (auto& t : pool) t.join();
  }

  if (!failures.empty()) {
    std::sort(failures.begin(), failures.end());
    std::ostringstream os;
    os << failures.size() << " of " << total << " grid points failed:";
    for (const auto& f : failures) os << "\n  " << f;
    throw Error(errc::sweep_failure, os.str());
  }
  return result;
}

namespace {

// Shared base for the canned experiments: the standard calibration with
// the outer setting applied, swept along n2, rows tagged with the outer
// value.
SweepResult preset_block(ModelParams base, const std::vector<double>& n2_grid,
                         double outer_value, const IntegrationConfig& config,
                         unsigned threads) {
  SweepSpec spec;
  spec.base = base;
  spec.axis1 = {"n2", n2_grid};
  spec.config = config;
  SweepResult block = run_sweep(spec, threads);
  for (auto& row : block.rows) row.axis2 = outer_value;
  return block;
}

}  // namespace

std::vector<SweepResult> fig6_sweep(const std::vector<double>& r0_values,
                                    const std::vector<double>& n2_grid,
                                    const IntegrationConfig& config,
                                    unsigned threads) {
  std::vector<SweepResult> blocks;
  blocks.reserve(r0_values.size());
  for (double r0 : r0_values) {
    ModelParams base;  // calibration defaults: alpha = (0.45, 0.27), h = 0
    base.r0 = {r0, r0};
    blocks.push_back(preset_block(base, n2_grid, r0, config, threads));
  }
  return blocks;
}

std::vector<SweepResult> fig7_sweep(const std::vector<double>& r02_values,
                                    const std::vector<double>& n2_grid,
                                    const IntegrationConfig& config,
                                    unsigned threads) {
  std::vector<SweepResult> blocks;
  blocks.reserve(r02_values.size());
  for (double r02 : r02_values) {
    ModelParams base;
    if (r02 < base.r0[0])
      throw Error(errc::bad_input, "fig7 requires r02 >= r01 = 2.5");
    base.r0[1] = r02;
    base.h = 0.0;
    blocks.push_back(preset_block(base, n2_grid, r02, config, threads));
  }
  return blocks;
}

std::vector<SweepResult> fig8_sweep(const std::vector<double>& h_values,
                                    const std::vector<double>& n2_grid,
                                    const std::vector<double>& r02_values,
                                    const IntegrationConfig& config,
                                    unsigned threads) {
  std::vector<SweepResult> blocks;
  blocks.reserve(h_values.size() * r02_values.size());
  for (double r02 : r02_values) {
    if (r02 <= 2.5)
      throw Error(errc::bad_input, "fig8 requires r02 > r01 = 2.5");
    for (double h : h_values) {
      ModelParams base;
      base.r0[1] = r02;
      base.h = h;
      blocks.push_back(preset_block(base, n2_grid, h, config, threads));
    }
  }
  return blocks;
}

std::string ShapeReport::label() const {
  std::string text;
  switch (monotonicity) {
    case Monotonicity::increasing: text = "increasing"; break;
    case Monotonicity::decreasing: text = "decreasing"; break;
    case Monotonicity::flat: text = "flat"; break;
    case Monotonicity::non_monotone: text = "non-monotone"; break;
  }
  if (affine) text += ", affine";
  if (extremum_index) {
    std::ostringstream os;
    os << ", interior " << (extremum_is_maximum ? "maximum" : "minimum")
       << " at x = " << (extremum_x ? *extremum_x : 0.0);
    text += os.str();
  }
  return text;
}

ShapeReport classify_shape(std::span<const double> xs,
                           std::span<const double> ys,
                           std::string curve_name) {
  if (xs.size() != ys.size())
    throw Error(errc::bad_input, "xs and ys must have equal length");
  if (xs.size() < 3)
    throw Error(errc::too_few_points, "shape classification needs >= 3 points");
  for (std::size_t k = 1; k < xs.size(); ++k)
    if (!(xs[k] > xs[k - 1]))
      throw Error(errc::bad_input, "xs must be strictly increasing");

  ShapeReport report;
  report.curve = std::move(curve_name);

  bool any_up = false, any_down = false;
  for (std::size_t k = 1; k < ys.size(); ++k) {
    const double diff = ys[k] - ys[k - 1];
    if (diff > kMonotoneTolerance) any_up = true;
    if (diff < -kMonotoneTolerance) any_down = true;
  }
  report.monotonicity =
      any_up && any_down ? Monotonicity::non_monotone
      : any_up           ? Monotonicity::increasing
      : any_down         ? Monotonicity::decreasing
                         : Monotonicity::flat;

  double max_dd = 0.0;
  for (std::size_t k = 1; k + 1 < ys.size(); ++k)
    max_dd = std::max(max_dd, std::abs(ys[k + 1] - 2.0 * ys[k] + ys[k - 1]));
  report.max_abs_second_difference = max_dd;

  const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  const double range = *hi - *lo;
  report.affine = max_dd <= 1e-6 * range || range == 0.0;

  if (report.monotonicity == Monotonicity::non_monotone) {
    // First sign change of the first differences locates the extremum.
    for (std::size_t k = 1; k + 1 < ys.size(); ++k) {
      const double left = ys[k] - ys[k - 1];
      const double right = ys[k + 1] - ys[k];
      const bool peak = left > kMonotoneTolerance && right < -kMonotoneTolerance;
      const bool valley = left < -kMonotoneTolerance && right > kMonotoneTolerance;
      if (peak || valley) {
        report.extremum_index = k;
        report.extremum_x = xs[k];
        report.extremum_is_maximum = peak;
        break;
      }
    }
  }
  return report;
}

double ols_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw Error(errc::bad_input, "OLS slope needs >= 2 matched points");
  const double n = static_cast<double>(xs.size());
  double x_mean = 0.0, y_mean = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    x_mean += xs[k];
    y_mean += ys[k];
  }
  x_mean /= n;
  y_mean /= n;
  double cov = 0.0, var = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    cov += (xs[k] - x_mean) * (ys[k] - y_mean);
    var += (xs[k] - x_mean) * (xs[k] - x_mean);
  }
  if (var == 0.0) throw Error(errc::bad_input, "degenerate x values");
  return cov / var;
}

namespace {

std::vector<double> unit_range(const std::vector<double>& ys) {
  const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  std::vector<double> out(ys.size(), 0.0);
  const double range = *hi - *lo;
  if (range == 0.0) return out;  // flat curve normalizes to zero
  for (std::size_t k = 0; k < ys.size(); ++k) out[k] = (ys[k] - *lo) / range;
  return out;
}

}  // namespace

ParadoxSummary paradox_summary(const std::vector<double>& n2_grid,
                               const ModelParams& base,
                               const IntegrationConfig& config,
                               unsigned threads) {
  SweepSpec spec;
  spec.base = base;
  spec.axis1 = {"n2", n2_grid};
  spec.config = config;

  ParadoxSummary out;
  out.sweep = run_sweep(spec, threads);

  std::vector<double> deaths, reported;
  deaths.reserve(out.sweep.rows.size());
  reported.reserve(out.sweep.rows.size());
  for (const auto& row : out.sweep.rows) {
    deaths.push_back(row.summary.deaths);
    reported.push_back(row.summary.reported_cumulative);
  }
  out.slope_deaths = ols_slope(n2_grid, deaths);
  out.slope_reported = ols_slope(n2_grid, reported);
  out.normalized_slope_deaths = ols_slope(n2_grid, unit_range(deaths));
  out.normalized_slope_reported = ols_slope(n2_grid, unit_range(reported));
  return out;
}

}  // namespace hetmix
