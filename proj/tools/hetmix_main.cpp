// hetmix command-line front end: single runs, parameter sweeps, the
// canned fig6/fig7/fig8 experiments, final-size oracle queries, and the
// survey-to-district belief imputation. All outputs are plot-ready CSV.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hetmix/beliefs.hpp"
#include "hetmix/config.hpp"
#include "hetmix/csv_io.hpp"
#include "hetmix/final_size.hpp"
#include "hetmix/sweep.hpp"

namespace {

hetmix::RunConfig config_or_defaults(const std::string& path) {
  if (path.empty()) return hetmix::parse_config("");
  return hetmix::load_config(path);
}

std::string resolve_out(const std::string& flag,
                        const hetmix::RunConfig& config) {
  if (!flag.empty()) return flag;
  if (config.out) return *config.out;
  throw hetmix::Error(hetmix::errc::bad_input,
                      "no output path: pass --out or set out= in the config");
}

std::size_t total_rows(const std::vector<hetmix::SweepResult>& blocks) {
  std::size_t rows = 0;
  for (const auto& block : blocks) rows += block.rows.size();
  return rows;
}

void write_blocks(const std::string& out_path,
                  const std::vector<hetmix::SweepResult>& blocks) {
  hetmix::write_file_atomically(out_path, [&](std::ostream& out) {
    hetmix::write_sweep_csv(out, blocks);
  });
  std::cout << "wrote " << total_rows(blocks) << " rows in " << blocks.size()
            << (blocks.size() == 1 ? " block to " : " blocks to ") << out_path
            << "\n";
}

int run_simulate(const std::string& config_path, const std::string& out_flag) {
  const auto config = config_or_defaults(config_path);
  const std::string out_path = resolve_out(out_flag, config);
  const auto trajectory = hetmix::simulate(config.params, config.integration);
  const auto summary = hetmix::summarize(trajectory);
  hetmix::write_file_atomically(out_path, [&](std::ostream& out) {
    hetmix::write_trajectory_csv(out, trajectory);
  });
  std::cout << "wrote " << trajectory.times.size() << " samples to " << out_path
            << " (deaths = " << hetmix::format_double(summary.deaths)
            << ", reported = " << hetmix::format_double(summary.reported_cumulative)
            << ", extinct = " << (summary.extinct ? "yes" : "no") << ")\n";
  return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_flag) {
  const auto config = config_or_defaults(config_path);
  if (!config.axis1)
    throw hetmix::Error(hetmix::errc::bad_input,
                        "sweep needs axis1 in the config file");
  const std::string out_path = resolve_out(out_flag, config);
  hetmix::SweepSpec spec{config.params, *config.axis1, config.axis2,
                         config.integration};
  const auto result = hetmix::run_sweep(spec);
  write_blocks(out_path, {result});
  return 0;
}

int run_paradox(double r0, double n2_min, double n2_max, std::size_t points,
                const std::string& config_path, const std::string& out_flag) {
  auto config = config_or_defaults(config_path);
  hetmix::apply_parameter(config.params, "r0", r0);
  const auto grid = hetmix::linspace(n2_min, n2_max, points);
  const auto summary =
      hetmix::paradox_summary(grid, config.params, config.integration);
  if (!out_flag.empty() || config.out)
    write_blocks(resolve_out(out_flag, config), {summary.sweep});
  std::cout << "deaths slope = " << hetmix::format_double(summary.slope_deaths)
            << ", reported slope = "
            << hetmix::format_double(summary.slope_reported) << "\n"
            << "unit-range slopes: deaths = "
            << hetmix::format_double(summary.normalized_slope_deaths)
            << ", reported = "
            << hetmix::format_double(summary.normalized_slope_reported) << "\n";
  return 0;
}

int run_oracle(const CLI::Option* r0_opt, double r0, double alpha,
               const std::string& config_path) {
  if (r0_opt->count() > 0) {
    std::cout << hetmix::format_double(
                     hetmix::single_group_final_size(r0, alpha))
              << "\n";
    return 0;
  }
  const auto config = config_or_defaults(config_path);
  const auto prediction = hetmix::two_group_final_size(config.params);
  const auto& n = config.params.n;
  std::cout << "s_inf = (" << hetmix::format_double(prediction.s_inf[0]) << ", "
            << hetmix::format_double(prediction.s_inf[1]) << ")\n"
            << "attack rates = ("
            << hetmix::format_double((n[0] - prediction.s_inf[0]) / n[0]) << ", "
            << hetmix::format_double((n[1] - prediction.s_inf[1]) / n[1]) << ")\n"
            << "total infected = "
            << hetmix::format_double(prediction.total_infected)
            << ", reported = "
            << hetmix::format_double(prediction.reported_cumulative)
            << ", deaths = " << hetmix::format_double(prediction.deaths) << "\n"
            << "next-generation eigenvalue = "
            << hetmix::format_double(
                   hetmix::next_generation_eigenvalue(config.params))
            << ", solver residual = "
            << hetmix::format_double(prediction.solver_residual) << "\n";
  return 0;
}

int run_impute(const std::string& means_path, const std::string& shares_path,
               const std::string& weeks_path, const std::string& out_path) {
  auto open = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw hetmix::Error(hetmix::errc::bad_input,
                          "cannot open '" + path + "'");
    return in;
  };
  std::ifstream means_in = open(means_path);
  const auto table = hetmix::load_group_means(means_in);
  std::ifstream shares_in = open(shares_path);
  const auto districts = hetmix::load_district_shares(shares_in);
  std::ifstream weeks_in = open(weeks_path);
  const auto weeks = hetmix::load_weeks(weeks_in);

  std::vector<hetmix::ImputedBeliefSeries> all;
  for (const auto& district : districts) {
    auto series = hetmix::build_series(table, district, weeks);
    all.insert(all.end(), std::make_move_iterator(series.begin()),
               std::make_move_iterator(series.end()));
  }
  hetmix::write_file_atomically(out_path, [&](std::ostream& out) {
    hetmix::write_imputed_csv(out, all);
  });
  std::cout << "wrote " << all.size() << " series ("
            << all.size() * weeks.size() << " rows) to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-group SIRD epidemic simulator with testing-dependent detection "
      "and preferred mixing"};
  app.require_subcommand(1);

  std::string config_path, out_path;

  auto* simulate_cmd =
      app.add_subcommand("simulate", "Integrate one run, write the trajectory");
  simulate_cmd->add_option("--config", config_path, "flat key = value file");
  simulate_cmd->add_option("--out", out_path, "output CSV path");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "Run the sweep described by the config");
  sweep_cmd->add_option("--config", config_path, "config with axis1 (and axis2)")
      ->required();
  sweep_cmd->add_option("--out", out_path, "output CSV path");

  std::vector<double> r0_values{1.5, 2.0, 2.5, 3.0};
  std::size_t n2_points = 100;
  auto* fig6_cmd = app.add_subcommand(
      "fig6", "Homogeneous mixing with a testing gap: deaths and reported "
              "cases vs. skeptic share");
  fig6_cmd->add_option("--r0", r0_values, "shared r0 per curve")
      ->delimiter(',');
  fig6_cmd->add_option("--n2-points", n2_points, "grid size on [1e-3, 0.999]");
  fig6_cmd->add_option("--out", out_path, "output CSV path")->required();

  std::vector<double> r02_values{2.5, 3.0, 3.5, 4.0};
  auto* fig7_cmd = app.add_subcommand(
      "fig7", "Proportionate mixing with an activity gap: per-group attack "
              "rates vs. skeptic share");
  fig7_cmd->add_option("--r02", r02_values, "skeptic r0 per curve (>= 2.5)")
      ->delimiter(',');
  fig7_cmd->add_option("--n2-points", n2_points, "grid size on [1e-3, 0.999]");
  fig7_cmd->add_option("--out", out_path, "output CSV path")->required();

  std::vector<double> h_values{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> fig8_r02{3.0, 3.5};
  auto* fig8_cmd = app.add_subcommand(
      "fig8", "Homophilic mixing: deaths and reported cases vs. skeptic "
              "share, one block per (r02, h)");
  fig8_cmd->add_option("--homophily", h_values, "homophily per curve")->delimiter(',');
  fig8_cmd->add_option("--r02", fig8_r02, "skeptic r0 settings (> 2.5)")
      ->delimiter(',');
  fig8_cmd->add_option("--n2-points", n2_points, "grid size on [1e-3, 0.999]");
  fig8_cmd->add_option("--out", out_path, "output CSV path")->required();

  double paradox_r0 = 2.5, n2_min = 0.05, n2_max = 0.35;
  std::size_t paradox_points = 31;
  auto* paradox_cmd = app.add_subcommand(
      "paradox", "Deaths vs. reported-case slopes over a skeptic-share window");
  paradox_cmd->add_option("--r0", paradox_r0, "shared r0");
  paradox_cmd->add_option("--n2-min", n2_min, "window lower edge");
  paradox_cmd->add_option("--n2-max", n2_max, "window upper edge");
  paradox_cmd->add_option("--points", paradox_points, "window grid size");
  paradox_cmd->add_option("--config", config_path, "base parameters");
  paradox_cmd->add_option("--out", out_path, "optional window sweep CSV");

  double oracle_r0 = 0.0, oracle_alpha = 0.0;
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Final-size prediction without integration");
  auto* oracle_r0_opt =
      oracle_cmd->add_option("--r0", oracle_r0, "single-group r0");
  oracle_cmd->add_option("--alpha", oracle_alpha, "single-group alpha")
      ->needs(oracle_r0_opt);
  oracle_cmd->add_option("--config", config_path,
                         "two-group parameters (used without --r0)");

  std::string means_path, shares_path, weeks_path;
  auto* impute_cmd = app.add_subcommand(
      "impute", "District-level belief series from group means and shares");
  impute_cmd->add_option("--group-means", means_path,
                         "CSV: wave_id,wave_start,dimension,group,mean")
      ->required();
  impute_cmd->add_option("--district-shares", shares_path,
                         "CSV: district,group,share")
      ->required();
  impute_cmd->add_option("--weeks", weeks_path, "one ISO week Sunday per line")
      ->required();
  impute_cmd->add_option("--out", out_path, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate_cmd->parsed()) return run_simulate(config_path, out_path);
    if (sweep_cmd->parsed()) return run_sweep_cmd(config_path, out_path);
    if (fig6_cmd->parsed()) {
      write_blocks(out_path,
                   hetmix::fig6_sweep(r0_values,
                                      hetmix::linspace(1e-3, 0.999, n2_points)));
      return 0;
    }
    if (fig7_cmd->parsed()) {
      write_blocks(out_path,
                   hetmix::fig7_sweep(r02_values,
                                      hetmix::linspace(1e-3, 0.999, n2_points)));
      return 0;
    }
    if (fig8_cmd->parsed()) {
      write_blocks(out_path,
                   hetmix::fig8_sweep(h_values,
                                      hetmix::linspace(1e-3, 0.999, n2_points),
                                      fig8_r02));
      return 0;
    }
    if (paradox_cmd->parsed())
      return run_paradox(paradox_r0, n2_min, n2_max, paradox_points,
                         config_path, out_path);
    if (oracle_cmd->parsed())
      return run_oracle(oracle_r0_opt, oracle_r0, oracle_alpha, config_path);
    if (impute_cmd->parsed())
      return run_impute(means_path, shares_path, weeks_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
