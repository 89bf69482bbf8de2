#pragma once

#include <chrono>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hetmix/errors.hpp"

namespace hetmix {

using Date = std::chrono::sys_days;

// "YYYY-MM-DD" -> days since epoch; throws bad_input on malformed or
// non-existent dates.
Date parse_date(const std::string& text);
std::string format_date(Date date);

struct Wave {
  std::string id;
  Date start;
};

// Mean beliefs per (dimension, demographic group, survey wave). Group and
// dimension labels are opaque strings; cells may be explicitly missing
// (NaN), which only becomes an error when a computation needs them.
struct GroupBeliefTable {
  std::vector<Wave> waves;  // strictly increasing start dates
  std::vector<std::string> groups;
  std::vector<std::string> dimensions;
  // values[dimension][wave][group]; NaN = missing
  std::vector<std::vector<std::vector<double>>> values;

  bool has(std::size_t dim, std::size_t wave, std::size_t group) const;
  // Means of one (dimension, wave) keyed by group label, skipping missing
  // cells.
  std::map<std::string, double> wave_means(std::size_t dim,
                                           std::size_t wave) const;
};

// Group composition of one district; shares sum to 1.
struct DistrictShares {
  std::string district;
  std::vector<std::string> groups;
  std::vector<double> shares;
};

inline constexpr double kShareTolerance = 1e-9;
const DistrictShares& validate_shares(const DistrictShares& shares);

// One district x dimension weekly series.
struct ImputedBeliefSeries {
  std::string district;
  std::string dimension;
  std::vector<Date> weeks;
  std::vector<double> values;
};

// Share-weighted mean sum_h n_h * b_h over the district's groups. Throws
// missing_group_mean when a group with positive share has no mean.
double impute_district(const DistrictShares& shares,
                       const std::map<std::string, double>& week_means);

// Maps a week (identified by its Sunday) to a survey wave: the wave X
// whose start date is strictly closer than the next wave's; equidistant
// Sundays go to the later wave. Weeks before the first wave map to it,
// weeks at or past the last start map to the last wave. wave_starts must
// be non-empty and strictly increasing.
std::size_t wave_for_week(Date week_sunday, std::span<const Date> wave_starts);

// One imputed value per (dimension, week): wave_for_week then
// impute_district. Throws incomplete_table if a required cell is missing.
std::vector<ImputedBeliefSeries> build_series(const GroupBeliefTable& table,
                                              const DistrictShares& shares,
                                              const std::vector<Date>& weeks);

// CSV I/O. group_means.csv: wave_id,wave_start,dimension,group,mean.
// district_shares.csv: district,group,share. Weeks file: one ISO date per
// line (optional week_sunday header, # comments allowed). Output schema:
// district,dimension,week_sunday,value.
GroupBeliefTable load_group_means(std::istream& in);
std::vector<DistrictShares> load_district_shares(std::istream& in);
std::vector<Date> load_weeks(std::istream& in);
void write_imputed_csv(std::ostream& out,
                       std::span<const ImputedBeliefSeries> series);

}  // namespace hetmix
