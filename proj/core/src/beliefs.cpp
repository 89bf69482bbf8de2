#include "hetmix/beliefs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "hetmix/csv_io.hpp"

namespace hetmix {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

double parse_number(const std::string& text, int line_no, const char* what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    std::ostringstream os;
    os << "line " << line_no << ": cannot parse " << what << " '" << text << "'";
    throw Error(errc::bad_input, os.str());
  }
  return value;
}

// Reads lines, strips blank lines and '#' comments, reports 1-based line
// numbers.
struct LineReader {
  std::istream& in;
  int line_no = 0;
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      out = trim(raw);
      if (!out.empty()) return true;
    }
    return false;
  }
};

std::size_t index_of(const std::vector<std::string>& items,
                     const std::string& value) {
  const auto it = std::find(items.begin(), items.end(), value);
  return it == items.end() ? items.size()
                           : static_cast<std::size_t>(it - items.begin());
}

std::size_t intern(std::vector<std::string>& items, const std::string& value) {
  const auto idx = index_of(items, value);
  if (idx == items.size()) items.push_back(value);
  return idx;
}

}  // namespace

Date parse_date(const std::string& text) {
  int y = 0, m = 0, d = 0;
  char tail = '\0';
  if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3)
    throw Error(errc::bad_input, "expected YYYY-MM-DD date, got '" + text + "'");
  const std::chrono::year_month_day ymd{
      std::chrono::year(y), std::chrono::month(static_cast<unsigned>(m)),
      std::chrono::day(static_cast<unsigned>(d))};
  if (!ymd.ok())
    throw Error(errc::bad_input, "'" + text + "' is not a calendar date");
  return std::chrono::sys_days(ymd);
}

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd(date);
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02u-%02u",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buffer;
}

bool GroupBeliefTable::has(std::size_t dim, std::size_t wave,
                           std::size_t group) const {
  return !std::isnan(values[dim][wave][group]);
}

std::map<std::string, double> GroupBeliefTable::wave_means(
    std::size_t dim, std::size_t wave) const {
  std::map<std::string, double> means;
  for (std::size_t g = 0; g < groups.size(); ++g)
    if (has(dim, wave, g)) means[groups[g]] = values[dim][wave][g];
  return means;
}

const DistrictShares& validate_shares(const DistrictShares& shares) {
  if (shares.groups.size() != shares.shares.size())
    throw Error(errc::bad_input,
                "district '" + shares.district + "': groups/shares mismatch");
  double total = 0.0;
  for (double s : shares.shares) {
    if (!(s >= 0.0))
      throw Error(errc::bad_input,
                  "district '" + shares.district + "': negative share");
    total += s;
  }
  if (std::abs(total - 1.0) > kShareTolerance)
    throw Error(errc::bad_input, "district '" + shares.district +
                                     "': shares sum to " + std::to_string(total));
  return shares;
}

double impute_district(const DistrictShares& shares,
                       const std::map<std::string, double>& week_means) {
  validate_shares(shares);
  double value = 0.0;
  for (std::size_t g = 0; g < shares.groups.size(); ++g) {
    if (shares.shares[g] == 0.0) continue;
    const auto it = week_means.find(shares.groups[g]);
    if (it == week_means.end())
      throw Error(errc::missing_group_mean,
                  "no mean for group '" + shares.groups[g] + "'");
    value += shares.shares[g] * it->second;
  }
  return value;
}

std::size_t wave_for_week(Date week_sunday,
                          std::span<const Date> wave_starts) {
  if (wave_starts.empty())
    throw Error(errc::bad_input, "no survey waves given");
  for (std::size_t k = 1; k < wave_starts.size(); ++k)
    if (!(wave_starts[k] > wave_starts[k - 1]))
      throw Error(errc::bad_input, "wave starts must be strictly increasing");

  if (week_sunday <= wave_starts.front()) return 0;
  // Last wave whose start is <= the Sunday.
  std::size_t current = 0;
  while (current + 1 < wave_starts.size() &&
         wave_starts[current + 1] <= week_sunday)
    ++current;
  if (current + 1 == wave_starts.size()) return current;
  const auto to_current = (week_sunday - wave_starts[current]).count();
  const auto to_next = (wave_starts[current + 1] - week_sunday).count();
  // Strictly closer stays with the current wave; ties go to the next one.
  return to_current < to_next ? current : current + 1;
}

std::vector<ImputedBeliefSeries> build_series(const GroupBeliefTable& table,
                                              const DistrictShares& shares,
                                              const std::vector<Date>& weeks) {
  validate_shares(shares);
  std::vector<Date> starts;
  starts.reserve(table.waves.size());
  for (const auto& wave : table.waves) starts.push_back(wave.start);

  std::vector<ImputedBeliefSeries> all;
  all.reserve(table.dimensions.size());
  for (std::size_t d = 0; d < table.dimensions.size(); ++d) {
    ImputedBeliefSeries series;
    series.district = shares.district;
    series.dimension = table.dimensions[d];
    series.weeks = weeks;
    series.values.reserve(weeks.size());
    for (const Date week : weeks) {
      const std::size_t wave = wave_for_week(week, starts);
      const auto means = table.wave_means(d, wave);
      try {
        series.values.push_back(impute_district(shares, means));
      } catch (const Error& e) {
        if (e.code() != errc::missing_group_mean) throw;
        throw Error(errc::incomplete_table,
                    "dimension '" + table.dimensions[d] + "', wave '" +
                        table.waves[wave].id + "': " + e.detail());
      }
    }
    all.push_back(std::move(series));
  }
  return all;
}

GroupBeliefTable load_group_means(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line) ||
      split_csv_line(line) !=
          std::vector<std::string>{"wave_id", "wave_start", "dimension",
                                   "group", "mean"})
    throw Error(errc::bad_input,
                "group means file must start with header "
                "wave_id,wave_start,dimension,group,mean");

  struct Row {
    std::string wave_id;
    Date start;
    std::string dimension, group;
    double mean;
  };
  std::vector<Row> rows;
  while (reader.next(line)) {
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) {
      std::ostringstream os;
      os << "line " << reader.line_no << ": expected 5 fields, got "
         << fields.size();
      throw Error(errc::bad_input, os.str());
    }
    Row row{fields[0], parse_date(fields[1]), fields[2], fields[3],
            parse_number(fields[4], reader.line_no, "mean")};
    if (!(row.mean >= 0.0 && row.mean <= 1.0)) {
      std::ostringstream os;
      os << "line " << reader.line_no << ": mean " << row.mean
         << " outside [0, 1]";
      throw Error(errc::bad_input, os.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(errc::bad_input, "group means file is empty");

  GroupBeliefTable table;
  for (const auto& row : rows) {
    const auto idx = index_of(table.dimensions, row.dimension);
    if (idx == table.dimensions.size()) table.dimensions.push_back(row.dimension);
    std::size_t wave = table.waves.size();
    for (std::size_t w = 0; w < table.waves.size(); ++w)
      if (table.waves[w].id == row.wave_id) wave = w;
    if (wave == table.waves.size()) {
      table.waves.push_back({row.wave_id, row.start});
    } else if (table.waves[wave].start != row.start) {
      throw Error(errc::bad_input,
                  "wave '" + row.wave_id + "' has conflicting start dates");
    }
    intern(table.groups, row.group);
  }
  std::sort(table.waves.begin(), table.waves.end(),
            [](const Wave& a, const Wave& b) { return a.start < b.start; });
  for (std::size_t w = 1; w < table.waves.size(); ++w)
    if (table.waves[w].start == table.waves[w - 1].start)
      throw Error(errc::bad_input, "two waves share the start date " +
                                       format_date(table.waves[w].start));

  table.values.assign(
      table.dimensions.size(),
      std::vector<std::vector<double>>(
          table.waves.size(),
          std::vector<double>(table.groups.size(), kMissing)));
  for (const auto& row : rows) {
    const auto d = index_of(table.dimensions, row.dimension);
    std::size_t w = 0;
    while (table.waves[w].id != row.wave_id) ++w;
    const auto g = index_of(table.groups, row.group);
    if (!std::isnan(table.values[d][w][g]))
      throw Error(errc::bad_input, "duplicate cell (" + row.dimension + ", " +
                                       row.group + ", " + row.wave_id + ")");
    table.values[d][w][g] = row.mean;
  }
  return table;
}

std::vector<DistrictShares> load_district_shares(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line) ||
      split_csv_line(line) !=
          std::vector<std::string>{"district", "group", "share"})
    throw Error(errc::bad_input,
                "district shares file must start with header "
                "district,group,share");

  std::vector<DistrictShares> districts;
  while (reader.next(line)) {
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      std::ostringstream os;
      os << "line " << reader.line_no << ": expected 3 fields, got "
         << fields.size();
      throw Error(errc::bad_input, os.str());
    }
    DistrictShares* district = nullptr;
    for (auto& existing : districts)
      if (existing.district == fields[0]) district = &existing;
    if (!district) {
      districts.push_back({fields[0], {}, {}});
      district = &districts.back();
    }
    district->groups.push_back(fields[1]);
    district->shares.push_back(parse_number(fields[2], reader.line_no, "share"));
  }
  if (districts.empty())
    throw Error(errc::bad_input, "district shares file is empty");
  for (const auto& district : districts) validate_shares(district);
  return districts;
}

std::vector<Date> load_weeks(std::istream& in) {
  LineReader reader{in};
  std::string line;
  std::vector<Date> weeks;
  while (reader.next(line)) {
    if (weeks.empty() && line == "week_sunday") continue;  // optional header
    weeks.push_back(parse_date(line));
  }
  if (weeks.empty()) throw Error(errc::bad_input, "weeks file is empty");
  return weeks;
}

void write_imputed_csv(std::ostream& out,
                       std::span<const ImputedBeliefSeries> series) {
  out << "district,dimension,week_sunday,value\n";
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.weeks.size(); ++k) {
      out << s.district << ',' << s.dimension << ',' << format_date(s.weeks[k])
          << ',' << format_double(s.values[k]) << '\n';
    }
  }
}

}  // namespace hetmix
