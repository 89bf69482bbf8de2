#include "hetmix/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace hetmix {

namespace {

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

[[noreturn]] void fail_at(int line_no, const std::string& what) {
  std::ostringstream os;
  os << "line " << line_no << ": " << what;
  throw Error(errc::bad_input, os.str());
}

double to_double(const std::string& text, int line_no) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail_at(line_no, "cannot parse number '" + text + "'");
  return value;
}

std::vector<double> to_double_list(const std::string& text, int line_no) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item =
        trim(std::string_view(text).substr(start, comma == std::string::npos
                                                      ? std::string::npos
                                                      : comma - start));
    if (item.empty()) fail_at(line_no, "empty entry in value list");
    values.push_back(to_double(item, line_no));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

// Per-axis grid description gathered during the scan.
struct AxisDraft {
  std::optional<std::string> name;
  std::optional<double> min, max;
  std::optional<double> points;
  std::optional<std::vector<double>> values;
  int first_line = 0;

  bool any() const {
    return name || min || max || points || values;
  }
};

std::optional<SweepAxis> finish_axis(const AxisDraft& draft, const char* prefix) {
  if (!draft.any()) return std::nullopt;
  if (!draft.name)
    fail_at(draft.first_line, std::string(prefix) + " grid given without " +
                                  prefix + " parameter name");
  SweepAxis axis;
  axis.name = *draft.name;
  if (draft.values) {
    if (draft.min || draft.max || draft.points)
      fail_at(draft.first_line, std::string(prefix) +
                                    "_values excludes min/max/points");
    axis.values = *draft.values;
  } else {
    if (!draft.min || !draft.max || !draft.points)
      fail_at(draft.first_line, std::string(prefix) +
                                    " needs min, max and points (or _values)");
    const double count = *draft.points;
    if (count < 2.0 || count != static_cast<double>(static_cast<std::size_t>(count)))
      fail_at(draft.first_line,
              std::string(prefix) + "_points must be an integer >= 2");
    axis.values = linspace(*draft.min, *draft.max,
                           static_cast<std::size_t>(count));
  }
  if (axis.values.empty())
    fail_at(draft.first_line, std::string(prefix) + " grid is empty");
  for (std::size_t k = 1; k < axis.values.size(); ++k)
    if (!(axis.values[k] > axis.values[k - 1]))
      fail_at(draft.first_line,
              std::string(prefix) + " grid must be strictly increasing");
  return axis;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  AxisDraft axis1, axis2;
  std::map<std::string, int> seen;

  std::istringstream stream{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const auto equals = line.find('=');
    if (equals == std::string::npos)
      fail_at(line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(std::string_view(line).substr(0, equals));
    const std::string value = trim(std::string_view(line).substr(equals + 1));
    if (key.empty()) fail_at(line_no, "missing key before '='");
    if (value.empty()) fail_at(line_no, "missing value for key '" + key + "'");

    if (const auto [it, inserted] = seen.emplace(key, line_no); !inserted) {
      std::ostringstream os;
      os << "duplicate key '" << key << "' (first set on line " << it->second
         << ")";
      fail_at(line_no, os.str());
    }

    if (is_sweepable(key)) {
      apply_parameter(config.params, key, to_double(value, line_no));
    } else if (key == "dt") {
      config.integration.dt = to_double(value, line_no);
    } else if (key == "horizon") {
      config.integration.horizon = to_double(value, line_no);
    } else if (key == "record_every") {
      config.integration.record_every = to_double(value, line_no);
    } else if (key == "extinction_threshold") {
      config.integration.extinction_threshold = to_double(value, line_no);
    } else if (key == "out") {
      config.out = value;
    } else if (key == "axis1" || key == "axis2") {
      AxisDraft& draft = key == "axis1" ? axis1 : axis2;
      if (!draft.first_line) draft.first_line = line_no;
      if (!is_sweepable(value))
        fail_at(line_no, "'" + value + "' is not a sweepable parameter");
      draft.name = value;
    } else if (key == "axis1_min" || key == "axis2_min") {
      AxisDraft& draft = key[4] == '1' ? axis1 : axis2;
      if (!draft.first_line) draft.first_line = line_no;
      draft.min = to_double(value, line_no);
    } else if (key == "axis1_max" || key == "axis2_max") {
      AxisDraft& draft = key[4] == '1' ? axis1 : axis2;
      if (!draft.first_line) draft.first_line = line_no;
      draft.max = to_double(value, line_no);
    } else if (key == "axis1_points" || key == "axis2_points") {
      AxisDraft& draft = key[4] == '1' ? axis1 : axis2;
      if (!draft.first_line) draft.first_line = line_no;
      draft.points = to_double(value, line_no);
    } else if (key == "axis1_values" || key == "axis2_values") {
      AxisDraft& draft = key[4] == '1' ? axis1 : axis2;
      if (!draft.first_line) draft.first_line = line_no;
      draft.values = to_double_list(value, line_no);
    } else {
      fail_at(line_no, "unknown key '" + key + "'");
    }
  }

  config.axis1 = finish_axis(axis1, "axis1");
  config.axis2 = finish_axis(axis2, "axis2");
  if (config.axis2 && !config.axis1)
    throw Error(errc::bad_input, "axis2 given without axis1");

  // Everything is checked before any work starts.
  validate_params(config.params);
  validate_config(config.integration);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::bad_input, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace hetmix
