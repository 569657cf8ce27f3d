#include "mrl/data_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mrl/error.hpp"

namespace mrl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  out.push_back(trim(field));
  return out;
}

double parse_value(const std::string& field, int line_no) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw DataError("line " + std::to_string(line_no) + ": cannot parse '" + field + "' as a number");
  }
  return v;
}

}  // namespace

std::vector<double> read_observations(std::istream& in, const std::optional<std::string>& column) {
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  std::optional<std::size_t> index;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (!column) {
      values.push_back(parse_value(text, line_no));
      continue;
    }
    const std::vector<std::string> fields = split_csv(text);
    if (!index) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == *column) index = i;
      }
      if (!index) {
        throw DataError("line " + std::to_string(line_no) + ": header has no column '" + *column + "'");
      }
      continue;
    }
    if (*index >= fields.size()) {
      throw DataError("line " + std::to_string(line_no) + ": missing column '" + *column + "'");
    }
    values.push_back(parse_value(fields[*index], line_no));
  }
  if (values.empty()) throw DataError("input contains no observations");
  return values;
}

std::vector<double> read_observations_file(const std::string& path,
                                           const std::optional<std::string>& column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_observations(in, column);
}

}  // namespace mrl
