#include "mrl/study_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mrl/error.hpp"

namespace mrl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || trim(s.substr(used)) != "") throw std::invalid_argument("'" + s + "' is not a number");
  return v;
}

std::size_t to_count(const std::string& s) {
  const double v = to_number(s);
  if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw std::invalid_argument("'" + s + "' is not a nonnegative integer");
  }
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void apply(StudyConfig& c, const std::string& key, const std::string& value, bool& models_reset) {
  if (key == "study") {
    c.kind = parse_study_kind(value);
  } else if (key == "a") {
    c.a_grid.clear();
    for (const auto& v : split_list(value)) c.a_grid.push_back(to_number(v));
  } else if (key == "n") {
    c.n_grid.clear();
    for (const auto& v : split_list(value)) c.n_grid.push_back(to_count(v));
  } else if (key == "model" || key == "models") {
    if (!models_reset) {
      c.models.clear();
      models_reset = true;
    }
    c.models.push_back(parse_model(value));
  } else if (key == "reps") {
    c.reps = static_cast<int>(to_count(value));
  } else if (key == "null_reps") {
    c.null_reps = static_cast<int>(to_count(value));
  } else if (key == "alpha") {
    c.alpha = to_number(value);
  } else if (key == "seed") {
    c.seed = std::stoull(value);
  } else if (key == "workers") {
    c.workers = static_cast<unsigned>(to_count(value));
  } else if (key == "quantiles") {
    c.quantiles.clear();
    for (const auto& v : split_list(value)) c.quantiles.push_back(to_number(v));
  } else if (key == "critical") {
    if (value == "pearson") {
      c.critical = CriticalSource::Pearson;
    } else if (value == "empirical") {
      c.critical = CriticalSource::Empirical;
    } else {
      throw std::invalid_argument("critical must be pearson or empirical");
    }
  } else {
    throw std::invalid_argument("unknown key '" + key + "'");
  }
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string json_list(const nlohmann::json& v) {
  if (!v.is_array()) return json_scalar(v);
  std::string out;
  for (const auto& item : v) out += json_scalar(item) + ",";
  return out;
}

std::string json_model(const nlohmann::json& m) {
  if (m.is_string()) return m.get<std::string>();
  std::string out;
  for (const auto& [k, v] : m.items()) out += k + "=" + json_scalar(v) + " ";
  return out;
}

}  // namespace

StudyConfig parse_study_config(const std::string& text) {
  StudyConfig c;
  bool models_reset = false;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) {
      if (key == "models" || key == "model") {
        const nlohmann::json list = value.is_array() ? value : nlohmann::json::array({value});
        for (const auto& m : list) apply(c, "model", json_model(m), models_reset);
      } else if (key == "a" || key == "n" || key == "quantiles") {
        apply(c, key, json_list(value), models_reset);
      } else {
        apply(c, key, json_scalar(value), models_reset);
      }
    }
  } else {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
      }
      try {
        apply(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), models_reset);
      } catch (const std::exception& e) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  c.validate();
  return c;
}

StudyConfig load_study_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_study_config(text.str());
}

}  // namespace mrl
