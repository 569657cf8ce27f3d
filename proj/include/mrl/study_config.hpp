#ifndef MRL_STUDY_CONFIG_HPP_
#define MRL_STUDY_CONFIG_HPP_

#include <string>

#include "mrl/mc.hpp"

namespace mrl {

// Reads a study description. JSON objects (text starting with '{') use the
// keys below directly; otherwise one `key = value` per line, '#' comments,
// comma-separated lists, and one `model = family=... theta=...` line per model.
//
//   study      power | coverage | limit | null
//   a, n       lists
//   model(s)   model strings
//   reps, alpha, seed, workers, null_reps, quantiles, critical (pearson|empirical)
//
// Throws std::invalid_argument with the offending line number.
StudyConfig parse_study_config(const std::string& text);
StudyConfig load_study_config(const std::string& path);

}  // namespace mrl

#endif  // MRL_STUDY_CONFIG_HPP_
