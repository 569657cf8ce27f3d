#ifndef MRL_DATA_IO_HPP_
#define MRL_DATA_IO_HPP_

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace mrl {

// Observations from plain text (one number per line) or, when `column` is
// set, from CSV with a header row naming that column. Blank lines and lines
// starting with '#' are skipped; surrounding whitespace is ignored.
// Throws DataError naming the line for unparsable fields and for empty input.
std::vector<double> read_observations(std::istream& in,
                                      const std::optional<std::string>& column = std::nullopt);
std::vector<double> read_observations_file(const std::string& path,
                                           const std::optional<std::string>& column = std::nullopt);

}  // namespace mrl

#endif  // MRL_DATA_IO_HPP_
