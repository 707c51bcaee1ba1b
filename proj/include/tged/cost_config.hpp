#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tged/ged.hpp"

namespace tged {

/// Cost model plus search settings, read from a key = value file:
///
///   # comment
///   x_node = 1.0
///   y_node = 1.0
///   x_edge = 1.0
///   y_edge = 1.0
///   node_label_distance = euclidean | discrete
///   edge_label_distance = absolute | zero
///   search = astar | beam
///   heuristic = zero | count_bound
///   beam_width = 10
///   expansion_limit = 0
///
/// Unknown keys, duplicate keys and malformed values are errors. Missing
/// keys keep their defaults.
struct CostConfig {
  CostModel cost{};
  SearchSpec search = SearchSpec::astar();
};

class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string &what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

CostConfig parse_cost_config(std::string_view text);
CostConfig load_cost_config(const std::filesystem::path &path);
std::string format_cost_config(const CostConfig &cfg);

} // namespace tged
