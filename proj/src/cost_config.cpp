#include "tged/cost_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace tged {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view v, std::size_t line) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out) || out < 0.0)
    throw ConfigError(std::string(key) + " expects a finite non-negative number, got '" +
                          std::string(v) + "'",
                      line);
  return out;
}

std::size_t parse_count(std::string_view key, std::string_view v, std::size_t line) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError(std::string(key) + " expects a non-negative integer, got '" +
                          std::string(v) + "'",
                      line);
  return out;
}

[[noreturn]] void bad_choice(std::string_view key, std::string_view v, std::size_t line) {
  throw ConfigError("unknown value '" + std::string(v) + "' for " + std::string(key), line);
}

} // namespace

CostConfig parse_cost_config(std::string_view text) {
  CostConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.emplace(key).second)
      throw ConfigError("duplicate key " + std::string(key), line_no);

    if (key == "x_node") {
      cfg.cost.x_node = parse_real(key, value, line_no);
    } else if (key == "y_node") {
      cfg.cost.y_node = parse_real(key, value, line_no);
    } else if (key == "x_edge") {
      cfg.cost.x_edge = parse_real(key, value, line_no);
    } else if (key == "y_edge") {
      cfg.cost.y_edge = parse_real(key, value, line_no);
    } else if (key == "node_label_distance") {
      if (value == "euclidean") cfg.cost.node_distance = NodeDistance::EuclideanOrDiscrete;
      else if (value == "discrete") cfg.cost.node_distance = NodeDistance::Discrete;
      else bad_choice(key, value, line_no);
    } else if (key == "edge_label_distance") {
      if (value == "absolute") cfg.cost.edge_distance = EdgeDistance::Absolute;
      else if (value == "zero") cfg.cost.edge_distance = EdgeDistance::Zero;
      else bad_choice(key, value, line_no);
    } else if (key == "search") {
      if (value == "astar") cfg.search.kind = SearchSpec::Kind::AStar;
      else if (value == "beam") cfg.search.kind = SearchSpec::Kind::Beam;
      else bad_choice(key, value, line_no);
    } else if (key == "heuristic") {
      if (value == "zero") cfg.search.heuristic = Heuristic::Zero;
      else if (value == "count_bound") cfg.search.heuristic = Heuristic::CountBound;
      else bad_choice(key, value, line_no);
    } else if (key == "beam_width") {
      cfg.search.beam_width = parse_count(key, value, line_no);
      if (cfg.search.beam_width == 0)
        throw ConfigError("beam_width must be at least 1", line_no);
    } else if (key == "expansion_limit") {
      cfg.search.expansion_limit = parse_count(key, value, line_no);
    } else {
      throw ConfigError("unknown key " + std::string(key), line_no);
    }
  }
  return cfg;
}

CostConfig load_cost_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open cost config " + path.string(), 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cost_config(ss.str());
}

std::string format_cost_config(const CostConfig &cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "x_node = " << cfg.cost.x_node << '\n'
     << "y_node = " << cfg.cost.y_node << '\n'
     << "x_edge = " << cfg.cost.x_edge << '\n'
     << "y_edge = " << cfg.cost.y_edge << '\n'
     << "node_label_distance = "
     << (cfg.cost.node_distance == NodeDistance::Discrete ? "discrete" : "euclidean") << '\n'
     << "edge_label_distance = "
     << (cfg.cost.edge_distance == EdgeDistance::Zero ? "zero" : "absolute") << '\n'
     << "search = " << (cfg.search.kind == SearchSpec::Kind::Beam ? "beam" : "astar") << '\n'
     << "heuristic = "
     << (cfg.search.heuristic == Heuristic::CountBound ? "count_bound" : "zero") << '\n'
     << "beam_width = " << cfg.search.beam_width << '\n'
     << "expansion_limit = " << cfg.search.expansion_limit << '\n';
  return os.str();
}

} // namespace tged
