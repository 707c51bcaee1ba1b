#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tged/contraction.hpp"
#include "tged/graph.hpp"

namespace tged {

enum class NodeDistance {
  /// Euclidean for Point2D labels, 0/1 for symbols.
  EuclideanOrDiscrete,
  /// 0 if the labels are equal, 1 otherwise, for every label kind.
  Discrete,
};

enum class EdgeDistance {
  /// |a - b| for numeric labels, 0 when both are unlabeled.
  Absolute,
  /// Edge substitution is always free.
  Zero,
};

struct CostModel {
  double x_node = 1.0; // node insertion / deletion
  double y_node = 1.0; // scale of node label distance
  double x_edge = 1.0; // edge insertion / deletion
  double y_edge = 1.0; // scale of edge label distance
  NodeDistance node_distance = NodeDistance::EuclideanOrDiscrete;
  EdgeDistance edge_distance = EdgeDistance::Absolute;

  /// Throws std::invalid_argument unless every constant is finite and >= 0.
  void validate() const;
  friend bool operator==(const CostModel &, const CostModel &) = default;
};

/// Labels of different kinds (point vs symbol, numeric vs unlabeled) are at
/// distance 1.
double node_label_distance(const CostModel &cm, const NodeLabel &a, const NodeLabel &b);
double edge_label_distance(const CostModel &cm, const EdgeLabel &a, const EdgeLabel &b);

using NodePair = std::pair<NodeId, NodeId>;

struct NodeSub { NodeId u, v; };
struct NodeDel { NodeId u; };
struct NodeIns { NodeId v; };
struct EdgeSub { NodePair e, f; };
struct EdgeDel { NodePair e; };
struct EdgeIns { NodePair f; };

using EditKind = std::variant<NodeSub, NodeDel, NodeIns, EdgeSub, EdgeDel, EdgeIns>;

struct EditOperation {
  EditKind kind;
  double cost = 0.0;
};

std::string to_string(const EditKind &op);

/// Cost of a single operation. Node operands refer to g1 (u, e) and g2
/// (v, f). Throws GraphError if an operand is absent.
double op_cost(const EditKind &op, const CostModel &cm, const Graph &g1, const Graph &g2);

struct EditPath {
  std::vector<EditOperation> operations;
  double total_cost = 0.0;
  bool complete = false;
};

enum class Heuristic {
  Zero,
  /// |r1 - r2| * x_node + |er1 - er2| * x_edge over unprocessed nodes/edges.
  CountBound,
};

struct SearchSpec {
  enum class Kind { AStar, Beam };
  Kind kind = Kind::AStar;
  std::size_t beam_width = 10;
  Heuristic heuristic = Heuristic::Zero;
  /// Abort with SearchLimitError after this many expansions; 0 = unlimited.
  std::size_t expansion_limit = 0;

  static SearchSpec astar(Heuristic h = Heuristic::Zero) { return {Kind::AStar, 10, h, 0}; }
  static SearchSpec beam(std::size_t w, Heuristic h = Heuristic::Zero) {
    return {Kind::Beam, w, h, 0};
  }
};

std::string to_string(const SearchSpec &s);

class SearchLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct GedResult {
  double cost = 0.0;
  EditPath path;
  std::size_t expanded_nodes = 0;
  std::chrono::nanoseconds elapsed{0};
  std::optional<std::pair<ContractionReport, ContractionReport>> contraction_reports;
};

/// Best-first tree search over node mappings. Nodes of g1 are processed in
/// ascending id order; each expansion maps the next node to every unused
/// node of g2 or deletes it. Edge operations are charged against earlier
/// processed nodes as the mapping grows. Once g1 is exhausted a single
/// child inserts the rest of g2. Open entries are ordered by
/// (f, depth descending, mapping lexicographic with deletion last).
GedResult astar_ged(const Graph &g1, const Graph &g2, const CostModel &cm,
                    Heuristic heuristic = Heuristic::Zero);

/// Same tree, open set cut to the w best entries after every expansion.
/// Returns an upper bound on the exact distance.
GedResult beam_ged(const Graph &g1, const Graph &g2, const CostModel &cm, std::size_t w,
                   Heuristic heuristic = Heuristic::Zero);

GedResult search_ged(const Graph &g1, const Graph &g2, const CostModel &cm,
                     const SearchSpec &spec);

/// Contracts t nodes of lowest centrality from each graph and searches the
/// contracted pair. Contracted nodes and their edges cost nothing.
GedResult t_centrality_ged(const Graph &g1, const Graph &g2, std::size_t t,
                           CentralityMeasure measure, const CostModel &cm,
                           const SearchSpec &spec, const ContractionOptions &opts = {});

/// Per-graph t (t1 for g1, t2 for g2).
GedResult t_centrality_ged(const Graph &g1, const Graph &g2, std::size_t t1, std::size_t t2,
                           CentralityMeasure measure, const CostModel &cm,
                           const SearchSpec &spec, const ContractionOptions &opts = {});

inline constexpr std::size_t kBruteForceMaxNodes = 9;

/// Exhaustive minimum over every injective partial mapping g1 -> g2.
/// Throws std::invalid_argument when |V1| + |V2| > kBruteForceMaxNodes.
double brute_force_ged(const Graph &g1, const Graph &g2, const CostModel &cm);

} // namespace tged
