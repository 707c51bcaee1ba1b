#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tged/centrality.hpp"
#include "tged/graph.hpp"

namespace tged {

/// How a candidate rejected as a cut vertex counts against t.
enum class SlotPolicy {
  /// Skipped candidates cost nothing. Every step deletes the lowest-ranked
  /// node that is deletable in the current graph; stop after t deletions or
  /// when no node is deletable.
  Permissive,
  /// Each of the t iterations consumes the next candidate in ranking order,
  /// deleted or not.
  Strict,
};

struct ContractionOptions {
  bool recompute = false; // re-rank the remaining nodes after each deletion
  SlotPolicy slots = SlotPolicy::Permissive;
  CentralityOptions centrality{};
};

struct RemovedNode {
  NodeId id;
  double score = 0.0;
  friend bool operator==(const RemovedNode &, const RemovedNode &) = default;
};

struct ContractionReport {
  CentralityMeasure measure = CentralityMeasure::Degree;
  std::size_t t_requested = 0;
  std::vector<RemovedNode> removed;
  /// Nodes passed over as cut vertices and still present at the end, in the
  /// order they were first passed over.
  std::vector<NodeId> skipped_cut_vertices;
  /// Candidates kept because they were the last node of their component.
  std::vector<NodeId> skipped_isolated;
  std::size_t result_order = 0;

  friend bool operator==(const ContractionReport &, const ContractionReport &) = default;
};

struct Contraction {
  Graph graph;
  ContractionReport report;
};

/// Removes up to t nodes of lowest centrality, never a cut vertex of the
/// current graph and never the last node of a component. Ranking is by
/// (score, id). The input graph is not modified.
Contraction t_centrality_node_contraction(const Graph &g, std::size_t t,
                                          CentralityMeasure measure,
                                          const ContractionOptions &opts = {});

/// Deletes, in id order, every node whose degree in the input is k, unless it
/// is a cut vertex (or alone in its component) at the moment it is visited.
Contraction k_degree_node_contraction(const Graph &g, std::size_t k);

/// k_degree_node_contraction for i = 1..k, each pass on the previous result.
Contraction k_star_node_contraction(const Graph &g, std::size_t k);

/// Number of nodes k_star_node_contraction(g, k) would remove.
std::size_t t_star_value(const Graph &g, std::size_t k);

} // namespace tged
