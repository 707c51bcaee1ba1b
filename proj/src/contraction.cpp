#include "tged/contraction.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

namespace tged {

namespace {

enum class Verdict { Deletable, CutVertex, Isolated };

Verdict classify(const Graph &current, NodeId u) {
  if (current.degree(u) == 0)
    return Verdict::Isolated;
  if (is_cut_vertex(current, u))
    return Verdict::CutVertex;
  return Verdict::Deletable;
}

} // namespace

Contraction t_centrality_node_contraction(const Graph &g, std::size_t t,
                                          CentralityMeasure measure,
                                          const ContractionOptions &opts) {
  Contraction out{g, {}};
  auto &rep = out.report;
  rep.measure = measure;
  rep.t_requested = t;
  if (t == 0 || g.empty()) {
    rep.result_order = g.order();
    return out;
  }

  Graph &current = out.graph;
  CentralityScores scores = compute_centrality(current, measure, opts.centrality);
  std::vector<NodeId> ranking = rank_ascending(scores);
  std::vector<NodeId> passed_cut; // first-pass order
  std::unordered_set<NodeId> seen_cut, seen_isolated;

  auto note_skip = [&](NodeId u, Verdict v) {
    if (v == Verdict::Isolated) {
      if (seen_isolated.insert(u).second)
        rep.skipped_isolated.push_back(u);
    } else if (seen_cut.insert(u).second) {
      passed_cut.push_back(u);
    }
  };

  if (opts.slots == SlotPolicy::Strict) {
    // One candidate per slot, walking the ranking once.
    for (std::size_t i = 0; i < t && i < ranking.size(); ++i) {
      const NodeId u = ranking[i];
      if (const Verdict v = classify(current, u); v != Verdict::Deletable) {
        note_skip(u, v);
        continue;
      }
      rep.removed.push_back({u, scores.at(u)});
      current.delete_node(u);
    }
  } else {
    // Each step deletes the lowest-ranked node that is deletable right now,
    // so a cut vertex passed over earlier is reconsidered once the nodes
    // hanging off it are gone.
    while (rep.removed.size() < t && !current.empty()) {
      const std::vector<bool> cut = articulation_points(current);
      std::optional<NodeId> pick;
      for (NodeId u : ranking) {
        if (!current.has_node(u))
          continue;
        const Verdict v = current.degree(u) == 0 ? Verdict::Isolated
                          : cut[u.value]         ? Verdict::CutVertex
                                                 : Verdict::Deletable;
        if (v == Verdict::Deletable) {
          pick = u;
          break;
        }
        note_skip(u, v);
      }
      if (!pick)
        break;
      rep.removed.push_back({*pick, scores.at(*pick)});
      current.delete_node(*pick);
      if (opts.recompute && !current.empty()) {
        scores = compute_centrality(current, measure, opts.centrality);
        ranking = rank_ascending(scores);
      }
    }
  }

  for (NodeId u : passed_cut)
    if (current.has_node(u))
      rep.skipped_cut_vertices.push_back(u);
  rep.result_order = current.order();
  return out;
}

Contraction k_degree_node_contraction(const Graph &g, std::size_t k) {
  Contraction out{g, {}};
  auto &rep = out.report;
  rep.measure = CentralityMeasure::Degree;
  Graph &current = out.graph;

  std::vector<NodeId> candidates;
  for (NodeId u : g.nodes())
    if (g.degree(u) == k)
      candidates.push_back(u);
  rep.t_requested = candidates.size();

  for (NodeId u : candidates) {
    switch (classify(current, u)) {
    case Verdict::CutVertex:
      rep.skipped_cut_vertices.push_back(u);
      break;
    case Verdict::Isolated:
      rep.skipped_isolated.push_back(u);
      break;
    case Verdict::Deletable:
      rep.removed.push_back({u, static_cast<double>(k)});
      current.delete_node(u);
      break;
    }
  }
  rep.result_order = current.order();
  return out;
}

Contraction k_star_node_contraction(const Graph &g, std::size_t k) {
  Contraction out{g, {}};
  out.report.measure = CentralityMeasure::Degree;
  for (std::size_t i = 1; i <= k; ++i) {
    Contraction pass = k_degree_node_contraction(out.graph, i);
    auto &rep = out.report;
    rep.t_requested += pass.report.t_requested;
    rep.removed.insert(rep.removed.end(), pass.report.removed.begin(),
                       pass.report.removed.end());
    rep.skipped_cut_vertices.insert(rep.skipped_cut_vertices.end(),
                                    pass.report.skipped_cut_vertices.begin(),
                                    pass.report.skipped_cut_vertices.end());
    rep.skipped_isolated.insert(rep.skipped_isolated.end(),
                                pass.report.skipped_isolated.begin(),
                                pass.report.skipped_isolated.end());
    out.graph = std::move(pass.graph);
  }
  out.report.result_order = out.graph.order();
  return out;
}

std::size_t t_star_value(const Graph &g, std::size_t k) {
  return k_star_node_contraction(g, k).report.removed.size();
}

} // namespace tged
