#pragma once

// Independent reference computations used only by tests. None of these call
// into the library code paths they check.

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

#include "tged/graph.hpp"

namespace tged::testing {

/// Betweenness by enumerating every simple s-t path and keeping the
/// shortest ones. Exponential; fine for <= 8 nodes.
inline std::map<NodeId, double> betweenness_by_path_enumeration(const Graph &g) {
  const std::vector<NodeId> nodes = g.nodes();
  std::map<NodeId, double> score;
  for (NodeId u : nodes)
    score[u] = 0.0;

  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      const NodeId s = nodes[a], t = nodes[b];
      std::vector<std::vector<NodeId>> shortest;
      std::size_t best = std::numeric_limits<std::size_t>::max();
      std::vector<NodeId> trail{s};
      std::map<NodeId, bool> on_trail{{s, true}};
      auto dfs = [&](auto &&self, NodeId at) -> void {
        if (trail.size() - 1 > best)
          return;
        if (at == t) {
          const std::size_t len = trail.size() - 1;
          if (len < best) {
            best = len;
            shortest.clear();
          }
          shortest.push_back(trail);
          return;
        }
        for (NodeId w : g.neighbors(at)) {
          if (on_trail[w])
            continue;
          on_trail[w] = true;
          trail.push_back(w);
          self(self, w);
          trail.pop_back();
          on_trail[w] = false;
        }
      };
      dfs(dfs, s);
      if (shortest.empty())
        continue;
      const double total = static_cast<double>(shortest.size());
      for (const auto &p : shortest)
        for (std::size_t i = 1; i + 1 < p.size(); ++i)
          score[p[i]] += 1.0 / total;
    }
  }
  return score;
}

inline Eigen::MatrixXd adjacency_matrix(const Graph &g, const std::vector<NodeId> &nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (g.has_edge(nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]))
        a(i, j) = 1.0;
  return a;
}

/// x = (I - alpha A D^-1)^-1 gamma 1, isolated columns left at zero.
inline std::map<NodeId, double> pagerank_by_linear_solve(const Graph &g, double alpha,
                                                         double gamma) {
  const std::vector<NodeId> nodes = g.nodes();
  Eigen::MatrixXd a = adjacency_matrix(g, nodes);
  const auto n = a.rows();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double deg = a.col(j).sum();
    if (deg > 0)
      m.col(j) -= alpha * a.col(j) / deg;
  }
  const Eigen::VectorXd x = m.fullPivLu().solve(Eigen::VectorXd::Constant(n, gamma));
  std::map<NodeId, double> out;
  for (Eigen::Index i = 0; i < n; ++i)
    out[nodes[static_cast<std::size_t>(i)]] = x(i);
  return out;
}

/// Nonnegative unit principal eigenvector of the adjacency matrix of a
/// connected graph, by dense symmetric eigendecomposition.
inline std::map<NodeId, double> principal_eigenvector(const Graph &g) {
  const std::vector<NodeId> nodes = g.nodes();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_matrix(g, nodes));
  Eigen::VectorXd v = es.eigenvectors().col(es.eigenvalues().size() - 1);
  if (v.sum() < 0)
    v = -v;
  std::map<NodeId, double> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out[nodes[i]] = v(static_cast<Eigen::Index>(i));
  return out;
}

} // namespace tged::testing
