#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tged/graph.hpp"

namespace tged {

enum class CentralityMeasure { Degree, Betweenness, Eigenvector, PageRank };

inline constexpr CentralityMeasure kAllMeasures[] = {
    CentralityMeasure::Degree, CentralityMeasure::Betweenness,
    CentralityMeasure::Eigenvector, CentralityMeasure::PageRank};

std::string_view to_string(CentralityMeasure m);
/// Accepts "degree", "betweenness", "eigenvector", "pagerank" (case-insensitive).
std::optional<CentralityMeasure> parse_measure(std::string_view s);

/// Per-node scores for one measure. `ids` is ascending and `values` is
/// aligned with it.
struct CentralityScores {
  CentralityMeasure measure = CentralityMeasure::Degree;
  std::vector<NodeId> ids;
  std::vector<double> values;
  int iterations_used = 0;
  double residual = 0.0;

  double at(NodeId u) const;
  std::size_t size() const noexcept { return ids.size(); }
};

struct EigenvectorConfig {
  double tol = 1e-8;
  int max_iter = 1000;
};

/// x_i = alpha * sum_j A_ij x_j / k_j + gamma, with k_j the degree of j.
/// An unset gamma means (1 - alpha) / n.
struct PageRankConfig {
  double alpha = 0.85;
  std::optional<double> gamma;
  double tol = 1e-10;
  int max_iter = 1000;
};

class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string &what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

private:
  int iterations_;
  double residual_;
};

CentralityScores degree_centrality(const Graph &g);

/// Brandes accumulation over unweighted single-source shortest paths,
/// unordered pairs counted once. Sources are processed in parallel with
/// OpenMP; per-source dependencies are reduced in source order, so the
/// result is bit-identical to betweenness_centrality_serial().
CentralityScores betweenness_centrality(const Graph &g, int workers = 0);
CentralityScores betweenness_centrality_serial(const Graph &g);

/// Power iteration on (A + I), one connected component at a time, each
/// component's sub-vector normalized to unit length. Components without
/// edges get score 1. Throws ConvergenceError if any component's residual
/// ||Ax - k1 x||_inf stays above cfg.tol after cfg.max_iter steps.
CentralityScores eigenvector_centrality(const Graph &g,
                                        const EigenvectorConfig &cfg = {});

/// Jacobi iteration of the fixed-point equation. Isolated nodes pass no
/// mass to anyone and receive exactly gamma. Throws ConvergenceError on
/// non-convergence or std::invalid_argument on a bad config.
CentralityScores pagerank_centrality(const Graph &g, const PageRankConfig &cfg = {});

struct CentralityOptions {
  EigenvectorConfig eigenvector{1e-8, 100000};
  PageRankConfig pagerank{};
  int workers = 1;
};

CentralityScores compute_centrality(const Graph &g, CentralityMeasure m,
                                    const CentralityOptions &opts = {});

/// Node ids sorted by (score ascending, id ascending).
std::vector<NodeId> rank_ascending(const CentralityScores &s);

} // namespace tged
