#include "tged/centrality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tged {

std::string_view to_string(CentralityMeasure m) {
  switch (m) {
  case CentralityMeasure::Degree: return "degree";
  case CentralityMeasure::Betweenness: return "betweenness";
  case CentralityMeasure::Eigenvector: return "eigenvector";
  case CentralityMeasure::PageRank: return "pagerank";
  }
  return "?";
}

std::optional<CentralityMeasure> parse_measure(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (CentralityMeasure m : kAllMeasures)
    if (lower == to_string(m))
      return m;
  if (lower == "dc") return CentralityMeasure::Degree;
  if (lower == "bc") return CentralityMeasure::Betweenness;
  if (lower == "ev") return CentralityMeasure::Eigenvector;
  if (lower == "pr") return CentralityMeasure::PageRank;
  return std::nullopt;
}

double CentralityScores::at(NodeId u) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), u);
  if (it == ids.end() || *it != u)
    throw std::out_of_range("no centrality score for node " + std::to_string(u.value));
  return values[static_cast<std::size_t>(it - ids.begin())];
}

namespace {

/// Compact CSR view over the live nodes, local index i <-> ids[i].
struct Csr {
  std::vector<NodeId> ids;
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> targets;

  explicit Csr(const Graph &g) : ids(g.nodes()) {
    std::vector<std::uint32_t> local(g.id_bound(), 0);
    for (std::uint32_t i = 0; i < ids.size(); ++i)
      local[ids[i].value] = i;
    offsets.reserve(ids.size() + 1);
    offsets.push_back(0);
    for (NodeId u : ids) {
      for (NodeId w : g.neighbors(u))
        targets.push_back(local[w.value]);
      offsets.push_back(targets.size());
    }
  }

  std::size_t n() const noexcept { return ids.size(); }
  std::size_t degree(std::size_t i) const noexcept { return offsets[i + 1] - offsets[i]; }
};

/// Brandes dependency of every node on source s, written into delta.
/// Scratch buffers are reused across calls.
struct BrandesScratch {
  std::vector<std::uint32_t> order, queue;
  std::vector<std::int64_t> dist;
  std::vector<double> sigma;

  explicit BrandesScratch(std::size_t n) : dist(n), sigma(n) {
    order.reserve(n);
    queue.reserve(n);
  }
};

void single_source_dependency(const Csr &csr, std::uint32_t s, BrandesScratch &sc,
                              std::span<double> delta) {
  std::fill(sc.dist.begin(), sc.dist.end(), -1);
  std::fill(sc.sigma.begin(), sc.sigma.end(), 0.0);
  std::fill(delta.begin(), delta.end(), 0.0);
  sc.order.clear();
  sc.queue.clear();

  sc.dist[s] = 0;
  sc.sigma[s] = 1.0;
  sc.queue.push_back(s);
  for (std::size_t head = 0; head < sc.queue.size(); ++head) {
    const std::uint32_t v = sc.queue[head];
    sc.order.push_back(v);
    for (std::size_t e = csr.offsets[v]; e < csr.offsets[v + 1]; ++e) {
      const std::uint32_t w = csr.targets[e];
      if (sc.dist[w] < 0) {
        sc.dist[w] = sc.dist[v] + 1;
        sc.queue.push_back(w);
      }
      if (sc.dist[w] == sc.dist[v] + 1)
        sc.sigma[w] += sc.sigma[v];
    }
  }
  // Predecessors of w are exactly its neighbours one level closer to s.
  for (auto it = sc.order.rbegin(); it != sc.order.rend(); ++it) {
    const std::uint32_t w = *it;
    for (std::size_t e = csr.offsets[w]; e < csr.offsets[w + 1]; ++e) {
      const std::uint32_t v = csr.targets[e];
      if (sc.dist[v] == sc.dist[w] - 1)
        delta[v] += sc.sigma[v] / sc.sigma[w] * (1.0 + delta[w]);
    }
  }
  delta[s] = 0.0;
}

CentralityScores finish_betweenness(const Csr &csr, std::vector<double> acc) {
  CentralityScores out;
  out.measure = CentralityMeasure::Betweenness;
  out.ids = csr.ids;
  for (double &x : acc)
    x /= 2.0;
  out.values = std::move(acc);
  return out;
}

} // namespace

CentralityScores degree_centrality(const Graph &g) {
  CentralityScores out;
  out.measure = CentralityMeasure::Degree;
  out.ids = g.nodes();
  out.values.reserve(out.ids.size());
  for (NodeId u : out.ids)
    out.values.push_back(static_cast<double>(g.degree(u)));
  return out;
}

CentralityScores betweenness_centrality_serial(const Graph &g) {
  const Csr csr(g);
  const std::size_t n = csr.n();
  std::vector<double> acc(n, 0.0), delta(n, 0.0);
  BrandesScratch sc(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    single_source_dependency(csr, s, sc, delta);
    for (std::size_t w = 0; w < n; ++w)
      acc[w] += delta[w];
  }
  return finish_betweenness(csr, std::move(acc));
}

CentralityScores betweenness_centrality(const Graph &g, int workers) {
  const Csr csr(g);
  const std::size_t n = csr.n();
  std::vector<double> acc(n, 0.0);
  if (n == 0)
    return finish_betweenness(csr, std::move(acc));

  // Rows of per-source dependencies are filled in parallel, then folded into
  // acc in source order so the floating-point sum matches the serial loop.
  const std::size_t chunk = std::clamp<std::size_t>((std::size_t{1} << 22) / n, 1, n);
  std::vector<double> rows(chunk * n);
#ifdef _OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
#endif
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t end = std::min(n, begin + chunk);
#pragma omp parallel num_threads(threads)
    {
      BrandesScratch sc(n);
#pragma omp for schedule(dynamic, 4)
      for (std::int64_t s = static_cast<std::int64_t>(begin); s < static_cast<std::int64_t>(end); ++s) {
        std::span<double> row(rows.data() + (static_cast<std::size_t>(s) - begin) * n, n);
        single_source_dependency(csr, static_cast<std::uint32_t>(s), sc, row);
      }
    }
    for (std::size_t s = begin; s < end; ++s) {
      const double *row = rows.data() + (s - begin) * n;
      for (std::size_t w = 0; w < n; ++w)
        acc[w] += row[w];
    }
  }
  return finish_betweenness(csr, std::move(acc));
}

CentralityScores eigenvector_centrality(const Graph &g, const EigenvectorConfig &cfg) {
  if (!(cfg.tol > 0.0) || cfg.max_iter <= 0)
    throw std::invalid_argument("eigenvector config needs tol > 0 and max_iter > 0");
  const Csr csr(g);
  const std::size_t n = csr.n();
  std::vector<std::uint32_t> local(g.id_bound(), 0);
  for (std::uint32_t i = 0; i < n; ++i)
    local[csr.ids[i].value] = i;

  CentralityScores out;
  out.measure = CentralityMeasure::Eigenvector;
  out.ids = csr.ids;
  out.values.assign(n, 0.0);

  for (const auto &block : connected_components(g)) {
    const std::size_t m = block.size();
    std::vector<std::uint32_t> members;
    members.reserve(m);
    for (NodeId u : block)
      members.push_back(local[u.value]);
    if (m == 1) {
      out.values[members[0]] = 1.0;
      continue;
    }

    // Index within the component for each member.
    std::vector<std::uint32_t> pos(n, 0);
    for (std::uint32_t i = 0; i < m; ++i)
      pos[members[i]] = i;

    std::vector<double> x(m, 1.0 / std::sqrt(static_cast<double>(m))), y(m);
    double residual = std::numeric_limits<double>::infinity();
    int iter = 0;
    for (;; ++iter) {
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint32_t v = members[i];
        double sum = 0.0;
        for (std::size_t e = csr.offsets[v]; e < csr.offsets[v + 1]; ++e)
          sum += x[pos[csr.targets[e]]];
        y[i] = sum;
      }
      double kappa = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        kappa += x[i] * y[i];
      residual = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        residual = std::max(residual, std::abs(y[i] - kappa * x[i]));
      if (residual <= cfg.tol)
        break;
      if (iter >= cfg.max_iter)
        throw ConvergenceError("eigenvector centrality did not converge", iter, residual);
      // Shift by the identity so bipartite components do not oscillate.
      double norm = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        y[i] += x[i];
        norm += y[i] * y[i];
      }
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < m; ++i)
        x[i] = y[i] / norm;
    }
    for (std::size_t i = 0; i < m; ++i)
      out.values[members[i]] = x[i];
    out.iterations_used = std::max(out.iterations_used, iter);
    out.residual = std::max(out.residual, residual);
  }
  return out;
}

CentralityScores pagerank_centrality(const Graph &g, const PageRankConfig &cfg) {
  const Csr csr(g);
  const std::size_t n = csr.n();
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw std::invalid_argument("pagerank alpha must lie in (0, 1)");
  if (!(cfg.tol > 0.0) || cfg.max_iter <= 0)
    throw std::invalid_argument("pagerank config needs tol > 0 and max_iter > 0");
  CentralityScores out;
  out.measure = CentralityMeasure::PageRank;
  out.ids = csr.ids;
  if (n == 0)
    return out;
  const double gamma = cfg.gamma.value_or((1.0 - cfg.alpha) / static_cast<double>(n));
  if (!(gamma > 0.0))
    throw std::invalid_argument("pagerank gamma must be positive");

  std::vector<double> x(n, gamma), next(n);
  std::vector<double> inv_degree(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (csr.degree(i) > 0)
      inv_degree[i] = 1.0 / static_cast<double>(csr.degree(i));

  int iter = 0;
  double residual = 0.0;
  for (;; ++iter) {
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t e = csr.offsets[i]; e < csr.offsets[i + 1]; ++e) {
        const std::uint32_t j = csr.targets[e];
        sum += x[j] * inv_degree[j];
      }
      next[i] = cfg.alpha * sum + gamma;
      residual = std::max(residual, std::abs(next[i] - x[i]));
    }
    if (residual <= cfg.tol)
      break;
    if (iter >= cfg.max_iter)
      throw ConvergenceError("pagerank did not converge", iter, residual);
    x.swap(next);
  }
  out.values = std::move(x);
  out.iterations_used = iter;
  out.residual = residual;
  return out;
}

CentralityScores compute_centrality(const Graph &g, CentralityMeasure m,
                                    const CentralityOptions &opts) {
  switch (m) {
  case CentralityMeasure::Degree: return degree_centrality(g);
  case CentralityMeasure::Betweenness:
    return opts.workers == 1 ? betweenness_centrality_serial(g)
                             : betweenness_centrality(g, opts.workers);
  case CentralityMeasure::Eigenvector: return eigenvector_centrality(g, opts.eigenvector);
  case CentralityMeasure::PageRank: return pagerank_centrality(g, opts.pagerank);
  }
  throw std::invalid_argument("unknown centrality measure");
}

std::vector<NodeId> rank_ascending(const CentralityScores &s) {
  std::vector<std::size_t> idx(s.ids.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (s.values[a] != s.values[b])
      return s.values[a] < s.values[b];
    return s.ids[a] < s.ids[b];
  });
  std::vector<NodeId> out;
  out.reserve(idx.size());
  for (std::size_t i : idx)
    out.push_back(s.ids[i]);
  return out;
}

} // namespace tged
