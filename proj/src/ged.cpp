#include "tged/ged.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace tged {

void CostModel::validate() const {
  for (double c : {x_node, y_node, x_edge, y_edge})
    if (!std::isfinite(c) || c < 0.0)
      throw std::invalid_argument("cost constants must be finite and non-negative");
}

double node_label_distance(const CostModel &cm, const NodeLabel &a, const NodeLabel &b) {
  if (a.index() != b.index())
    return 1.0;
  if (cm.node_distance == NodeDistance::EuclideanOrDiscrete) {
    if (const auto *pa = std::get_if<Point2D>(&a)) {
      const auto &pb = std::get<Point2D>(b);
      return std::hypot(pa->x - pb.x, pa->y - pb.y);
    }
  }
  return a == b ? 0.0 : 1.0;
}

double edge_label_distance(const CostModel &cm, const EdgeLabel &a, const EdgeLabel &b) {
  if (cm.edge_distance == EdgeDistance::Zero)
    return 0.0;
  if (a.index() != b.index())
    return 1.0;
  if (const auto *na = std::get_if<Numeric>(&a))
    return std::abs(na->value - std::get<Numeric>(b).value);
  return 0.0;
}

namespace {

std::string pair_str(const NodePair &p) {
  return "{" + std::to_string(p.first.value) + "," + std::to_string(p.second.value) + "}";
}

void require_node(const Graph &g, NodeId u) {
  if (!g.has_node(u))
    throw GraphError(GraphError::Kind::MissingNode,
                     "edit operand node " + std::to_string(u.value) + " is not present");
}

void require_edge(const Graph &g, const NodePair &e) {
  if (!g.has_edge(e.first, e.second))
    throw GraphError(GraphError::Kind::MissingNode,
                     "edit operand edge " + pair_str(e) + " is not present");
}

} // namespace

std::string to_string(const EditKind &op) {
  return std::visit(
      [](const auto &o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, NodeSub>)
          return std::to_string(o.u.value) + "->" + std::to_string(o.v.value);
        else if constexpr (std::is_same_v<T, NodeDel>)
          return std::to_string(o.u.value) + "->eps";
        else if constexpr (std::is_same_v<T, NodeIns>)
          return "eps->" + std::to_string(o.v.value);
        else if constexpr (std::is_same_v<T, EdgeSub>)
          return pair_str(o.e) + "->" + pair_str(o.f);
        else if constexpr (std::is_same_v<T, EdgeDel>)
          return pair_str(o.e) + "->eps";
        else
          return "eps->" + pair_str(o.f);
      },
      op);
}

double op_cost(const EditKind &op, const CostModel &cm, const Graph &g1, const Graph &g2) {
  return std::visit(
      [&](const auto &o) -> double {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, NodeSub>) {
          require_node(g1, o.u);
          require_node(g2, o.v);
          return cm.y_node * node_label_distance(cm, g1.label(o.u), g2.label(o.v));
        } else if constexpr (std::is_same_v<T, NodeDel>) {
          require_node(g1, o.u);
          return cm.x_node;
        } else if constexpr (std::is_same_v<T, NodeIns>) {
          require_node(g2, o.v);
          return cm.x_node;
        } else if constexpr (std::is_same_v<T, EdgeSub>) {
          require_edge(g1, o.e);
          require_edge(g2, o.f);
          return cm.y_edge * edge_label_distance(cm, g1.edge_label(o.e.first, o.e.second),
                                                 g2.edge_label(o.f.first, o.f.second));
        } else if constexpr (std::is_same_v<T, EdgeDel>) {
          require_edge(g1, o.e);
          return cm.x_edge;
        } else {
          require_edge(g2, o.f);
          return cm.x_edge;
        }
      },
      op);
}

std::string to_string(const SearchSpec &s) {
  std::string out = s.kind == SearchSpec::Kind::AStar ? "astar" : "beam";
  if (s.kind == SearchSpec::Kind::Beam)
    out += "(" + std::to_string(s.beam_width) + ")";
  if (s.heuristic == Heuristic::CountBound)
    out += "+countbound";
  return out;
}

namespace {

constexpr std::int16_t kEps = -1;

/// Dense copy of a graph: local index i <-> ids[i], adjacency as an n*n
/// matrix of edge indices (-1 when absent).
struct DenseGraph {
  std::vector<NodeId> ids;
  std::vector<std::int32_t> adj;
  std::vector<std::pair<std::uint16_t, std::uint16_t>> edges;
  std::size_t n = 0;

  explicit DenseGraph(const Graph &g) : ids(g.nodes()), n(ids.size()) {
    if (n > std::numeric_limits<std::int16_t>::max())
      throw std::invalid_argument("graph too large for edit-distance search");
    adj.assign(n * n, -1);
    std::vector<std::uint32_t> local(g.id_bound(), 0);
    for (std::uint32_t i = 0; i < n; ++i)
      local[ids[i].value] = i;
    for (const Edge &e : g.edges()) {
      const auto a = static_cast<std::uint16_t>(local[e.u.value]);
      const auto b = static_cast<std::uint16_t>(local[e.v.value]);
      const auto idx = static_cast<std::int32_t>(edges.size());
      edges.emplace_back(a, b);
      adj[a * n + b] = adj[b * n + a] = idx;
    }
  }

  std::int32_t edge(std::size_t a, std::size_t b) const { return adj[a * n + b]; }
  NodePair pair(std::size_t a, std::size_t b) const {
    NodeId x = ids[a], y = ids[b];
    return x < y ? NodePair{x, y} : NodePair{y, x};
  }
};

struct SearchContext {
  const Graph &g1;
  const Graph &g2;
  const CostModel &cm;
  DenseGraph d1, d2;
  std::vector<double> node_sub;  // n1 * n2
  std::vector<double> edge_sub;  // |E1| * |E2|
  std::vector<std::size_t> er1;  // edges of g1 with both ends at index >= depth
  Heuristic heuristic;

  SearchContext(const Graph &a, const Graph &b, const CostModel &model, Heuristic h)
      : g1(a), g2(b), cm(model), d1(a), d2(b), heuristic(h) {
    cm.validate();
    node_sub.resize(d1.n * d2.n);
    for (std::size_t i = 0; i < d1.n; ++i)
      for (std::size_t j = 0; j < d2.n; ++j)
        node_sub[i * d2.n + j] =
            cm.y_node * node_label_distance(cm, g1.label(d1.ids[i]), g2.label(d2.ids[j]));
    const std::size_t m2 = d2.edges.size();
    edge_sub.resize(d1.edges.size() * m2);
    for (std::size_t e = 0; e < d1.edges.size(); ++e) {
      const auto [a1, b1] = d1.edges[e];
      const EdgeLabel &l1 = g1.edge_label(d1.ids[a1], d1.ids[b1]);
      for (std::size_t f = 0; f < m2; ++f) {
        const auto [a2, b2] = d2.edges[f];
        edge_sub[e * m2 + f] =
            cm.y_edge * edge_label_distance(cm, l1, g2.edge_label(d2.ids[a2], d2.ids[b2]));
      }
    }
    er1.assign(d1.n + 1, 0);
    for (const auto &[a, b] : d1.edges) {
      const std::size_t lo = std::min(a, b);
      for (std::size_t depth = 0; depth <= lo; ++depth)
        ++er1[depth];
    }
  }

  /// Charges mapping the node at index `depth` of g1 to `target` (or kEps),
  /// adding each operation's cost to g in order and reporting it to emit.
  template <typename Emit>
  double extend(const std::vector<std::int16_t> &map, std::int16_t target, double g,
                Emit &&emit) const {
    const std::size_t k = map.size();
    if (target == kEps) {
      g += cm.x_node;
      emit(NodeDel{d1.ids[k]}, cm.x_node);
    } else {
      const double c = node_sub[k * d2.n + static_cast<std::size_t>(target)];
      g += c;
      emit(NodeSub{d1.ids[k], d2.ids[static_cast<std::size_t>(target)]}, c);
    }
    for (std::size_t j = 0; j < k; ++j) {
      const std::int32_t e1 = d1.edge(k, j);
      const std::int16_t tj = map[j];
      std::int32_t e2 = -1;
      if (target != kEps && tj != kEps)
        e2 = d2.edge(static_cast<std::size_t>(target), static_cast<std::size_t>(tj));
      if (e1 >= 0 && e2 >= 0) {
        const double c = edge_sub[static_cast<std::size_t>(e1) * d2.edges.size() +
                                  static_cast<std::size_t>(e2)];
        g += c;
        emit(EdgeSub{d1.pair(k, j), d2.pair(static_cast<std::size_t>(target),
                                            static_cast<std::size_t>(tj))},
             c);
      } else if (e1 >= 0) {
        g += cm.x_edge;
        emit(EdgeDel{d1.pair(k, j)}, cm.x_edge);
      } else if (e2 >= 0) {
        g += cm.x_edge;
        emit(EdgeIns{d2.pair(static_cast<std::size_t>(target), static_cast<std::size_t>(tj))},
             cm.x_edge);
      }
    }
    return g;
  }

  /// Inserts every unused node of g2 and every edge touching one of them.
  template <typename Emit>
  double complete(const std::vector<bool> &used, double g, Emit &&emit) const {
    for (std::size_t v = 0; v < d2.n; ++v) {
      if (!used[v]) {
        g += cm.x_node;
        emit(NodeIns{d2.ids[v]}, cm.x_node);
      }
    }
    for (const auto &[a, b] : d2.edges) {
      if (!used[a] || !used[b]) {
        g += cm.x_edge;
        emit(EdgeIns{d2.pair(a, b)}, cm.x_edge);
      }
    }
    return g;
  }

  std::vector<bool> used_targets(const std::vector<std::int16_t> &map) const {
    std::vector<bool> used(d2.n, false);
    for (std::int16_t t : map)
      if (t != kEps)
        used[static_cast<std::size_t>(t)] = true;
    return used;
  }

  double estimate(std::size_t depth, const std::vector<bool> &used) const {
    if (heuristic == Heuristic::Zero)
      return 0.0;
    const auto r1 = static_cast<double>(d1.n - depth);
    const auto r2 = static_cast<double>(std::count(used.begin(), used.end(), false));
    std::size_t er2 = 0;
    for (const auto &[a, b] : d2.edges)
      if (!used[a] && !used[b])
        ++er2;
    const auto e1 = static_cast<double>(er1[depth]);
    const auto e2 = static_cast<double>(er2);
    return std::abs(r1 - r2) * cm.x_node + std::abs(e1 - e2) * cm.x_edge;
  }
};

struct State {
  double g = 0.0;
  double f = 0.0;
  bool complete = false;
  std::vector<std::int16_t> map;
};

/// Strict "a is better than b".
bool better(const State &a, const State &b) {
  if (a.f != b.f)
    return a.f < b.f;
  if (a.map.size() != b.map.size())
    return a.map.size() > b.map.size();
  if (a.complete != b.complete)
    return a.complete;
  // Deletion sorts after every substitution.
  auto key = [](std::int16_t t) {
    return t == kEps ? std::numeric_limits<std::int32_t>::max() : std::int32_t{t};
  };
  return std::lexicographical_compare(a.map.begin(), a.map.end(), b.map.begin(), b.map.end(),
                                      [&](std::int16_t x, std::int16_t y) {
                                        return key(x) < key(y);
                                      });
}

struct Worse {
  bool operator()(const State &a, const State &b) const { return better(b, a); }
};

EditPath reconstruct(const SearchContext &ctx, const std::vector<std::int16_t> &map) {
  EditPath path;
  auto emit = [&](EditKind op, double c) { path.operations.push_back({std::move(op), c}); };
  double g = 0.0;
  std::vector<std::int16_t> prefix;
  prefix.reserve(map.size());
  for (std::int16_t t : map) {
    g = ctx.extend(prefix, t, g, emit);
    prefix.push_back(t);
  }
  g = ctx.complete(ctx.used_targets(map), g, emit);
  path.total_cost = g;
  path.complete = true;
  return path;
}

GedResult run_search(const Graph &g1, const Graph &g2, const CostModel &cm,
                     const SearchSpec &spec) {
  if (spec.kind == SearchSpec::Kind::Beam && spec.beam_width == 0)
    throw std::invalid_argument("beam width must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const SearchContext ctx(g1, g2, cm, spec.heuristic);
  const std::size_t n1 = ctx.d1.n;
  const std::size_t n2 = ctx.d2.n;
  auto no_emit = [](const EditKind &, double) {};

  std::vector<State> open;
  Worse worse;
  {
    State root;
    root.f = ctx.estimate(0, std::vector<bool>(n2, false));
    open.push_back(std::move(root));
  }

  GedResult result;
  while (!open.empty()) {
    std::pop_heap(open.begin(), open.end(), worse);
    State s = std::move(open.back());
    open.pop_back();
    if (s.complete) {
      result.cost = s.g;
      result.path = reconstruct(ctx, s.map);
      break;
    }
    if (spec.expansion_limit != 0 && result.expanded_nodes >= spec.expansion_limit)
      throw SearchLimitError("search exceeded " + std::to_string(spec.expansion_limit) +
                             " expansions");
    ++result.expanded_nodes;

    const std::vector<bool> used = ctx.used_targets(s.map);
    if (s.map.size() == n1) {
      State child;
      child.map = s.map;
      child.g = ctx.complete(used, s.g, no_emit);
      child.f = child.g;
      child.complete = true;
      open.push_back(std::move(child));
      std::push_heap(open.begin(), open.end(), worse);
    } else {
      auto push_child = [&](std::int16_t target) {
        State child;
        child.g = ctx.extend(s.map, target, s.g, no_emit);
        child.map = s.map;
        child.map.push_back(target);
        std::vector<bool> child_used = used;
        if (target != kEps)
          child_used[static_cast<std::size_t>(target)] = true;
        child.f = child.g + ctx.estimate(child.map.size(), child_used);
        open.push_back(std::move(child));
        std::push_heap(open.begin(), open.end(), worse);
      };
      for (std::size_t v = 0; v < n2; ++v)
        if (!used[v])
          push_child(static_cast<std::int16_t>(v));
      push_child(kEps);
    }

    if (spec.kind == SearchSpec::Kind::Beam && open.size() > spec.beam_width) {
      std::sort(open.begin(), open.end(), [](const State &a, const State &b) { return better(a, b); });
      open.resize(spec.beam_width);
      std::make_heap(open.begin(), open.end(), worse);
    }
  }
  result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

} // namespace

GedResult astar_ged(const Graph &g1, const Graph &g2, const CostModel &cm, Heuristic heuristic) {
  return run_search(g1, g2, cm, SearchSpec::astar(heuristic));
}

GedResult beam_ged(const Graph &g1, const Graph &g2, const CostModel &cm, std::size_t w,
                   Heuristic heuristic) {
  return run_search(g1, g2, cm, SearchSpec::beam(w, heuristic));
}

GedResult search_ged(const Graph &g1, const Graph &g2, const CostModel &cm,
                     const SearchSpec &spec) {
  return run_search(g1, g2, cm, spec);
}

GedResult t_centrality_ged(const Graph &g1, const Graph &g2, std::size_t t,
                           CentralityMeasure measure, const CostModel &cm,
                           const SearchSpec &spec, const ContractionOptions &opts) {
  return t_centrality_ged(g1, g2, t, t, measure, cm, spec, opts);
}

GedResult t_centrality_ged(const Graph &g1, const Graph &g2, std::size_t t1, std::size_t t2,
                           CentralityMeasure measure, const CostModel &cm,
                           const SearchSpec &spec, const ContractionOptions &opts) {
  const auto start = std::chrono::steady_clock::now();
  Contraction c1 = t_centrality_node_contraction(g1, t1, measure, opts);
  Contraction c2 = t_centrality_node_contraction(g2, t2, measure, opts);
  GedResult r = run_search(c1.graph, c2.graph, cm, spec);
  r.contraction_reports.emplace(std::move(c1.report), std::move(c2.report));
  r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return r;
}

double brute_force_ged(const Graph &g1, const Graph &g2, const CostModel &cm) {
  cm.validate();
  const std::vector<NodeId> v1 = g1.nodes();
  const std::vector<NodeId> v2 = g2.nodes();
  if (v1.size() + v2.size() > kBruteForceMaxNodes)
    throw std::invalid_argument("brute_force_ged is limited to " +
                                std::to_string(kBruteForceMaxNodes) + " nodes in total");
  const std::vector<Edge> e1 = g1.edges();
  const std::vector<Edge> e2 = g2.edges();

  // Total cost of a complete assignment image[i] in v2 or nullopt.
  std::vector<std::optional<NodeId>> image(v1.size());
  auto evaluate = [&]() {
    double cost = 0.0;
    std::vector<bool> hit(g2.id_bound(), false);
    auto image_of = [&](NodeId u) {
      auto it = std::lower_bound(v1.begin(), v1.end(), u);
      return image[static_cast<std::size_t>(it - v1.begin())];
    };
    for (std::size_t i = 0; i < v1.size(); ++i) {
      if (image[i]) {
        hit[image[i]->value] = true;
        cost += cm.y_node * node_label_distance(cm, g1.label(v1[i]), g2.label(*image[i]));
      } else {
        cost += cm.x_node;
      }
    }
    for (NodeId v : v2)
      if (!hit[v.value])
        cost += cm.x_node;
    std::size_t matched_edges = 0;
    for (const Edge &e : e1) {
      auto a = image_of(e.u), b = image_of(e.v);
      if (a && b && g2.has_edge(*a, *b)) {
        ++matched_edges;
        cost += cm.y_edge * edge_label_distance(cm, e.label, g2.edge_label(*a, *b));
      } else {
        cost += cm.x_edge;
      }
    }
    cost += cm.x_edge * static_cast<double>(e2.size() - matched_edges);
    return cost;
  };

  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> taken(g2.id_bound(), false);
  auto recurse = [&](auto &&self, std::size_t i) -> void {
    if (i == v1.size()) {
      best = std::min(best, evaluate());
      return;
    }
    image[i] = std::nullopt;
    self(self, i + 1);
    for (NodeId v : v2) {
      if (taken[v.value])
        continue;
      taken[v.value] = true;
      image[i] = v;
      self(self, i + 1);
      taken[v.value] = false;
    }
    image[i] = std::nullopt;
  };
  recurse(recurse, 0);
  return best;
}

} // namespace tged
