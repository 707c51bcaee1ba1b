#include <algorithm>
#include <random>

#include "tged/dataset.hpp"

namespace tged {

namespace {

Graph make_prototype(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> order(4, 6);
  std::uniform_real_distribution<double> coord(0.0, 3.0);
  Graph g;
  const int n = order(rng);
  for (int i = 0; i < n; ++i)
    g.add_node(Point2D{coord(rng), coord(rng)});
  // Random spanning tree keeps the prototype connected.
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    g.add_edge(NodeId{static_cast<std::uint32_t>(i)},
               NodeId{static_cast<std::uint32_t>(pick(rng))});
  }
  if (std::bernoulli_distribution(0.5)(rng)) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    const NodeId a{static_cast<std::uint32_t>(pick(rng))};
    const NodeId b{static_cast<std::uint32_t>(pick(rng))};
    if (a != b && !g.has_edge(a, b))
      g.add_edge(a, b);
  }
  return g;
}

std::uint64_t split_salt(Split s) {
  switch (s) {
  case Split::Train: return 0x9e3779b97f4a7c15ULL;
  case Split::Validation: return 0xbf58476d1ce4e5b9ULL;
  case Split::Test: return 0x94d049bb133111ebULL;
  }
  return 0;
}

} // namespace

Corpus synthesize_letter_like(const SynthOptions &opts, Split split) {
  if (opts.count < 1 || opts.classes < 1 || !(opts.distortion >= 0.0))
    throw std::invalid_argument("synthetic corpus needs count, classes >= 1 and distortion >= 0");

  // Prototypes depend on the seed only, so every split shares them.
  std::mt19937_64 proto_rng(opts.seed);
  std::vector<Graph> prototypes;
  prototypes.reserve(opts.classes);
  for (std::size_t c = 0; c < opts.classes; ++c)
    prototypes.push_back(make_prototype(proto_rng));

  std::mt19937_64 rng(opts.seed ^ split_salt(split));
  std::normal_distribution<double> jitter(0.0, 1.0);
  std::bernoulli_distribution change(std::min(1.0, opts.distortion));
  std::bernoulli_distribution remove(0.5);

  Corpus corpus;
  corpus.name = "synthetic-d" + std::to_string(opts.distortion);
  corpus.split = split;
  corpus.graphs.reserve(opts.count);
  for (std::size_t i = 0; i < opts.count; ++i) {
    const std::size_t cls = i % opts.classes;
    const Graph &proto = prototypes[cls];
    Graph g;
    for (NodeId u : proto.nodes()) {
      const auto &p = std::get<Point2D>(proto.label(u));
      g.add_node(Point2D{p.x + opts.distortion * jitter(rng),
                         p.y + opts.distortion * jitter(rng)});
    }
    for (const Edge &e : proto.edges())
      g.add_edge(e.u, e.v, e.label);

    if (opts.distortion > 0.0 && change(rng)) {
      const std::vector<Edge> edges = g.edges();
      std::vector<std::pair<NodeId, NodeId>> absent;
      const std::vector<NodeId> ids = g.nodes();
      for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b)
          if (!g.has_edge(ids[a], ids[b]))
            absent.emplace_back(ids[a], ids[b]);
      const bool drop = remove(rng);
      if (drop && !edges.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
        const Edge &e = edges[pick(rng)];
        // Edge removal goes through a rebuild: Graph has no edge deletion.
        Graph h;
        for (NodeId u : g.nodes())
          h.add_node(g.label(u));
        for (const Edge &other : edges)
          if (!(other.u == e.u && other.v == e.v))
            h.add_edge(other.u, other.v, other.label);
        g = std::move(h);
      } else if (!drop && !absent.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, absent.size() - 1);
        const auto [a, b] = absent[pick(rng)];
        g.add_edge(a, b);
      }
    }
    g.set_name("synth_" + std::string(to_string(split)) + "_" + std::to_string(i));
    g.set_class_label("C" + std::to_string(cls));
    corpus.graphs.push_back(std::move(g));
  }
  return corpus;
}

} // namespace tged
