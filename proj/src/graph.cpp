#include "tged/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tged {

namespace {

std::string id_str(NodeId u) { return std::to_string(u.value); }

} // namespace

void validate(const NodeLabel &label) {
  if (const auto *p = std::get_if<Point2D>(&label)) {
    if (!std::isfinite(p->x) || !std::isfinite(p->y))
      throw std::invalid_argument("Point2D label has non-finite coordinate");
  } else if (std::get<Symbol>(label).token.empty()) {
    throw std::invalid_argument("symbolic label is empty");
  }
}

void validate(const EdgeLabel &label) {
  if (const auto *n = std::get_if<Numeric>(&label); n && !std::isfinite(n->value))
    throw std::invalid_argument("numeric edge label is not finite");
}

NodeId Graph::add_node(NodeLabel label) {
  try {
    validate(label);
  } catch (const std::invalid_argument &e) {
    throw GraphError(GraphError::Kind::InvalidLabel, e.what());
  }
  NodeId id{static_cast<std::uint32_t>(slots_.size())};
  slots_.emplace_back(std::move(label));
  adjacency_.emplace_back();
  ++live_;
  return id;
}

void Graph::require(NodeId u) const {
  if (!has_node(u))
    throw GraphError(GraphError::Kind::MissingNode, "node " + id_str(u) + " is not present");
}

void Graph::add_edge(NodeId u, NodeId v, EdgeLabel label) {
  if (u == v)
    throw GraphError(GraphError::Kind::SelfLoop, "self-loop on node " + id_str(u));
  require(u);
  require(v);
  try {
    validate(label);
  } catch (const std::invalid_argument &e) {
    throw GraphError(GraphError::Kind::InvalidLabel, e.what());
  }
  auto [it, inserted] = edge_labels_.try_emplace(key(u, v), std::move(label));
  if (!inserted)
    throw GraphError(GraphError::Kind::DuplicateEdge,
                     "edge {" + id_str(u) + "," + id_str(v) + "} already present");
  auto &au = adjacency_[u.value];
  au.insert(std::lower_bound(au.begin(), au.end(), v), v);
  auto &av = adjacency_[v.value];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
}

void Graph::delete_node(NodeId u) {
  require(u);
  for (NodeId w : adjacency_[u.value]) {
    auto &aw = adjacency_[w.value];
    aw.erase(std::lower_bound(aw.begin(), aw.end(), u));
    edge_labels_.erase(key(u, w));
  }
  adjacency_[u.value].clear();
  slots_[u.value].reset();
  --live_;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (!has_node(u) || !has_node(v))
    return false;
  const auto &au = adjacency_[u.value];
  return std::binary_search(au.begin(), au.end(), v);
}

const NodeLabel &Graph::label(NodeId u) const {
  require(u);
  return *slots_[u.value];
}

const EdgeLabel &Graph::edge_label(NodeId u, NodeId v) const {
  auto it = edge_labels_.find(key(u, v));
  if (it == edge_labels_.end())
    throw GraphError(GraphError::Kind::MissingNode,
                     "edge {" + id_str(u) + "," + id_str(v) + "} is not present");
  return it->second;
}

std::size_t Graph::degree(NodeId u) const {
  require(u);
  return adjacency_[u.value].size();
}

std::span<const NodeId> Graph::neighbors(NodeId u) const {
  require(u);
  return adjacency_[u.value];
}

std::vector<NodeId> Graph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(live_);
  for (std::uint32_t i = 0; i < slots_.size(); ++i)
    if (slots_[i])
      out.push_back(NodeId{i});
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_labels_.size());
  for (const auto &[k, label] : edge_labels_)
    out.push_back(Edge{NodeId{k.first}, NodeId{k.second}, label});
  return out;
}

bool operator==(const Graph &a, const Graph &b) {
  if (a.live_ != b.live_ || a.edge_labels_ != b.edge_labels_)
    return false;
  const std::size_t n = std::max(a.slots_.size(), b.slots_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_a = i < a.slots_.size() && a.slots_[i].has_value();
    const bool in_b = i < b.slots_.size() && b.slots_[i].has_value();
    if (in_a != in_b)
      return false;
    if (in_a && *a.slots_[i] != *b.slots_[i])
      return false;
  }
  return true;
}

std::vector<std::vector<NodeId>> connected_components(const Graph &g) {
  std::vector<std::vector<NodeId>> blocks;
  std::vector<bool> seen(g.id_bound(), false);
  std::vector<NodeId> stack;
  for (NodeId root : g.nodes()) {
    if (seen[root.value])
      continue;
    auto &block = blocks.emplace_back();
    seen[root.value] = true;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      block.push_back(u);
      for (NodeId w : g.neighbors(u)) {
        if (!seen[w.value]) {
          seen[w.value] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(block.begin(), block.end());
  }
  return blocks;
}

std::size_t component_count(const Graph &g) {
  return connected_components(g).size();
}

std::vector<bool> articulation_points(const Graph &g) {
  const std::uint32_t bound = g.id_bound();
  std::vector<bool> cut(bound, false);
  std::vector<std::uint32_t> disc(bound, 0), low(bound, 0);
  std::uint32_t timer = 0;

  struct Frame {
    NodeId node;
    NodeId parent;
    std::size_t next; // index into neighbors(node)
    std::size_t children;
  };
  std::vector<Frame> stack;

  for (NodeId root : g.nodes()) {
    if (disc[root.value] != 0)
      continue;
    disc[root.value] = low[root.value] = ++timer;
    stack.push_back({root, root, 0, 0});
    while (!stack.empty()) {
      Frame &f = stack.back();
      auto nbrs = g.neighbors(f.node);
      if (f.next < nbrs.size()) {
        NodeId w = nbrs[f.next++];
        if (disc[w.value] == 0) {
          ++f.children;
          disc[w.value] = low[w.value] = ++timer;
          stack.push_back({w, f.node, 0, 0});
        } else if (w != f.parent) {
          low[f.node.value] = std::min(low[f.node.value], disc[w.value]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        cut[done.node.value] = done.children > 1;
        continue;
      }
      Frame &parent = stack.back();
      low[parent.node.value] = std::min(low[parent.node.value], low[done.node.value]);
      if (parent.node != root && low[done.node.value] >= disc[parent.node.value])
        cut[parent.node.value] = true;
    }
  }
  return cut;
}

bool is_cut_vertex(const Graph &g, NodeId u) {
  if (!g.has_node(u))
    throw GraphError(GraphError::Kind::MissingNode, "node " + id_str(u) + " is not present");
  return articulation_points(g)[u.value];
}

bool is_cut_vertex_by_recount(const Graph &g, NodeId u) {
  if (!g.has_node(u))
    throw GraphError(GraphError::Kind::MissingNode, "node " + id_str(u) + " is not present");
  const std::size_t before = component_count(g);
  Graph h = g;
  h.delete_node(u);
  return component_count(h) > before;
}

std::string to_string(const NodeLabel &label) {
  std::ostringstream os;
  os.precision(17);
  if (const auto *p = std::get_if<Point2D>(&label))
    os << "(" << p->x << ", " << p->y << ")";
  else
    os << std::get<Symbol>(label).token;
  return os.str();
}

std::string to_string(const EdgeLabel &label) {
  if (const auto *n = std::get_if<Numeric>(&label)) {
    std::ostringstream os;
    os.precision(17);
    os << n->value;
    return os.str();
  }
  return "-";
}

} // namespace tged
