#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tged {

/// Stable node identifier. Ids are dense at creation and never reused, so a
/// contracted graph keeps the ids of the graph it came from.
struct NodeId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
  friend std::ostream &operator<<(std::ostream &os, NodeId id) {
    return os << id.value;
  }
};

struct Point2D {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2D &, const Point2D &) = default;
};

struct Symbol {
  std::string token;
  friend bool operator==(const Symbol &, const Symbol &) = default;
};

using NodeLabel = std::variant<Point2D, Symbol>;

struct Unlabeled {
  friend bool operator==(Unlabeled, Unlabeled) = default;
};

struct Numeric {
  double value = 0.0;
  friend bool operator==(Numeric, Numeric) = default;
};

using EdgeLabel = std::variant<Unlabeled, Numeric>;

/// Throws std::invalid_argument when the label violates its invariants
/// (non-finite coordinates / values, empty symbol).
void validate(const NodeLabel &label);
void validate(const EdgeLabel &label);

class GraphError : public std::runtime_error {
public:
  enum class Kind { SelfLoop, MissingNode, DuplicateEdge, InvalidLabel };

  GraphError(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

struct Edge {
  NodeId u; // u < v
  NodeId v;
  EdgeLabel label;
  friend bool operator==(const Edge &, const Edge &) = default;
};

/// Undirected simple graph with node and edge labels.
///
/// Node slots are indexed by id; deleted nodes leave an empty slot so ids
/// stay stable. Adjacency lists are kept sorted, which makes iteration order
/// (and therefore equality) independent of insertion order.
class Graph {
public:
  Graph() = default;

  NodeId add_node(NodeLabel label);
  void add_edge(NodeId u, NodeId v, EdgeLabel label = Unlabeled{});
  void delete_node(NodeId u);

  bool has_node(NodeId u) const noexcept {
    return u.value < slots_.size() && slots_[u.value].has_value();
  }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  const NodeLabel &label(NodeId u) const;
  const EdgeLabel &edge_label(NodeId u, NodeId v) const;

  std::size_t degree(NodeId u) const;
  std::span<const NodeId> neighbors(NodeId u) const;

  /// Live node ids in ascending order.
  std::vector<NodeId> nodes() const;
  /// Edges with u < v, sorted by (u, v).
  std::vector<Edge> edges() const;

  std::size_t order() const noexcept { return live_; }
  std::size_t size() const noexcept { return edge_labels_.size(); }
  bool empty() const noexcept { return live_ == 0; }

  /// One past the largest id ever issued.
  std::uint32_t id_bound() const noexcept {
    return static_cast<std::uint32_t>(slots_.size());
  }

  const std::string &name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const std::optional<std::string> &class_label() const noexcept {
    return class_label_;
  }
  void set_class_label(std::optional<std::string> c) {
    class_label_ = std::move(c);
  }

  /// Structural equality over live nodes and edges (ids, labels). Name and
  /// class label are metadata and do not participate.
  friend bool operator==(const Graph &a, const Graph &b);

private:
  using EdgeKey = std::pair<std::uint32_t, std::uint32_t>;
  static EdgeKey key(NodeId u, NodeId v) noexcept {
    return u < v ? EdgeKey{u.value, v.value} : EdgeKey{v.value, u.value};
  }
  void require(NodeId u) const;

  std::vector<std::optional<NodeLabel>> slots_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::map<EdgeKey, EdgeLabel> edge_labels_;
  std::size_t live_ = 0;
  std::string name_;
  std::optional<std::string> class_label_;
};

/// Blocks sorted by smallest member; members ascending.
std::vector<std::vector<NodeId>> connected_components(const Graph &g);
std::size_t component_count(const Graph &g);

/// Articulation points by a single iterative depth-first traversal
/// (low-link). Result indexed by NodeId::value, sized g.id_bound().
std::vector<bool> articulation_points(const Graph &g);

/// True iff removing u strictly increases the number of components among the
/// remaining nodes. A lone node is never a cut vertex.
bool is_cut_vertex(const Graph &g, NodeId u);

/// Same query answered by deleting u from a copy and recounting components.
/// Kept as a cross-check for articulation_points().
bool is_cut_vertex_by_recount(const Graph &g, NodeId u);

std::string to_string(const NodeLabel &label);
std::string to_string(const EdgeLabel &label);

} // namespace tged

template <> struct std::hash<tged::NodeId> {
  std::size_t operator()(tged::NodeId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
