#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace teleo {

/// Directed acyclic graph over named vertices. Vertex order is the
/// declaration order and is used for every deterministic tie-break.
class Dag {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Dag() = default;

  /// Throws ModelError on duplicate vertices, unknown endpoints or a cycle.
  Dag(std::vector<std::string> vertices, const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  /// Edges as (from, to) index pairs, sorted and unique.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::vector<std::pair<std::string, std::string>> named_edges() const;

  bool contains(std::string_view name) const;
  /// Throws ModelError for unknown names.
  std::size_t index_of(std::string_view name) const;
  const std::string& name_of(std::size_t i) const { return vertices_.at(i); }

  bool has_edge(std::size_t from, std::size_t to) const;
  const std::vector<std::size_t>& parents_of(std::size_t v) const { return parents_.at(v); }
  const std::vector<std::size_t>& children_of(std::size_t v) const { return children_.at(v); }

  /// Vertices reachable from v by directed paths, v included.
  std::vector<bool> descendant_mask(std::size_t v) const;

 private:
  std::vector<std::string> vertices_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
};

/// Kahn's algorithm with smallest-declaration-index tie-break. Returns the
/// indices of vertices left on a cycle through `leftover` when not acyclic.
bool topological_indices(std::size_t n, const std::vector<Dag::Edge>& edges, std::vector<std::size_t>& order,
                         std::vector<std::size_t>* leftover = nullptr);

std::set<std::string> parents(const Dag& dag, std::string_view v);
std::set<std::string> children(const Dag& dag, std::string_view v);
/// Includes v itself.
std::set<std::string> descendants(const Dag& dag, std::string_view v);
std::vector<std::string> topological_order(const Dag& dag);

}  // namespace teleo
