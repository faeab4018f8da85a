#include "teleo/dag.hpp"

#include <algorithm>
#include <queue>

#include "teleo/error.hpp"

namespace teleo {

Dag::Dag(std::vector<std::string> vertices, const std::vector<std::pair<std::string, std::string>>& edges)
    : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second) {
      throw ModelError("duplicate vertex '" + vertices_[i] + "'");
    }
  }
  edges_.reserve(edges.size());
  for (const auto& [from, to] : edges) edges_.emplace_back(index_of(from), index_of(to));
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  parents_.assign(vertices_.size(), {});
  children_.assign(vertices_.size(), {});
  for (const auto& [from, to] : edges_) {
    children_[from].push_back(to);
    parents_[to].push_back(from);
  }
  for (auto& p : parents_) std::sort(p.begin(), p.end());

  std::vector<std::size_t> order, leftover;
  if (!topological_indices(vertices_.size(), edges_, order, &leftover)) {
    std::string names;
    for (std::size_t v : leftover) names += (names.empty() ? "" : ", ") + vertices_[v];
    throw ModelError("graph has a cycle through {" + names + "}");
  }
}

std::vector<std::pair<std::string, std::string>> Dag::named_edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(edges_.size());
  for (const auto& [a, b] : edges_) out.emplace_back(vertices_[a], vertices_[b]);
  return out;
}

bool Dag::contains(std::string_view name) const { return index_.count(std::string(name)) > 0; }

std::size_t Dag::index_of(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) throw ModelError("unknown vertex '" + std::string(name) + "'");
  return it->second;
}

bool Dag::has_edge(std::size_t from, std::size_t to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

std::vector<bool> Dag::descendant_mask(std::size_t v) const {
  std::vector<bool> seen(size(), false);
  std::vector<std::size_t> stack{v};
  seen.at(v) = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t c : children_[u]) {
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
    }
  }
  return seen;
}

bool topological_indices(std::size_t n, const std::vector<Dag::Edge>& edges, std::vector<std::size_t>& order,
                         std::vector<std::size_t>* leftover) {
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> out(n);
  for (const auto& [a, b] : edges) {
    out[a].push_back(b);
    ++indegree[b];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  order.clear();
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t c : out[v]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (order.size() == n) return true;
  if (leftover) {
    leftover->clear();
    for (std::size_t v = 0; v < n; ++v) {
      if (indegree[v] > 0) leftover->push_back(v);
    }
  }
  return false;
}

std::set<std::string> parents(const Dag& dag, std::string_view v) {
  std::set<std::string> out;
  for (std::size_t p : dag.parents_of(dag.index_of(v))) out.insert(dag.name_of(p));
  return out;
}

std::set<std::string> children(const Dag& dag, std::string_view v) {
  std::set<std::string> out;
  for (std::size_t c : dag.children_of(dag.index_of(v))) out.insert(dag.name_of(c));
  return out;
}

std::set<std::string> descendants(const Dag& dag, std::string_view v) {
  const std::vector<bool> mask = dag.descendant_mask(dag.index_of(v));
  std::set<std::string> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.insert(dag.name_of(i));
  }
  return out;
}

std::vector<std::string> topological_order(const Dag& dag) {
  std::vector<std::size_t> order;
  if (!topological_indices(dag.size(), dag.edges(), order)) throw ModelError("graph has a cycle");
  std::vector<std::string> out;
  out.reserve(order.size());
  for (std::size_t v : order) out.push_back(dag.name_of(v));
  return out;
}

}  // namespace teleo
