#include "teleo/dsep.hpp"

#include <algorithm>

#include "teleo/error.hpp"

namespace teleo {

IndependenceStatement IndependenceStatement::make(std::string a, std::string b, std::set<std::string> given) {
  if (a == b) throw ModelError("independence statement needs two distinct variables, got '" + a + "' twice");
  if (given.count(a) || given.count(b)) {
    throw ModelError("conditioning set must not contain '" + a + "' or '" + b + "'");
  }
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b), std::move(given)};
}

std::string to_string(const IndependenceStatement& s) {
  std::string out = s.x + " _||_ " + s.y;
  if (!s.given.empty()) {
    out += " | ";
    bool first = true;
    for (const auto& z : s.given) {
      if (!first) out += ",";
      out += z;
      first = false;
    }
  }
  return out;
}

namespace {

// Reachability over (vertex, direction) states ("Bayes ball").
bool reachable(const Dag& dag, std::size_t source, std::size_t target, const std::vector<bool>& in_given) {
  const std::size_t n = dag.size();

  // Ancestors of the conditioning set, the set itself included.
  std::vector<bool> anc_given(n, false);
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < n; ++v) {
    if (in_given[v]) {
      anc_given[v] = true;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t p : dag.parents_of(v)) {
      if (!anc_given[p]) {
        anc_given[p] = true;
        stack.push_back(p);
      }
    }
  }

  enum Dir : int { kUp = 0, kDown = 1 };  // kUp: entered from a child
  std::vector<bool> visited(2 * n, false);
  std::vector<std::pair<std::size_t, Dir>> queue{{source, kUp}};
  while (!queue.empty()) {
    const auto [v, dir] = queue.back();
    queue.pop_back();
    if (visited[2 * v + dir]) continue;
    visited[2 * v + dir] = true;
    if (!in_given[v] && v == target) return true;

    if (dir == kUp && !in_given[v]) {
      for (std::size_t p : dag.parents_of(v)) queue.emplace_back(p, kUp);
      for (std::size_t c : dag.children_of(v)) queue.emplace_back(c, kDown);
    } else if (dir == kDown) {
      if (!in_given[v]) {
        for (std::size_t c : dag.children_of(v)) queue.emplace_back(c, kDown);
      }
      if (anc_given[v]) {
        for (std::size_t p : dag.parents_of(v)) queue.emplace_back(p, kUp);
      }
    }
  }
  return false;
}

}  // namespace

bool d_separated(const Dag& dag, const std::string& x, const std::string& y, const std::set<std::string>& given) {
  const std::size_t xi = dag.index_of(x);
  const std::size_t yi = dag.index_of(y);
  if (xi == yi) throw ModelError("d-separation query needs distinct variables, got '" + x + "' twice");
  std::vector<bool> in_given(dag.size(), false);
  for (const auto& z : given) in_given[dag.index_of(z)] = true;
  if (in_given[xi] || in_given[yi]) {
    throw ModelError("conditioning set overlaps the queried variables '" + x + "', '" + y + "'");
  }
  return !reachable(dag, xi, yi, in_given);
}

std::vector<IndependenceStatement> implied_independencies(const Dag& dag, const std::set<std::string>& observed,
                                                          std::size_t max_cond) {
  for (const auto& v : observed) dag.index_of(v);

  std::vector<IndependenceStatement> out;
  const std::vector<std::string> names(observed.begin(), observed.end());
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      std::vector<std::string> rest;
      for (const auto& v : names) {
        if (v != names[i] && v != names[j]) rest.push_back(v);
      }
      const std::size_t top = std::min(max_cond, rest.size());
      for (std::size_t k = 0; k <= top; ++k) {
        // Lexicographic k-combinations of `rest` via a selection mask.
        std::vector<bool> pick(rest.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
          std::set<std::string> given;
          for (std::size_t t = 0; t < rest.size(); ++t) {
            if (pick[t]) given.insert(rest[t]);
          }
          if (d_separated(dag, names[i], names[j], given)) {
            out.push_back({names[i], names[j], std::move(given)});
          }
        } while (std::prev_permutation(pick.begin(), pick.end()));
      }
    }
  }
  return out;
}

}  // namespace teleo
