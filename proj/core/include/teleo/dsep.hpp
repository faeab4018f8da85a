#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "teleo/dag.hpp"

namespace teleo {

/// x ⊥ y | given, with x < y lexicographically.
struct IndependenceStatement {
  std::string x;
  std::string y;
  std::set<std::string> given;

  /// Orders x/y canonically. Throws ModelError if x == y or either is in `given`.
  static IndependenceStatement make(std::string a, std::string b, std::set<std::string> given = {});

  friend auto operator<=>(const IndependenceStatement&, const IndependenceStatement&) = default;
};

std::string to_string(const IndependenceStatement& s);

/// True iff every path between x and y is blocked by `given`. Throws
/// ModelError for unknown vertices or overlapping arguments.
bool d_separated(const Dag& dag, const std::string& x, const std::string& y, const std::set<std::string>& given);

inline constexpr std::size_t kDefaultMaxCond = 1;

/// Every separated pair (x, y | Z) with x, y, Z drawn from `observed` and
/// |Z| <= max_cond. Ordered by x, then y, then |Z|, then Z lexicographically.
std::vector<IndependenceStatement> implied_independencies(const Dag& dag, const std::set<std::string>& observed,
                                                          std::size_t max_cond = kDefaultMaxCond);

}  // namespace teleo
