#include <doctest.h>

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dsep_oracle.hpp"
#include "teleo/dsep.hpp"
#include "teleo/error.hpp"
#include "teleo/operators.hpp"
#include "teleo/repro.hpp"

using namespace teleo;
using S = IndependenceStatement;

TEST_CASE("statements are canonical") {
  const S s = S::make("W", "H");
  CHECK(s.x == "H");
  CHECK(s.y == "W");
  CHECK(S::make("H", "W") == S::make("W", "H"));
  CHECK(to_string(S::make("W", "H", {"T"})) == "H _||_ W | T");
  CHECK_THROWS_AS(S::make("A", "A"), ModelError);
  CHECK_THROWS_AS(S::make("A", "B", {"A"}), ModelError);
}

TEST_CASE("heating d-separations") {
  const Dag h = induce_dag(heating_model());
  CHECK(d_separated(h, "W", "H", {}));
  CHECK_FALSE(d_separated(h, "W", "H", {"T"}));
  CHECK_FALSE(d_separated(h, "H", "T", {}));
}

TEST_CASE("chains, forks and colliders") {
  const Dag chain({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  CHECK(d_separated(chain, "A", "C", {"B"}));
  CHECK_FALSE(d_separated(chain, "A", "C", {}));
  const Dag fork({"S", "P", "D"}, {{"S", "P"}, {"S", "D"}});
  CHECK(d_separated(fork, "P", "D", {"S"}));
  CHECK_FALSE(d_separated(fork, "P", "D", {}));
  const Dag collider({"X", "C", "Z", "E"}, {{"X", "C"}, {"Z", "C"}, {"C", "E"}});
  CHECK(d_separated(collider, "X", "Z", {}));
  CHECK_FALSE(d_separated(collider, "X", "Z", {"C"}));
  CHECK_FALSE(d_separated(collider, "X", "Z", {"E"}));  // descendant of the collider
}

TEST_CASE("argument errors") {
  const Dag h = induce_dag(heating_model());
  CHECK_THROWS_AS(d_separated(h, "W", "Q", {}), ModelError);
  CHECK_THROWS_AS(d_separated(h, "W", "W", {}), ModelError);
  CHECK_THROWS_AS(d_separated(h, "W", "H", {"W"}), ModelError);
  CHECK_THROWS_AS(d_separated(h, "W", "H", {"Q"}), ModelError);
}

TEST_CASE("implied independencies") {
  const Dag h = induce_dag(heating_model());
  CHECK(implied_independencies(h, {"W", "T", "H"}, 1) == std::vector<S>{S::make("H", "W")});

  const TwinModel sfm = build_sfm(heating_model(), heating_policy());
  CHECK(implied_independencies(induce_full_graph(sfm.model), {"W_star", "T_star", "H_star"}, 1).empty());

  CHECK(implied_independencies(Dag({"A", "B"}, {}), {"A", "B"}, 1) == std::vector<S>{S::make("A", "B")});
  CHECK(implied_independencies(Dag({"A", "B"}, {}), {"A", "B"}, 0) == std::vector<S>{S::make("A", "B")});

  const Dag fork({"S", "P", "D"}, {{"S", "P"}, {"S", "D"}});
  CHECK(implied_independencies(fork, {"S", "P", "D"}, 0).empty());
  CHECK(implied_independencies(fork, {"S", "P", "D"}, 1) == std::vector<S>{S::make("D", "P", {"S"})});
  // Only observed variables may be conditioned on.
  CHECK(implied_independencies(fork, {"P", "D"}, 1).empty());
}

TEST_CASE("implied independencies are sorted by x, y, |Z|, Z") {
  const Dag g({"A", "B", "C", "D", "E"}, {});
  const auto st = implied_independencies(g, {"A", "B", "C", "D", "E"}, 2);
  for (std::size_t i = 1; i < st.size(); ++i) {
    const auto& a = st[i - 1];
    const auto& b = st[i];
    const auto ka = std::make_tuple(a.x, a.y, a.given.size(), a.given);
    const auto kb = std::make_tuple(b.x, b.y, b.given.size(), b.given);
    CHECK(ka < kb);
  }
  // 10 pairs, each with 1 + 3 + 3 conditioning sets.
  CHECK(st.size() == 70);
}

TEST_CASE("oracle: every heating path is enumerated") {
  // W -> T <- H is the only path between W and H.
  oracle::PathDsep o(3, {{0, 1}, {2, 1}});
  const auto paths = o.paths(0, 2);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(o.separated(0, 2, {}));
  CHECK_FALSE(o.separated(0, 2, {1}));
}

TEST_CASE("agreement with the path oracle and symmetry on random DAGs") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 250; ++trial) {
    const std::size_t n = 2 + trial % 4;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, char('A' + i)));
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::pair<std::string, std::string>> named;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (unit(rng) < 0.45) {
          edges.emplace_back(perm[i], perm[j]);
          named.emplace_back(names[perm[i]], names[perm[j]]);
        }
      }
    }
    const Dag dag(names, named);
    const oracle::PathDsep o(n, edges);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          if (mask & ((1u << x) | (1u << y)) || std::popcount(mask) > 2) continue;
          std::set<std::string> z;
          std::set<std::size_t> zi;
          for (std::size_t k = 0; k < n; ++k) {
            if (mask & (1u << k)) {
              z.insert(names[k]);
              zi.insert(k);
            }
          }
          const bool got = d_separated(dag, names[x], names[y], z);
          CHECK(got == o.separated(x, y, zi));
          CHECK(got == d_separated(dag, names[y], names[x], z));
        }
      }
    }
  }
}
