#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "random_models.hpp"
#include "teleo/dag.hpp"
#include "teleo/error.hpp"
#include "teleo/repro.hpp"
#include "teleo/scm.hpp"

using namespace teleo;
using Names = std::set<std::string>;

namespace {

ScmModel model_of(std::vector<EndogenousVar> endo, std::vector<ExogenousVar> exo) {
  return {"m", std::move(endo), std::move(exo)};
}

EndogenousVar var(std::string name, std::string u, std::string_view eq) {
  return {std::move(name), std::move(u), parse_expression(eq)};
}

std::vector<std::string> rules(const std::vector<Violation>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.rule);
  return out;
}

bool has_rule(const std::vector<Violation>& vs, const std::string& rule) {
  const auto r = rules(vs);
  return std::find(r.begin(), r.end(), rule) != r.end();
}

Dag chain() { return Dag({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}}); }

}  // namespace

TEST_CASE("reference models validate") {
  CHECK(validate_model(heating_model()).empty());
  CHECK(validate_model(smoking_model()).empty());
}

TEST_CASE("validation rules") {
  SUBCASE("self reference") {
    const auto m = model_of({var("X", "U", "X + U")}, {{"U", Normal{}}});
    CHECK(has_rule(validate_model(m), "self-reference"));
  }
  SUBCASE("shared partner") {
    const auto m = model_of({var("X", "U", "U"), var("Y", "U", "U")}, {{"U", Normal{}}});
    const auto vs = validate_model(m);
    CHECK(has_rule(vs, "shared-partner"));
    REQUIRE_FALSE(vs.empty());
    CHECK(vs.front().variable == "X");
  }
  SUBCASE("missing partner") {
    CHECK(has_rule(validate_model(model_of({var("X", "U", "1")}, {})), "missing-partner"));
  }
  SUBCASE("orphan exogenous") {
    const auto m = model_of({var("X", "U", "U")}, {{"U", Normal{}}, {"V", Bernoulli{}}});
    CHECK(rules(validate_model(m)) == std::vector<std::string>{"orphan-exogenous"});
  }
  SUBCASE("foreign exogenous") {
    const auto m = model_of({var("X", "U", "U"), var("Y", "V", "U + V")}, {{"U", Normal{}}, {"V", Normal{}}});
    CHECK(has_rule(validate_model(m), "foreign-exogenous"));
  }
  SUBCASE("unknown variable") {
    CHECK(has_rule(validate_model(model_of({var("X", "U", "Q")}, {{"U", Normal{}}})), "unknown-variable"));
  }
  SUBCASE("cycle") {
    const auto m = model_of({var("X", "U", "Y + U"), var("Y", "V", "X + V")}, {{"U", Normal{}}, {"V", Normal{}}});
    const auto r = rules(validate_model(m));
    CHECK(std::count(r.begin(), r.end(), std::string("cycle")) == 2);
    CHECK_THROWS_AS(induce_dag(m), ModelError);
    CHECK_THROWS_AS(require_valid(m), ModelError);
  }
  SUBCASE("distributions") {
    CHECK(has_rule(validate_model(model_of({var("X", "U", "U")}, {{"U", Bernoulli{1.5}}})), "distribution"));
    CHECK(has_rule(validate_model(model_of({var("X", "U", "U")}, {{"U", Normal{0, -1}}})), "distribution"));
    // Degenerate distributions are allowed.
    CHECK(validate_model(model_of({var("X", "U", "U")}, {{"U", Normal{0, 0}}})).empty());
    CHECK(validate_model(model_of({var("X", "U", "U")}, {{"U", Bernoulli{1.0}}})).empty());
  }
  SUBCASE("names") {
    CHECK(has_rule(validate_model(model_of({var("X", "U", "U"), var("X", "V", "V")}, {{"U", Normal{}}, {"V", Normal{}}})),
                   "duplicate-name"));
    CHECK(has_rule(validate_model(model_of({var("X_star", "U", "U")}, {{"U", Normal{}}})), "reserved-suffix"));
    CHECK(has_rule(validate_model(model_of({var("2X", "U", "U")}, {{"U", Normal{}}})), "identifier"));
  }
}

TEST_CASE("induced graphs of the reference models") {
  const Dag h = induce_dag(heating_model());
  CHECK(h.vertices() == std::vector<std::string>{"W", "T", "H"});
  using E = std::vector<std::pair<std::string, std::string>>;
  auto sorted = [](E e) {
    std::sort(e.begin(), e.end());
    return e;
  };
  CHECK(sorted(h.named_edges()) == E{{"H", "T"}, {"W", "T"}});
  CHECK(sorted(induce_dag(smoking_model()).named_edges()) == E{{"S", "D"}, {"S", "P"}});
  CHECK(induce_dag(model_of({var("X", "U", "U")}, {{"U", Normal{}}})).edges().empty());

  const Dag full = induce_full_graph(heating_model());
  CHECK(full.size() == 6);
  CHECK(parents(full, "T") == Names{"H", "U_T", "W"});
}

TEST_CASE("parents, children and descendants") {
  const Dag h = induce_dag(heating_model());
  const Dag s = induce_dag(smoking_model());
  CHECK(parents(h, "T") == Names{"H", "W"});
  CHECK(parents(h, "W").empty());
  CHECK(parents(s, "P") == Names{"S"});
  CHECK(children(s, "S") == Names{"D", "P"});
  CHECK(descendants(s, "S") == Names{"D", "P", "S"});
  CHECK(descendants(s, "P") == Names{"P"});
  CHECK(descendants(h, "H") == Names{"H", "T"});
  CHECK_THROWS_AS(parents(h, "Q"), ModelError);
  CHECK_THROWS_AS(descendants(h, "Q"), ModelError);
}

TEST_CASE("topological order") {
  CHECK(topological_order(induce_dag(heating_model())) == std::vector<std::string>{"W", "H", "T"});
  CHECK(topological_order(Dag({"C", "A", "B"}, {})) == std::vector<std::string>{"C", "A", "B"});
  CHECK(topological_order(chain()) == std::vector<std::string>{"A", "B", "C"});
  CHECK(topological_order(Dag({"C", "B", "A"}, {{"A", "B"}, {"B", "C"}})) == std::vector<std::string>{"A", "B", "C"});
}

TEST_CASE("Dag rejects bad input") {
  CHECK_THROWS_AS(Dag({"A", "A"}, {}), ModelError);
  CHECK_THROWS_AS(Dag({"A"}, {{"A", "B"}}), ModelError);
  CHECK_THROWS_AS(Dag({"A", "B"}, {{"A", "B"}, {"B", "A"}}), ModelError);
  CHECK_THROWS_AS(Dag({"A"}, {{"A", "A"}}), ModelError);
}

TEST_CASE("replica names") {
  CHECK(replica_name("H") == "H_star");
  CHECK(is_replica_name("H_star"));
  CHECK_FALSE(is_replica_name("H"));
  CHECK_FALSE(is_replica_name("_star"));
  CHECK(strip_replica("T_star") == "T");
  CHECK(strip_replica("T") == "T");
}

TEST_CASE("graph invariants on random valid models") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ScmModel m = testing_support::random_model(rng, 1 + trial % 6);
    REQUIRE(validate_model(m).empty());
    const Dag dag = induce_dag(m);
    const auto order = topological_order(dag);
    CHECK(order == topological_order(dag));
    std::vector<std::string> sorted_order = order, sorted_vertices = dag.vertices();
    std::sort(sorted_order.begin(), sorted_order.end());
    std::sort(sorted_vertices.begin(), sorted_vertices.end());
    CHECK(sorted_order == sorted_vertices);
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (const auto& [a, b] : dag.named_edges()) CHECK(pos[a] < pos[b]);
    for (const auto& v : dag.vertices()) {
      const auto d = descendants(dag, v);
      CHECK(d.count(v));
      for (const auto& p : parents(dag, v)) CHECK_FALSE(d.count(p));
    }
  }
}
