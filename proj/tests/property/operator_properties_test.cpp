#include <doctest.h>

#include <random>
#include <string>

#include "random_models.hpp"
#include "suites.hpp"
#include "teleo/operators.hpp"
#include "teleo/sampling.hpp"

using namespace teleo;

namespace {

void report(const testing_support::Tally& t) {
  for (const auto& note : t.notes) MESSAGE(note);
}

}  // namespace

TEST_CASE("final models are acyclic") {
  const auto t = testing_support::sfm_acyclicity(500, 101);
  report(t);
  CHECK(t.cases == 500);
  CHECK(t.failures == 0);
}

TEST_CASE("counterfactual twin equals final model with constant goal-reading policy") {
  const auto t = testing_support::counterfactual_equivalence(60, 202);
  report(t);
  CHECK(t.cases == 60);
  CHECK(t.failures == 0);
}

TEST_CASE("replica of a constant-policy final model equals do()") {
  const auto t = testing_support::intervention_equivalence(60, 303);
  report(t);
  CHECK(t.cases == 60);
  CHECK(t.failures == 0);
}

TEST_CASE("replica fidelity: undoing the policy recovers the base model") {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 200; ++i) {
    const ScmModel m = testing_support::random_model(rng, 1 + i % 6);
    const IntentionalIntervention spec = testing_support::random_intention(rng, m);
    const TwinModel sfm = build_sfm(m, spec);
    CHECK(sfm.base_world() == m);

    ScmModel replica;
    replica.name = m.name;
    replica.exogenous = sfm.model.exogenous;
    const auto unstar = [](const std::string& n) { return strip_replica(n); };
    for (const auto& name : sfm.replica_names()) {
      EndogenousVar v = *sfm.model.find_endogenous(name);
      v.name = strip_replica(v.name);
      v.equation = v.name == spec.target ? m.find_endogenous(spec.target)->equation
                                         : rename_variables(v.equation, unstar);
      replica.endogenous.push_back(std::move(v));
    }
    CHECK(replica == m);
  }
}

TEST_CASE("do() then final model is well defined for every descendant") {
  std::mt19937_64 rng(505);
  for (int i = 0; i < 100; ++i) {
    const ScmModel m = testing_support::random_model(rng, 2 + i % 5);
    const IntentionalIntervention spec = testing_support::random_intention(rng, m);
    for (const auto& c : descendants(induce_dag(m), spec.target)) {
      if (c == spec.target) continue;
      const TwinModel sfm = build_sfm(apply_do(m, c, 1.0), spec, m);
      CHECK(validate_twin(sfm).empty());
      CHECK(sample_twin(sfm, 10, 1).rows() == 10);
    }
  }
}
