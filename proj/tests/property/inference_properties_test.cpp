#include <doctest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "teleo/inference.hpp"
#include "teleo/random.hpp"
#include "teleo/report_io.hpp"
#include "teleo/repro.hpp"
#include "teleo/sampling.hpp"

using namespace teleo;

namespace {

struct Fork {
  ScmModel model;
  IntentionalIntervention policy;
  std::vector<std::string> effects;
  std::string goal;
};

// One cause S, 2-4 effects E_j = a_j S + U_j, and a threshold policy on one
// effect with the threshold within half a standard deviation of its mean.
Fork random_fork(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Fork f;
  f.model.name = "fork";
  const bool binary_cause = unit(rng) < 0.5;
  f.model.endogenous.push_back({"S", "U_S", parse_expression("U_S")});
  f.model.exogenous.push_back({"U_S", binary_cause ? DistributionSpec{Bernoulli{0.5}} : DistributionSpec{Normal{0, 1}}});
  const double mean_s = binary_cause ? 0.5 : 0.0;
  const std::size_t k = 2 + rng() % 3;
  const std::size_t goal = rng() % k;
  for (std::size_t j = 0; j < k; ++j) {
    const std::string e = "E" + std::to_string(j);
    const double a = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + unit(rng));
    f.model.endogenous.push_back({e, "U_" + e, parse_expression(std::to_string(a) + " * S + U_" + e)});
    f.model.exogenous.push_back({"U_" + e, Normal{0, 1}});
    f.effects.push_back(e);
    if (j == goal) {
      const double threshold = a * mean_s + (unit(rng) - 0.5);
      f.goal = e;
      f.policy = {"S", parse_expression("if(" + e + " > " + std::to_string(threshold) + ", 1, 0)")};
    }
  }
  return f;
}

}  // namespace

TEST_CASE("discovery recovers the goal of random fork agents") {
  std::mt19937_64 rng(7);
  int exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Fork f = random_fork(rng);
    DiscoveryOptions opts;
    opts.seed = rng();
    const DiscoveryReport r = discover_intention(f.model, SimulatedAgent(f.model, f.policy), "S", f.effects, opts);
    exact += r.listened == std::set<std::string>{f.goal};
  }
  MESSAGE("exact recoveries: " << exact << "/100");
  CHECK(exact >= 95);
}

TEST_CASE("detection is sound over 20 seeds and the true final model restores consistency") {
  int agent_flagged = 0, causal_flagged = 0, restored = 0;
  const TwinModel sfm = build_sfm(heating_model(), heating_policy());
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Dataset causal = sample_dataset(heating_model(), 10'000, derive_seed(seed, 0));
    const Dataset agent = sample_twin(sfm, 10'000, derive_seed(seed, 1)).select(sfm.observed());
    const Dataset relabeled = agent.renamed([](const std::string& c) { return strip_replica(c); });
    const bool detected = detect_agent(heating_model(), relabeled).detected;
    agent_flagged += detected;
    causal_flagged += detect_agent(heating_model(), causal).detected;
    if (detected) restored += !verify_sfm_hypothesis(sfm, agent).violated();
  }
  CHECK(agent_flagged >= 19);
  CHECK(causal_flagged <= 2);
  CHECK(restored >= 19);
}

TEST_CASE("reports are deterministic") {
  CHECK(to_json(run_repro_heating(3)) == to_json(run_repro_heating(3)));
  CHECK(to_json(run_repro_smoking(3)) == to_json(run_repro_smoking(3)));
  CHECK(to_json(run_repro_smoking(3)) != to_json(run_repro_smoking(4)));
  const Dataset d = sample_dataset(smoking_model(), 5000, 8);
  const auto dag = induce_dag(smoking_model());
  CHECK(to_json(markov_check(dag, d, {"S", "P", "D"})) == to_json(markov_check(dag, d, {"S", "P", "D"})));
}
