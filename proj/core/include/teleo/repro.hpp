#pragma once

// The two reference pipelines: agent detection on the heating collider and
// intention discovery on the smoking fork.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "teleo/inference.hpp"
#include "teleo/operators.hpp"
#include "teleo/scm.hpp"

namespace teleo {

/// W = U_W, T = W + H + U_T, H = U_H with U_W, U_H ~ Bernoulli(0.5) and
/// U_T ~ Normal(0, 1e-20).
ScmModel heating_model();
/// The heater is switched on when the (unintervened) temperature is low.
IntentionalIntervention heating_policy();

/// S = U_S, D = 0.3*S + U_D, P = 0.5*S + U_P + 1 with U_S ~ Bernoulli(0.5)
/// and U_D, U_P ~ Normal(0, 1).
ScmModel smoking_model();
/// Smoke when the (unintervened) pleasure exceeds 1.
IntentionalIntervention smoking_policy();

struct ReproSettings {
  std::size_t n = 10'000;
  double alpha = kDefaultAlpha;
  std::size_t max_cond = kDefaultMaxCond;
};

struct NamedTest {
  IndependenceStatement statement;
  bool expect_dependent = false;
  double partial_correlation = 0.0;
  TestResult result;
};

struct HeatingRepro {
  std::uint64_t seed = 0;
  ReproSettings settings;
  /// H ⊥ W, H ⊥ W | T, H ⊥ T on causal data.
  std::vector<NamedTest> causal_checks;
  MarkovReport causal_markov;
  /// H* ⊥ W* on data from the final model.
  NamedTest agent_check;
  DetectionReport agent_detection;
  MarkovReport sfm_verification;
  /// Verdicts of the three stages, expected {consistent, violated, consistent}.
  std::vector<std::string> verdicts;
  bool as_expected = false;
};

struct Pmf {
  std::string label;
  std::size_t n = 0;
  std::size_t ones = 0;
  double p0() const { return n ? 1.0 - p1() : 0.0; }
  double p1() const { return n ? static_cast<double>(ones) / static_cast<double>(n) : 0.0; }
};

struct SmokingRepro {
  std::uint64_t seed = 0;
  ReproSettings settings;
  Pmf baseline;      // P(S*)
  Pmf under_do_d0;   // P(S* | do(D = 0))
  Pmf under_do_p0;   // P(S* | do(P = 0))
  TestResult damage_vs_baseline;
  TestResult pleasure_vs_baseline;
  DiscoveryReport discovery;
  bool as_expected = false;
};

HeatingRepro run_repro_heating(std::uint64_t seed, const ReproSettings& settings = {});
SmokingRepro run_repro_smoking(std::uint64_t seed, const ReproSettings& settings = {});

std::string to_json(const HeatingRepro& repro);
std::string to_json(const SmokingRepro& repro);
/// distribution,value,probability rows for the three S* mass functions.
std::string pmf_csv(const SmokingRepro& repro);

}  // namespace teleo
