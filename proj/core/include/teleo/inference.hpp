#pragma once

// Teleological inference: Markov-condition checks, agent detection from
// violated independencies, verification of a hypothesised final model, and
// intention discovery by intervening on descendants of the acted-on variable.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "teleo/dataset.hpp"
#include "teleo/dsep.hpp"
#include "teleo/operators.hpp"
#include "teleo/scm.hpp"
#include "teleo/stats.hpp"

namespace teleo {

struct TestedStatement {
  IndependenceStatement statement;
  double partial_correlation = 0.0;
  std::optional<TestResult> result;  // empty when the input was degenerate
  std::string note;                  // degeneracy reason
};

struct MarkovReport {
  std::vector<TestedStatement> tested;
  /// Statements the graph implies but the data rejects.
  std::vector<IndependenceStatement> violations;
  double alpha = kDefaultAlpha;
  std::size_t max_cond = kDefaultMaxCond;

  bool violated() const { return !violations.empty(); }
  /// No implied independencies among the observed variables: consistency is vacuous.
  bool vacuous() const { return tested.empty(); }
};

/// Tests every independence implied by `dag` among `observed` with a Fisher
/// z-test on the partial correlation. Degenerate statements are reported but
/// never count as violations. Throws Error when a column is missing.
MarkovReport markov_check(const Dag& dag, const Dataset& data, const std::set<std::string>& observed,
                          double alpha = kDefaultAlpha, std::size_t max_cond = kDefaultMaxCond);

struct CandidatePair {
  std::string x;
  std::string y;
  std::vector<std::string> common_children;
};

struct DetectionReport {
  MarkovReport markov;
  bool detected = false;
  /// Heuristic localisation: variables appearing in a violated statement.
  std::vector<std::string> candidates;
  std::vector<CandidatePair> pairs;
};

/// Data columns are the model's endogenous names (an observer labels the
/// intervened world with base names).
DetectionReport detect_agent(const ScmModel& model, const Dataset& data, double alpha = kDefaultAlpha,
                             std::size_t max_cond = kDefaultMaxCond);

/// Markov check of the final model's full graph (shared exogenous vertices
/// included) restricted to its observed replica variables. Columns may carry
/// either the replica names or the base names.
MarkovReport verify_sfm_hypothesis(const TwinModel& sfm, const Dataset& data, double alpha = kDefaultAlpha,
                                   std::size_t max_cond = kDefaultMaxCond);

// ---------------------------------------------------------------------------
// Intention discovery

/// Source of observed (replica) data from a system under a chosen
/// intervention on the base mechanism.
class AgentSystem {
 public:
  virtual ~AgentSystem() = default;
  virtual Dataset sample(const DoIntervention& intervention, std::size_t n, std::uint64_t seed) const = 0;
};

/// Simulation: do() on the base model, then the hidden intentional
/// intervention, then sampling of the observed world.
class SimulatedAgent final : public AgentSystem {
 public:
  SimulatedAgent(ScmModel base, IntentionalIntervention policy);
  Dataset sample(const DoIntervention& intervention, std::size_t n, std::uint64_t seed) const override;

 private:
  ScmModel base_;
  IntentionalIntervention policy_;
};

struct ValuePair {
  double low = 0.0;
  double high = 1.0;
};

struct CandidateExperiment {
  std::string variable;
  ValuePair values;
  /// Mean of target_star under do(variable = low) and do(variable = high).
  double mean_low = 0.0;
  double mean_high = 0.0;
  TestResult result;  // alpha is the Bonferroni threshold
  bool listened = false;
};

struct DiscoveryReport {
  std::string target;
  bool binary_target = true;
  double threshold = kDefaultAlpha;
  std::vector<CandidateExperiment> candidates;
  std::set<std::string> listened;
};

struct DiscoveryOptions {
  std::size_t n = 10'000;
  double alpha = kDefaultAlpha;
  std::uint64_t seed = 0;
  /// Missing entries fall back to default_value_pairs.
  std::map<std::string, ValuePair> value_pairs;
};

/// (0, 1) for candidates whose sampled values are all 0/1, otherwise
/// (mean - sd, mean + sd) estimated from n base-model rows.
std::map<std::string, ValuePair> default_value_pairs(const ScmModel& base, const std::vector<std::string>& candidates,
                                                     std::size_t n, std::uint64_t seed);

/// For each candidate c (in the given order), samples target_star under
/// do(c = low) and do(c = high) from the same exogenous stream, holding all
/// else equal, and tests for a shift: two-proportion test for 0/1 targets,
/// Fisher z on a regime indicator otherwise. A candidate is listened to when
/// p < alpha / |candidates|. Throws ModelError if a candidate is not a proper
/// descendant of the target.
DiscoveryReport discover_intention(const ScmModel& base, const AgentSystem& agent, const std::string& target,
                                   const std::vector<std::string>& candidates, const DiscoveryOptions& options = {});

}  // namespace teleo
