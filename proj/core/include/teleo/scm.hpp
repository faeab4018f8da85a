#pragma once

// Structural causal models: endogenous variables, each computed by a
// structural equation from other endogenous variables and one private
// exogenous noise term, plus independent exogenous distributions.

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "teleo/dag.hpp"
#include "teleo/expr.hpp"

namespace teleo {

struct Bernoulli {
  double p = 0.5;
  friend bool operator==(const Bernoulli&, const Bernoulli&) = default;
};

/// Normal(mean, variance); the second parameter is a variance, not a
/// standard deviation. Variance 0 is a point mass.
struct Normal {
  double mean = 0.0;
  double variance = 1.0;
  friend bool operator==(const Normal&, const Normal&) = default;
};

using DistributionSpec = std::variant<Bernoulli, Normal>;

std::string describe(const DistributionSpec& dist);

struct EndogenousVar {
  std::string name;
  std::string exogenous;  // partner noise term
  Expression equation;
  friend bool operator==(const EndogenousVar&, const EndogenousVar&) = default;
};

struct ExogenousVar {
  std::string name;
  DistributionSpec distribution;
  friend bool operator==(const ExogenousVar&, const ExogenousVar&) = default;
};

struct ScmModel {
  std::string name;
  std::vector<EndogenousVar> endogenous;
  std::vector<ExogenousVar> exogenous;

  const EndogenousVar* find_endogenous(std::string_view n) const;
  const ExogenousVar* find_exogenous(std::string_view n) const;
  bool is_endogenous(std::string_view n) const { return find_endogenous(n) != nullptr; }
  bool is_exogenous(std::string_view n) const { return find_exogenous(n) != nullptr; }
  std::vector<std::string> endogenous_names() const;
  std::vector<std::string> exogenous_names() const;

  friend bool operator==(const ScmModel&, const ScmModel&) = default;
};

struct Violation {
  std::string rule;
  std::string variable;
  std::string message;
};

/// Checks every structural rule; an empty result means the model is valid.
/// Rule ids: identifier, duplicate-name, missing-partner, shared-partner,
/// orphan-exogenous, self-reference, unknown-variable, foreign-exogenous,
/// cycle, distribution, reserved-suffix.
std::vector<Violation> validate_model(const ScmModel& model);

/// Throws ModelError carrying every violation when the model is invalid.
void require_valid(const ScmModel& model);

/// Graph over endogenous variables: A -> B iff A appears in B's equation.
Dag induce_dag(const ScmModel& model);

/// Endogenous vertices followed by exogenous vertices, with U -> X whenever
/// U appears in X's equation. Unused exogenous variables stay isolated.
Dag induce_full_graph(const ScmModel& model);

// ---------------------------------------------------------------------------
// Twin models

inline constexpr std::string_view kReplicaSuffix = "_star";

std::string replica_name(std::string_view base);
bool is_replica_name(std::string_view name);
/// "X_star" -> "X"; names without the suffix are returned unchanged.
std::string strip_replica(std::string_view name);

enum class TwinKind {
  Counterfactual,  // factual world observed, starred replica imagined
  Final,           // starred (intervened) world observed, base world counterfactual
};

std::string_view to_string(TwinKind kind);

/// Base world followed by its `_star` replica over a shared exogenous set.
struct TwinModel {
  ScmModel model;
  TwinKind kind = TwinKind::Final;
  std::string target;  // base name of the intervened variable
  /// Abduction evidence on base-world variables (empty = unconditioned).
  std::map<std::string, double, std::less<>> evidence;
  double tolerance = 0.0;

  std::vector<std::string> base_names() const;
  std::vector<std::string> replica_names() const;
  /// Starred names for Final twins, base names for Counterfactual twins.
  std::vector<std::string> observed() const;
  ScmModel base_world() const;

  friend bool operator==(const TwinModel&, const TwinModel&) = default;
};

/// validate_model plus the replica rules: even size, replicas mirror base
/// equations except at the target, evidence keys are base variables.
/// Extra rule ids: twin-shape, replica-mismatch, policy-scope, evidence.
std::vector<Violation> validate_twin(const TwinModel& twin);

}  // namespace teleo
