#pragma once

// Model-to-model operators: perfect intervention, mechanism change,
// counterfactual twin construction and intentional intervention.

#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "teleo/expr.hpp"
#include "teleo/scm.hpp"

namespace teleo {

/// do(target = value)
struct DoIntervention {
  std::string target;
  double value = 0.0;
};

/// do(target = equation)
struct MechanismChange {
  std::string target;
  Expression equation;
};

/// Evidence on the factual world, then do(target_star = value) in the replica.
struct CounterfactualQuery {
  std::string target;
  double value = 0.0;
  std::map<std::string, double, std::less<>> evidence;
};

/// An agent sets target_star by a policy that reads base-world (counterfactual)
/// descendants of the target.
struct IntentionalIntervention {
  std::string target;
  Expression policy;
};

using InterventionSpec = std::variant<DoIntervention, MechanismChange, CounterfactualQuery, IntentionalIntervention>;

std::string describe(const InterventionSpec& spec);

/// Target's equation becomes the constant. Its exogenous partner stays declared but unused.
ScmModel apply_do(const ScmModel& model, std::string_view target, double value);

/// Throws ModelError on unknown variables, foreign exogenous references or cycles.
ScmModel apply_mechanism_change(const ScmModel& model, std::string_view target, const Expression& equation);

/// Twin with observed base world and a replica intervened at target_star.
TwinModel build_twin(const ScmModel& model, const CounterfactualQuery& query);

/// Structural final model: unchanged base world, replica whose target_star
/// follows the policy evaluated on base-world variables. Every variable the
/// policy reads must be a descendant of the target (the target included).
TwinModel build_sfm(const ScmModel& model, const IntentionalIntervention& spec);
/// As above, with descendants taken in `scope` rather than `model`. Used when
/// `model` is `scope` after do(): the agent's goals are fixed by the
/// unintervened system.
TwinModel build_sfm(const ScmModel& model, const IntentionalIntervention& spec, const ScmModel& scope);

/// Dispatches on the spec kind: plain model for do/mechanism, twin otherwise.
std::variant<ScmModel, TwinModel> apply(const ScmModel& model, const InterventionSpec& spec);

}  // namespace teleo
