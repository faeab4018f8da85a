#include "teleo/operators.hpp"

#include <cmath>
#include <set>

#include "teleo/error.hpp"

namespace teleo {

namespace {

std::string format_value(double v) { return to_string(Expression::number(v)); }

EndogenousVar& endogenous_or_throw(ScmModel& model, std::string_view target) {
  for (auto& v : model.endogenous) {
    if (v.name == target) return v;
  }
  throw ModelError("intervention target '" + std::string(target) + "' is not an endogenous variable of '" +
                   model.name + "'");
}

void check_finite(double value, std::string_view target) {
  if (!std::isfinite(value)) throw ModelError("intervention value for '" + std::string(target) + "' must be finite");
}

// Base world followed by `_star` replicas sharing the exogenous partners.
ScmModel twin_skeleton(const ScmModel& model) {
  require_valid(model);
  for (const auto& v : model.endogenous) {
    if (is_replica_name(v.name)) {
      throw ModelError("'" + v.name + "' already carries the replica suffix; cannot twin '" + model.name + "'");
    }
  }
  std::set<std::string> base;
  for (const auto& v : model.endogenous) base.insert(v.name);
  auto to_replica = [&](const std::string& n) { return base.count(n) ? replica_name(n) : n; };

  ScmModel out = model;
  for (const auto& v : model.endogenous) {
    out.endogenous.push_back({replica_name(v.name), v.exogenous, rename_variables(v.equation, to_replica)});
  }
  require_valid(out);
  return out;
}

}  // namespace

std::string describe(const InterventionSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DoIntervention>) {
          return "do(" + s.target + " = " + format_value(s.value) + ")";
        } else if constexpr (std::is_same_v<T, MechanismChange>) {
          return "do(" + s.target + " = " + to_string(s.equation) + ")";
        } else if constexpr (std::is_same_v<T, CounterfactualQuery>) {
          std::string ev;
          for (const auto& [k, v] : s.evidence) ev += (ev.empty() ? "" : ", ") + k + " = " + format_value(v);
          return "counterfactual(" + s.target + "_star = " + format_value(s.value) + " | " + ev + ")";
        } else {
          return "do*(" + replica_name(s.target) + " = " + to_string(s.policy) + ")";
        }
      },
      spec);
}

ScmModel apply_do(const ScmModel& model, std::string_view target, double value) {
  check_finite(value, target);
  ScmModel out = model;
  endogenous_or_throw(out, target).equation = Expression::number(value);
  return out;
}

ScmModel apply_mechanism_change(const ScmModel& model, std::string_view target, const Expression& equation) {
  ScmModel out = model;
  EndogenousVar& var = endogenous_or_throw(out, target);
  for (const auto& ref : free_variables(equation)) {
    if (ref == var.name) throw ModelError("mechanism for '" + var.name + "' references itself");
    if (ref == var.exogenous || model.is_endogenous(ref)) continue;
    if (model.is_exogenous(ref)) {
      throw ModelError("mechanism for '" + var.name + "' references exogenous '" + ref + "', which is not its partner");
    }
    throw ModelError("mechanism for '" + var.name + "' references unknown variable '" + ref + "'");
  }
  var.equation = equation;
  for (const auto& v : validate_model(out)) {
    if (v.rule == "cycle") throw ModelError("mechanism change on '" + var.name + "' introduces a cycle through '" + v.variable + "'");
  }
  return out;
}

TwinModel build_twin(const ScmModel& model, const CounterfactualQuery& query) {
  check_finite(query.value, query.target);
  if (!model.is_endogenous(query.target)) {
    throw ModelError("counterfactual target '" + query.target + "' is not an endogenous variable");
  }
  for (const auto& [name, value] : query.evidence) {
    if (!model.is_endogenous(name)) throw ModelError("evidence variable '" + name + "' is not endogenous");
    if (!std::isfinite(value)) throw ModelError("evidence value for '" + name + "' must be finite");
  }
  TwinModel twin;
  twin.model = twin_skeleton(model);
  twin.kind = TwinKind::Counterfactual;
  twin.target = query.target;
  twin.evidence = query.evidence;
  endogenous_or_throw(twin.model, replica_name(query.target)).equation = Expression::number(query.value);
  return twin;
}

TwinModel build_sfm(const ScmModel& model, const IntentionalIntervention& spec) {
  return build_sfm(model, spec, model);
}

TwinModel build_sfm(const ScmModel& model, const IntentionalIntervention& spec, const ScmModel& scope) {
  if (!model.is_endogenous(spec.target)) {
    throw ModelError("intentional target '" + spec.target + "' is not an endogenous variable");
  }
  require_valid(model);
  require_valid(scope);
  if (!scope.is_endogenous(spec.target)) {
    throw ModelError("intentional target '" + spec.target + "' is not an endogenous variable of the scope model");
  }
  const auto desc = descendants(induce_dag(scope), spec.target);
  for (const auto& ref : free_variables(spec.policy)) {
    if (!model.is_endogenous(ref)) {
      throw ModelError("policy for '" + spec.target + "' reads '" + ref + "', which is not an endogenous variable");
    }
    if (!desc.count(ref)) {
      throw ModelError("policy for '" + spec.target + "' reads '" + ref + "', which is not a descendant of '" +
                       spec.target + "'");
    }
  }
  TwinModel twin;
  twin.model = twin_skeleton(model);
  twin.kind = TwinKind::Final;
  twin.target = spec.target;
  endogenous_or_throw(twin.model, replica_name(spec.target)).equation = spec.policy;
  // Policy edges only run base -> replica, so acyclicity is inherited.
  require_valid(twin.model);
  return twin;
}

std::variant<ScmModel, TwinModel> apply(const ScmModel& model, const InterventionSpec& spec) {
  return std::visit(
      [&](const auto& s) -> std::variant<ScmModel, TwinModel> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DoIntervention>) {
          return apply_do(model, s.target, s.value);
        } else if constexpr (std::is_same_v<T, MechanismChange>) {
          return apply_mechanism_change(model, s.target, s.equation);
        } else if constexpr (std::is_same_v<T, CounterfactualQuery>) {
          return build_twin(model, s);
        } else {
          return build_sfm(model, s);
        }
      },
      spec);
}

}  // namespace teleo
