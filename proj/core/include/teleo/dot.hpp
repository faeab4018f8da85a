#pragma once

#include <string>

#include "teleo/scm.hpp"

namespace teleo {

/// Graphviz digraph: endogenous variables as solid ellipses, exogenous as
/// dashed ellipses with dashed edges. Unobserved endogenous variables of a
/// twin (the base world of a final model, the replica of a counterfactual)
/// and the edges leaving them are gray.
std::string to_dot(const ScmModel& model);
std::string to_dot(const TwinModel& twin);

}  // namespace teleo
