#include "teleo/scm.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include "teleo/error.hpp"

namespace teleo {

std::string describe(const DistributionSpec& dist) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* b = std::get_if<Bernoulli>(&dist)) {
    os << "Bernoulli(" << b->p << ")";
  } else {
    const auto& n = std::get<Normal>(dist);
    os << "Normal(" << n.mean << ", " << n.variance << ")";
  }
  return os.str();
}

const EndogenousVar* ScmModel::find_endogenous(std::string_view n) const {
  for (const auto& v : endogenous) {
    if (v.name == n) return &v;
  }
  return nullptr;
}

const ExogenousVar* ScmModel::find_exogenous(std::string_view n) const {
  for (const auto& v : exogenous) {
    if (v.name == n) return &v;
  }
  return nullptr;
}

std::vector<std::string> ScmModel::endogenous_names() const {
  std::vector<std::string> out;
  out.reserve(endogenous.size());
  for (const auto& v : endogenous) out.push_back(v.name);
  return out;
}

std::vector<std::string> ScmModel::exogenous_names() const {
  std::vector<std::string> out;
  out.reserve(exogenous.size());
  for (const auto& v : exogenous) out.push_back(v.name);
  return out;
}

namespace {

bool valid_distribution(const DistributionSpec& dist) {
  if (const auto* b = std::get_if<Bernoulli>(&dist)) return b->p >= 0.0 && b->p <= 1.0;
  const auto& n = std::get<Normal>(dist);
  return std::isfinite(n.mean) && std::isfinite(n.variance) && n.variance >= 0.0;
}

std::vector<Dag::Edge> endogenous_edges(const ScmModel& model) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < model.endogenous.size(); ++i) index.emplace(model.endogenous[i].name, i);
  std::vector<Dag::Edge> edges;
  for (std::size_t j = 0; j < model.endogenous.size(); ++j) {
    for (const auto& ref : free_variables(model.endogenous[j].equation)) {
      const auto it = index.find(ref);
      if (it != index.end()) edges.emplace_back(it->second, j);
    }
  }
  return edges;
}

}  // namespace

std::vector<Violation> validate_model(const ScmModel& model) {
  std::vector<Violation> out;
  auto report = [&](std::string rule, const std::string& var, std::string msg) {
    out.push_back({std::move(rule), var, std::move(msg)});
  };

  std::set<std::string> seen;
  auto check_name = [&](const std::string& name) {
    if (!is_valid_identifier(name)) report("identifier", name, "'" + name + "' is not a valid identifier");
    if (!seen.insert(name).second) report("duplicate-name", name, "'" + name + "' is declared more than once");
  };
  for (const auto& v : model.endogenous) check_name(v.name);
  for (const auto& u : model.exogenous) check_name(u.name);

  for (const auto& v : model.endogenous) {
    if (is_replica_name(v.name) && !model.is_endogenous(strip_replica(v.name))) {
      report("reserved-suffix", v.name, "'" + v.name + "' uses the reserved replica suffix without a base variable");
    }
  }

  // Partnering: one exogenous per endogenous; a base variable and its replica
  // may share theirs.
  std::map<std::string, std::vector<std::string>> users;
  for (const auto& v : model.endogenous) {
    if (!model.is_exogenous(v.exogenous)) {
      report("missing-partner", v.name, "exogenous partner '" + v.exogenous + "' of '" + v.name + "' is not declared");
      continue;
    }
    users[v.exogenous].push_back(v.name);
  }
  for (const auto& [u, names] : users) {
    bool ok = names.size() == 1;
    if (names.size() == 2) {
      ok = names[1] == replica_name(names[0]) || names[0] == replica_name(names[1]);
    }
    if (!ok) {
      std::string list;
      for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
      report("shared-partner", names.front(), "exogenous '" + u + "' partners several variables: " + list);
    }
  }
  for (const auto& u : model.exogenous) {
    if (!users.count(u.name)) report("orphan-exogenous", u.name, "exogenous '" + u.name + "' partners no variable");
    if (!valid_distribution(u.distribution)) {
      report("distribution", u.name, "invalid distribution " + describe(u.distribution) + " for '" + u.name + "'");
    }
  }

  for (const auto& v : model.endogenous) {
    for (const auto& ref : free_variables(v.equation)) {
      if (ref == v.name) {
        report("self-reference", v.name, "equation of '" + v.name + "' references itself");
      } else if (model.is_exogenous(ref)) {
        if (ref != v.exogenous) {
          report("foreign-exogenous", v.name,
                 "equation of '" + v.name + "' references exogenous '" + ref + "' which is not its partner");
        }
      } else if (!model.is_endogenous(ref)) {
        report("unknown-variable", v.name, "equation of '" + v.name + "' references unknown variable '" + ref + "'");
      }
    }
  }

  std::vector<std::size_t> order, leftover;
  if (!topological_indices(model.endogenous.size(), endogenous_edges(model), order, &leftover)) {
    for (std::size_t i : leftover) {
      report("cycle", model.endogenous[i].name, "'" + model.endogenous[i].name + "' lies on a directed cycle");
    }
  }
  return out;
}

void require_valid(const ScmModel& model) {
  const auto violations = validate_model(model);
  if (violations.empty()) return;
  std::string msg = "invalid model '" + model.name + "':";
  for (const auto& v : violations) msg += "\n  [" + v.rule + "] " + v.message;
  throw ModelError(msg);
}

Dag induce_dag(const ScmModel& model) {
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& v : model.endogenous) {
    for (const auto& ref : free_variables(v.equation)) {
      if (model.is_endogenous(ref)) edges.emplace_back(ref, v.name);
    }
  }
  return Dag(model.endogenous_names(), edges);
}

Dag induce_full_graph(const ScmModel& model) {
  std::vector<std::string> vertices = model.endogenous_names();
  for (const auto& u : model.exogenous) vertices.push_back(u.name);
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& v : model.endogenous) {
    for (const auto& ref : free_variables(v.equation)) {
      if (model.is_endogenous(ref) || model.is_exogenous(ref)) edges.emplace_back(ref, v.name);
    }
  }
  return Dag(std::move(vertices), edges);
}

// ---------------------------------------------------------------------------

std::string replica_name(std::string_view base) { return std::string(base) + std::string(kReplicaSuffix); }

bool is_replica_name(std::string_view name) {
  return name.size() > kReplicaSuffix.size() && name.ends_with(kReplicaSuffix);
}

std::string strip_replica(std::string_view name) {
  if (!is_replica_name(name)) return std::string(name);
  return std::string(name.substr(0, name.size() - kReplicaSuffix.size()));
}

std::string_view to_string(TwinKind kind) {
  return kind == TwinKind::Final ? "final" : "counterfactual";
}

std::vector<std::string> TwinModel::base_names() const {
  std::vector<std::string> out;
  const std::size_t half = model.endogenous.size() / 2;
  for (std::size_t i = 0; i < half; ++i) out.push_back(model.endogenous[i].name);
  return out;
}

std::vector<std::string> TwinModel::replica_names() const {
  std::vector<std::string> out;
  const std::size_t half = model.endogenous.size() / 2;
  for (std::size_t i = half; i < model.endogenous.size(); ++i) out.push_back(model.endogenous[i].name);
  return out;
}

std::vector<std::string> TwinModel::observed() const {
  return kind == TwinKind::Final ? replica_names() : base_names();
}

ScmModel TwinModel::base_world() const {
  ScmModel base;
  base.name = model.name;
  base.exogenous = model.exogenous;
  const std::size_t half = model.endogenous.size() / 2;
  base.endogenous.assign(model.endogenous.begin(), model.endogenous.begin() + static_cast<std::ptrdiff_t>(half));
  return base;
}

std::vector<Violation> validate_twin(const TwinModel& twin) {
  std::vector<Violation> out = validate_model(twin.model);
  const auto& endo = twin.model.endogenous;
  if (endo.size() % 2 != 0) {
    out.push_back({"twin-shape", twin.model.name, "twin model must have an even number of endogenous variables"});
    return out;
  }
  const std::size_t half = endo.size() / 2;
  auto to_replica = [&](const std::string& n) {
    for (std::size_t i = 0; i < half; ++i) {
      if (endo[i].name == n) return replica_name(n);
    }
    return n;
  };
  bool target_found = false;
  for (std::size_t i = 0; i < half; ++i) {
    const auto& base = endo[i];
    const auto& rep = endo[half + i];
    if (is_replica_name(base.name) || rep.name != replica_name(base.name) || rep.exogenous != base.exogenous) {
      out.push_back({"twin-shape", rep.name,
                     "position " + std::to_string(half + i) + " must hold '" + replica_name(base.name) +
                         "' sharing exogenous '" + base.exogenous + "'"});
      continue;
    }
    if (base.name == twin.target) {
      target_found = true;
      const auto refs = free_variables(rep.equation);
      if (twin.kind == TwinKind::Counterfactual && !refs.empty()) {
        out.push_back({"replica-mismatch", rep.name, "counterfactual replica target must be a constant"});
      }
      if (twin.kind == TwinKind::Final) {
        // Descendant scope is checked when the model is built; a final model
        // built after do() on the base no longer shows the original edges.
        for (const auto& r : refs) {
          if (is_replica_name(r) || !twin.model.is_endogenous(r)) {
            out.push_back({"policy-scope", rep.name,
                           "policy of '" + rep.name + "' reads '" + r + "', which is not a base-world variable"});
          }
        }
      }
      continue;
    }
    if (!(rep.equation == rename_variables(base.equation, to_replica))) {
      out.push_back({"replica-mismatch", rep.name, "equation of '" + rep.name + "' does not mirror '" + base.name + "'"});
    }
  }
  if (!target_found) {
    out.push_back({"twin-shape", twin.target, "twin target '" + twin.target + "' is not a base variable"});
  }
  for (const auto& [name, value] : twin.evidence) {
    bool ok = std::isfinite(value);
    bool base_var = false;
    for (std::size_t i = 0; i < half; ++i) base_var = base_var || endo[i].name == name;
    if (!ok || !base_var) {
      out.push_back({"evidence", name, "evidence on '" + name + "' must be a finite value on a base-world variable"});
    }
  }
  if (!(twin.tolerance >= 0.0)) {
    out.push_back({"evidence", twin.model.name, "evidence tolerance must be nonnegative"});
  }
  return out;
}

}  // namespace teleo
