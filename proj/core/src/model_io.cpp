#include "teleo/model_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "teleo/error.hpp"

namespace teleo {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string child(const std::string& ptr, std::string_view key) {
  // JSON pointer escaping: '~' -> "~0", '/' -> "~1".
  std::string out = ptr + "/";
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}
std::string child(const std::string& ptr, std::size_t index) { return ptr + "/" + std::to_string(index); }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what(), "");
  }
}

void require_object(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw SchemaError("expected an object", ptr.empty() ? "/" : ptr);
}

void only_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& ptr) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) throw SchemaError("unknown key '" + key + "'", child(ptr, key));
  }
}

const json& member(const json& obj, std::string_view key, const std::string& ptr) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) throw SchemaError("missing required key '" + std::string(key) + "'", ptr.empty() ? "/" : ptr);
  return *it;
}

std::string get_string(const json& obj, std::string_view key, const std::string& ptr) {
  const json& v = member(obj, key, ptr);
  if (!v.is_string()) throw SchemaError("expected a string", child(ptr, key));
  return v.get<std::string>();
}

double as_number(const json& v, const std::string& ptr) {
  if (!v.is_number()) throw SchemaError("expected a number", ptr);
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError("expected a finite number", ptr);
  return d;
}

double get_number(const json& obj, std::string_view key, const std::string& ptr) {
  return as_number(member(obj, key, ptr), child(ptr, key));
}

Expression get_expression(const json& obj, std::string_view key, const std::string& ptr) {
  const std::string src = get_string(obj, key, ptr);
  try {
    return parse_expression(src);
  } catch (const ParseError& e) {
    throw SchemaError(e.what(), child(ptr, key));
  }
}

std::map<std::string, double, std::less<>> get_evidence(const json& obj, std::string_view key,
                                                         const std::string& ptr) {
  std::map<std::string, double, std::less<>> out;
  const json& ev = member(obj, key, ptr);
  const std::string here = child(ptr, key);
  require_object(ev, here);
  for (const auto& [name, value] : ev.items()) out[name] = as_number(value, child(here, name));
  return out;
}

DistributionSpec parse_distribution(const json& j, const std::string& ptr) {
  require_object(j, ptr);
  const std::string type = get_string(j, "type", ptr);
  if (type == "bernoulli") {
    only_keys(j, {"type", "p"}, ptr);
    return Bernoulli{get_number(j, "p", ptr)};
  }
  if (type == "normal") {
    only_keys(j, {"type", "mean", "variance"}, ptr);
    return Normal{get_number(j, "mean", ptr), get_number(j, "variance", ptr)};
  }
  throw SchemaError("unknown distribution type '" + type + "'", child(ptr, "type"));
}

ojson distribution_json(const DistributionSpec& dist) {
  ojson out = ojson::object();
  if (const auto* b = std::get_if<Bernoulli>(&dist)) {
    out["type"] = "bernoulli";
    out["p"] = b->p;
  } else {
    const auto& n = std::get<Normal>(dist);
    out["type"] = "normal";
    out["mean"] = n.mean;
    out["variance"] = n.variance;
  }
  return out;
}

ojson evidence_json(const std::map<std::string, double, std::less<>>& ev) {
  ojson out = ojson::object();
  for (const auto& [k, v] : ev) out[k] = v;
  return out;
}

}  // namespace

AnyModel parse_model_json(std::string_view text) {
  const json root = parse_json(text);
  const std::string top;
  require_object(root, top);
  only_keys(root, {"name", "endogenous", "exogenous", "twin"}, top);

  ScmModel model;
  model.name = get_string(root, "name", top);

  const json& endo = member(root, "endogenous", top);
  if (!endo.is_array()) throw SchemaError("expected an array", "/endogenous");
  for (std::size_t i = 0; i < endo.size(); ++i) {
    const std::string ptr = child("/endogenous", i);
    require_object(endo[i], ptr);
    only_keys(endo[i], {"name", "exogenous", "equation"}, ptr);
    model.endogenous.push_back(
        {get_string(endo[i], "name", ptr), get_string(endo[i], "exogenous", ptr), get_expression(endo[i], "equation", ptr)});
  }

  const json& exo = member(root, "exogenous", top);
  if (!exo.is_array()) throw SchemaError("expected an array", "/exogenous");
  for (std::size_t i = 0; i < exo.size(); ++i) {
    const std::string ptr = child("/exogenous", i);
    require_object(exo[i], ptr);
    only_keys(exo[i], {"name", "distribution"}, ptr);
    model.exogenous.push_back(
        {get_string(exo[i], "name", ptr), parse_distribution(member(exo[i], "distribution", ptr), child(ptr, "distribution"))});
  }

  const auto twin_it = root.find("twin");
  if (twin_it == root.end()) return model;

  const std::string ptr = "/twin";
  const json& tj = *twin_it;
  require_object(tj, ptr);
  only_keys(tj, {"kind", "target", "evidence", "tolerance"}, ptr);
  TwinModel twin;
  twin.model = std::move(model);
  const std::string kind = get_string(tj, "kind", ptr);
  if (kind == "final") {
    twin.kind = TwinKind::Final;
  } else if (kind == "counterfactual") {
    twin.kind = TwinKind::Counterfactual;
  } else {
    throw SchemaError("twin kind must be 'final' or 'counterfactual'", child(ptr, "kind"));
  }
  twin.target = get_string(tj, "target", ptr);
  if (tj.contains("evidence")) twin.evidence = get_evidence(tj, "evidence", ptr);
  if (tj.contains("tolerance")) {
    twin.tolerance = get_number(tj, "tolerance", ptr);
    if (twin.tolerance < 0.0) throw SchemaError("tolerance must be nonnegative", child(ptr, "tolerance"));
  }
  return twin;
}

std::string model_to_json(const AnyModel& any) {
  const ScmModel& model = underlying(any);
  ojson root = ojson::object();
  root["name"] = model.name;
  root["endogenous"] = ojson::array();
  for (const auto& v : model.endogenous) {
    ojson e = ojson::object();
    e["name"] = v.name;
    e["exogenous"] = v.exogenous;
    e["equation"] = to_string(v.equation);
    root["endogenous"].push_back(std::move(e));
  }
  root["exogenous"] = ojson::array();
  for (const auto& u : model.exogenous) {
    ojson e = ojson::object();
    e["name"] = u.name;
    e["distribution"] = distribution_json(u.distribution);
    root["exogenous"].push_back(std::move(e));
  }
  if (const auto* twin = std::get_if<TwinModel>(&any)) {
    ojson t = ojson::object();
    t["kind"] = std::string(to_string(twin->kind));
    t["target"] = twin->target;
    if (!twin->evidence.empty()) t["evidence"] = evidence_json(twin->evidence);
    if (twin->tolerance != 0.0) t["tolerance"] = twin->tolerance;
    root["twin"] = std::move(t);
  }
  return root.dump(2) + "\n";
}

const ScmModel& underlying(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> const ScmModel& {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, TwinModel>) {
          return m.model;
        } else {
          return m;
        }
      },
      model);
}

AnyModel read_model(const std::filesystem::path& path) { return parse_model_json(read_text_file(path)); }

void write_model(const AnyModel& model, const std::filesystem::path& path) {
  write_text_file(path, model_to_json(model));
}

InterventionSpec parse_intervention_json(std::string_view text) {
  const json root = parse_json(text);
  const std::string top;
  require_object(root, top);
  const std::string op = get_string(root, "op", top);
  if (op == "do") {
    only_keys(root, {"op", "target", "value"}, top);
    return DoIntervention{get_string(root, "target", top), get_number(root, "value", top)};
  }
  if (op == "mechanism") {
    only_keys(root, {"op", "target", "equation"}, top);
    return MechanismChange{get_string(root, "target", top), get_expression(root, "equation", top)};
  }
  if (op == "counterfactual") {
    only_keys(root, {"op", "target", "value", "evidence"}, top);
    CounterfactualQuery q{get_string(root, "target", top), get_number(root, "value", top), {}};
    if (root.contains("evidence")) q.evidence = get_evidence(root, "evidence", top);
    return q;
  }
  if (op == "intentional") {
    only_keys(root, {"op", "target", "equation"}, top);
    return IntentionalIntervention{get_string(root, "target", top), get_expression(root, "equation", top)};
  }
  throw SchemaError("unknown op '" + op + "'", "/op");
}

std::string intervention_to_json(const InterventionSpec& spec) {
  ojson out = ojson::object();
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DoIntervention>) {
          out["op"] = "do";
          out["target"] = s.target;
          out["value"] = s.value;
        } else if constexpr (std::is_same_v<T, MechanismChange>) {
          out["op"] = "mechanism";
          out["target"] = s.target;
          out["equation"] = to_string(s.equation);
        } else if constexpr (std::is_same_v<T, CounterfactualQuery>) {
          out["op"] = "counterfactual";
          out["target"] = s.target;
          out["value"] = s.value;
          out["evidence"] = evidence_json(s.evidence);
        } else {
          out["op"] = "intentional";
          out["target"] = s.target;
          out["equation"] = to_string(s.policy);
        }
      },
      spec);
  return out.dump(2) + "\n";
}

InterventionSpec read_intervention(const std::filesystem::path& path) {
  return parse_intervention_json(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace teleo
