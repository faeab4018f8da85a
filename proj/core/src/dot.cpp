#include "teleo/dot.hpp"

#include <set>

namespace teleo {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string render(const ScmModel& model, const std::set<std::string>& gray) {
  std::string out = "digraph " + quote(model.name) + " {\n";
  if (model.endogenous.empty() && model.exogenous.empty()) return out + "}\n";

  out += "  node [shape=ellipse];\n";
  for (const auto& v : model.endogenous) {
    out += "  " + quote(v.name) + " [style=solid";
    if (gray.count(v.name)) out += ", color=gray, fontcolor=gray";
    out += "];\n";
  }
  for (const auto& u : model.exogenous) out += "  " + quote(u.name) + " [style=dashed];\n";

  const Dag full = induce_full_graph(model);
  for (const auto& [from, to] : full.named_edges()) {
    const bool exogenous = model.is_exogenous(from);
    std::string attrs;
    if (exogenous) attrs = "style=dashed";
    if (gray.count(from) || (exogenous && gray.count(to))) attrs += std::string(attrs.empty() ? "" : ", ") + "color=gray";
    out += "  " + quote(from) + " -> " + quote(to) + (attrs.empty() ? "" : " [" + attrs + "]") + ";\n";
  }
  return out + "}\n";
}

}  // namespace

std::string to_dot(const ScmModel& model) { return render(model, {}); }

std::string to_dot(const TwinModel& twin) {
  const auto observed = twin.observed();
  const std::set<std::string> seen(observed.begin(), observed.end());
  std::set<std::string> gray;
  for (const auto& v : twin.model.endogenous) {
    if (!seen.count(v.name)) gray.insert(v.name);
  }
  return render(twin.model, gray);
}

}  // namespace teleo
