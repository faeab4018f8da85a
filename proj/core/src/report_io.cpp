#include "teleo/report_io.hpp"

#include <json.hpp>

#include "report_json.hpp"

namespace teleo {

namespace detail {

ojson statement_json(const IndependenceStatement& s) {
  ojson out = ojson::object();
  out["x"] = s.x;
  out["y"] = s.y;
  out["given"] = ojson::array();
  for (const auto& z : s.given) out["given"].push_back(z);
  return out;
}

ojson test_json(const TestResult& t) {
  ojson out = ojson::object();
  out["statistic"] = t.statistic;
  out["p_value"] = t.p_value;
  out["n"] = t.n;
  out["alpha"] = t.alpha;
  out["dependent"] = t.dependent;
  return out;
}

ojson markov_json(const MarkovReport& r) {
  ojson out = ojson::object();
  out["verdict"] = r.violated() ? "violated" : "consistent";
  out["vacuous"] = r.vacuous();
  if (r.vacuous()) out["warning"] = "no independencies are implied among the observed variables";
  out["alpha"] = r.alpha;
  out["max_cond"] = r.max_cond;
  out["tested"] = ojson::array();
  for (const auto& t : r.tested) {
    ojson e = statement_json(t.statement);
    e["partial_correlation"] = t.partial_correlation;
    if (t.result) {
      e["statistic"] = t.result->statistic;
      e["p_value"] = t.result->p_value;
      e["dependent"] = t.result->dependent;
    } else {
      e["degenerate"] = t.note;
    }
    out["tested"].push_back(std::move(e));
  }
  out["violations"] = ojson::array();
  for (const auto& v : r.violations) out["violations"].push_back(statement_json(v));
  return out;
}

ojson detection_json(const DetectionReport& r) {
  ojson out = ojson::object();
  out["detected"] = r.detected;
  out["candidates"] = r.candidates;
  out["pairs"] = ojson::array();
  for (const auto& p : r.pairs) {
    ojson e = ojson::object();
    e["x"] = p.x;
    e["y"] = p.y;
    e["common_children"] = p.common_children;
    out["pairs"].push_back(std::move(e));
  }
  out["localization"] = "heuristic: variables in violated statements, paired through shared children";
  out["markov"] = markov_json(r.markov);
  return out;
}

ojson discovery_json(const DiscoveryReport& r) {
  ojson out = ojson::object();
  out["target"] = r.target;
  out["binary_target"] = r.binary_target;
  out["test"] = r.binary_target ? "two-proportion z-test" : "Fisher z-test on regime indicator";
  out["threshold"] = r.threshold;
  out["candidates"] = ojson::array();
  for (const auto& c : r.candidates) {
    ojson e = ojson::object();
    e["variable"] = c.variable;
    e["low"] = c.values.low;
    e["high"] = c.values.high;
    e["mean_low"] = c.mean_low;
    e["mean_high"] = c.mean_high;
    e["statistic"] = c.result.statistic;
    e["p_value"] = c.result.p_value;
    e["listened"] = c.listened;
    out["candidates"].push_back(std::move(e));
  }
  out["listened"] = ojson::array();
  for (const auto& l : r.listened) out["listened"].push_back(l);
  return out;
}

}  // namespace detail

std::string to_json(const MarkovReport& report) { return detail::markov_json(report).dump(2) + "\n"; }
std::string to_json(const DetectionReport& report) { return detail::detection_json(report).dump(2) + "\n"; }
std::string to_json(const DiscoveryReport& report) { return detail::discovery_json(report).dump(2) + "\n"; }

std::string to_json(const std::vector<Violation>& violations) {
  using detail::ojson;
  ojson out = ojson::object();
  out["valid"] = violations.empty();
  out["violations"] = ojson::array();
  for (const auto& v : violations) {
    ojson e = ojson::object();
    e["rule"] = v.rule;
    e["variable"] = v.variable;
    e["message"] = v.message;
    out["violations"].push_back(std::move(e));
  }
  return out.dump(2) + "\n";
}

}  // namespace teleo
