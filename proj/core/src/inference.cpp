#include "teleo/inference.hpp"

#include <algorithm>
#include <cmath>

#include "teleo/error.hpp"
#include "teleo/random.hpp"
#include "teleo/sampling.hpp"

namespace teleo {

MarkovReport markov_check(const Dag& dag, const Dataset& data, const std::set<std::string>& observed, double alpha,
                          std::size_t max_cond) {
  for (const auto& v : observed) {
    if (!data.has_column(v)) throw Error("data has no column for observed variable '" + v + "'");
  }
  MarkovReport report;
  report.alpha = alpha;
  report.max_cond = max_cond;
  for (auto& statement : implied_independencies(dag, observed, max_cond)) {
    TestedStatement tested{statement, 0.0, std::nullopt, {}};
    try {
      tested.partial_correlation = partial_correlation(data, statement.x, statement.y, statement.given);
      tested.result = fisher_z_test(tested.partial_correlation, data.rows(), statement.given.size(), alpha);
      if (tested.result->dependent) report.violations.push_back(statement);
    } catch (const DegenerateInput& e) {
      tested.note = e.what();
    }
    report.tested.push_back(std::move(tested));
  }
  return report;
}

DetectionReport detect_agent(const ScmModel& model, const Dataset& data, double alpha, std::size_t max_cond) {
  const Dag dag = induce_dag(model);
  const auto names = model.endogenous_names();
  DetectionReport out;
  out.markov = markov_check(dag, data, {names.begin(), names.end()}, alpha, max_cond);
  out.detected = out.markov.violated();

  std::set<std::string> flagged;
  for (const auto& v : out.markov.violations) {
    flagged.insert(v.x);
    flagged.insert(v.y);
    CandidatePair pair{v.x, v.y, {}};
    const auto cx = children(dag, v.x);
    const auto cy = children(dag, v.y);
    std::set_intersection(cx.begin(), cx.end(), cy.begin(), cy.end(), std::back_inserter(pair.common_children));
    const bool seen = std::any_of(out.pairs.begin(), out.pairs.end(),
                                  [&](const CandidatePair& p) { return p.x == pair.x && p.y == pair.y; });
    if (!seen) out.pairs.push_back(std::move(pair));
  }
  // Declaration order.
  for (const auto& n : names) {
    if (flagged.count(n)) out.candidates.push_back(n);
  }
  return out;
}

MarkovReport verify_sfm_hypothesis(const TwinModel& sfm, const Dataset& data, double alpha, std::size_t max_cond) {
  const auto observed = sfm.observed();
  std::vector<std::string> source;
  for (const auto& name : observed) {
    if (data.has_column(name)) {
      source.push_back(name);
    } else if (data.has_column(strip_replica(name))) {
      source.push_back(strip_replica(name));
    } else {
      throw Error("data has no column for observed variable '" + name + "'");
    }
  }
  Dataset aligned = data.select(source).renamed([&](const std::string& n) {
    const auto it = std::find(source.begin(), source.end(), n);
    return observed[static_cast<std::size_t>(it - source.begin())];
  });
  return markov_check(induce_full_graph(sfm.model), aligned, {observed.begin(), observed.end()}, alpha, max_cond);
}

// ---------------------------------------------------------------------------

SimulatedAgent::SimulatedAgent(ScmModel base, IntentionalIntervention policy)
    : base_(std::move(base)), policy_(std::move(policy)) {
  build_sfm(base_, policy_);
}

Dataset SimulatedAgent::sample(const DoIntervention& intervention, std::size_t n, std::uint64_t seed) const {
  const ScmModel intervened = apply_do(base_, intervention.target, intervention.value);
  const TwinModel sfm = build_sfm(intervened, policy_, base_);
  Dataset out = sample_twin(sfm, n, seed).select(sfm.observed());
  out.provenance.operation = describe(InterventionSpec{intervention}) + " then " + describe(InterventionSpec{policy_});
  return out;
}

std::map<std::string, ValuePair> default_value_pairs(const ScmModel& base, const std::vector<std::string>& candidates,
                                                     std::size_t n, std::uint64_t seed) {
  const Dataset data = sample_dataset(base, n, seed);
  std::map<std::string, ValuePair> out;
  for (const auto& c : candidates) {
    const auto col = data.column(c);
    const bool binary = std::all_of(col.begin(), col.end(), [](double v) { return v == 0.0 || v == 1.0; });
    if (binary || col.size() < 2) {
      out[c] = {0.0, 1.0};
      continue;
    }
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(col.size());
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(col.size() - 1));
    out[c] = {mean - sd, mean + sd};
  }
  return out;
}

DiscoveryReport discover_intention(const ScmModel& base, const AgentSystem& agent, const std::string& target,
                                   const std::vector<std::string>& candidates, const DiscoveryOptions& options) {
  if (!base.is_endogenous(target)) throw ModelError("discovery target '" + target + "' is not endogenous");
  if (candidates.empty()) throw ModelError("intention discovery needs at least one candidate");
  const auto desc = descendants(induce_dag(base), target);
  for (const auto& c : candidates) {
    if (c == target || !desc.count(c)) {
      throw ModelError("candidate '" + c + "' is not a descendant of '" + target + "'");
    }
  }

  std::vector<std::string> missing;
  for (const auto& c : candidates) {
    if (!options.value_pairs.count(c)) missing.push_back(c);
  }
  std::map<std::string, ValuePair> pairs = options.value_pairs;
  if (!missing.empty()) pairs.merge(default_value_pairs(base, missing, options.n, derive_seed(options.seed, 0)));

  DiscoveryReport report;
  report.target = target;
  report.threshold = options.alpha / static_cast<double>(candidates.size());
  const std::string observed = replica_name(target);

  struct Arms {
    std::vector<double> low, high;
  };
  std::vector<Arms> arms;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    // Both arms share one exogenous stream: only the intervened value differs.
    const std::uint64_t seed = derive_seed(options.seed, i + 1);
    auto column_of = [&](double value) {
      const Dataset d = agent.sample({c, value}, options.n, seed);
      const auto col = d.has_column(observed) ? d.column(observed) : d.column(target);
      return std::vector<double>(col.begin(), col.end());
    };
    arms.push_back({column_of(pairs[c].low), column_of(pairs[c].high)});
  }

  auto is01 = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0 || x == 1.0; });
  };
  report.binary_target = std::all_of(arms.begin(), arms.end(), [&](const Arms& a) { return is01(a.low) && is01(a.high); });

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& a = arms[i];
    CandidateExperiment exp;
    exp.variable = candidates[i];
    exp.values = pairs[candidates[i]];
    auto mean = [](const std::vector<double>& v) {
      double s = 0.0;
      for (double x : v) s += x;
      return v.empty() ? 0.0 : s / static_cast<double>(v.size());
    };
    exp.mean_low = mean(a.low);
    exp.mean_high = mean(a.high);
    if (report.binary_target) {
      const auto k = [](const std::vector<double>& v) {
        return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1.0));
      };
      exp.result = two_proportion_test(k(a.low), a.low.size(), k(a.high), a.high.size(), report.threshold);
    } else {
      std::vector<double> regime(a.low.size(), 0.0), values(a.low);
      regime.resize(a.low.size() + a.high.size(), 1.0);
      values.insert(values.end(), a.high.begin(), a.high.end());
      try {
        exp.result = fisher_z_test(pearson_correlation(regime, values), values.size(), 0, report.threshold);
      } catch (const DegenerateInput&) {
        exp.result = {0.0, 1.0, values.size(), report.threshold, false};
      }
    }
    exp.listened = exp.result.p_value < report.threshold;
    if (exp.listened) report.listened.insert(exp.variable);
    report.candidates.push_back(std::move(exp));
  }
  return report;
}

}  // namespace teleo
