#include "teleo/repro.hpp"

#include <algorithm>
#include <functional>

#include "report_json.hpp"
#include "teleo/error.hpp"
#include "teleo/random.hpp"
#include "teleo/sampling.hpp"

namespace teleo {

ScmModel heating_model() {
  ScmModel m;
  m.name = "heating";
  m.endogenous = {
      {"W", "U_W", parse_expression("U_W")},
      {"T", "U_T", parse_expression("W + H + U_T")},
      {"H", "U_H", parse_expression("U_H")},
  };
  m.exogenous = {
      {"U_W", Bernoulli{0.5}},
      {"U_T", Normal{0.0, 1e-20}},
      {"U_H", Bernoulli{0.5}},
  };
  return m;
}

IntentionalIntervention heating_policy() { return {"H", parse_expression("if(T < 0.5, 1, 0)")}; }

ScmModel smoking_model() {
  ScmModel m;
  m.name = "smoking";
  m.endogenous = {
      {"S", "U_S", parse_expression("U_S")},
      {"D", "U_D", parse_expression("0.3 * S + U_D")},
      {"P", "U_P", parse_expression("0.5 * S + U_P + 1")},
  };
  m.exogenous = {
      {"U_S", Bernoulli{0.5}},
      {"U_D", Normal{0.0, 1.0}},
      {"U_P", Normal{0.0, 1.0}},
  };
  return m;
}

IntentionalIntervention smoking_policy() { return {"S", parse_expression("if(P > 1, 1, 0)")}; }

namespace {

template <class F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(std::string("stage '") + name + "' failed: " + e.what());
  }
}

NamedTest run_check(const Dataset& data, IndependenceStatement statement, bool expect_dependent, double alpha) {
  NamedTest t{std::move(statement), expect_dependent, 0.0, {}};
  t.partial_correlation = partial_correlation(data, t.statement.x, t.statement.y, t.statement.given);
  t.result = fisher_z_test(t.partial_correlation, data.rows(), t.statement.given.size(), alpha);
  return t;
}

Pmf pmf_of(std::string label, const Dataset& data, const std::string& column) {
  const auto col = data.column(column);
  Pmf p{std::move(label), col.size(), 0};
  p.ones = static_cast<std::size_t>(std::count(col.begin(), col.end(), 1.0));
  return p;
}

std::string verdict(const MarkovReport& r) { return r.violated() ? "violated" : "consistent"; }

detail::ojson named_test_json(const NamedTest& t) {
  detail::ojson e = detail::statement_json(t.statement);
  e["expected"] = t.expect_dependent ? "dependent" : "independent";
  e["partial_correlation"] = t.partial_correlation;
  e["statistic"] = t.result.statistic;
  e["p_value"] = t.result.p_value;
  e["dependent"] = t.result.dependent;
  return e;
}

detail::ojson pmf_json(const Pmf& p) {
  detail::ojson e = detail::ojson::object();
  e["distribution"] = p.label;
  e["n"] = p.n;
  e["p_s_star_0"] = p.p0();
  e["p_s_star_1"] = p.p1();
  return e;
}

detail::ojson settings_json(std::uint64_t seed, const ReproSettings& s) {
  detail::ojson e = detail::ojson::object();
  e["seed"] = seed;
  e["n"] = s.n;
  e["alpha"] = s.alpha;
  e["max_cond"] = s.max_cond;
  return e;
}

}  // namespace

HeatingRepro run_repro_heating(std::uint64_t seed, const ReproSettings& settings) {
  HeatingRepro out;
  out.seed = seed;
  out.settings = settings;
  const ScmModel model = heating_model();
  const double alpha = settings.alpha;

  const Dataset causal = stage("causal-sample", [&] { return sample_dataset(model, settings.n, derive_seed(seed, 0)); });
  stage("causal-checks", [&] {
    out.causal_checks = {
        run_check(causal, IndependenceStatement::make("H", "W"), false, alpha),
        run_check(causal, IndependenceStatement::make("H", "W", {"T"}), true, alpha),
        run_check(causal, IndependenceStatement::make("H", "T"), true, alpha),
    };
    const auto names = model.endogenous_names();
    out.causal_markov = markov_check(induce_dag(model), causal, {names.begin(), names.end()}, alpha, settings.max_cond);
    return 0;
  });

  const TwinModel sfm = stage("build-sfm", [&] { return build_sfm(model, heating_policy()); });
  const Dataset final_data = stage("agent-sample", [&] {
    return sample_twin(sfm, settings.n, derive_seed(seed, 1)).select(sfm.observed());
  });
  stage("agent-detection", [&] {
    out.agent_check = run_check(final_data, IndependenceStatement::make("H_star", "W_star"), true, alpha);
    // The observer labels the intervened world with the base names.
    const Dataset relabeled = final_data.renamed([](const std::string& n) { return strip_replica(n); });
    out.agent_detection = detect_agent(model, relabeled, alpha, settings.max_cond);
    return 0;
  });
  stage("sfm-verification", [&] {
    out.sfm_verification = verify_sfm_hypothesis(sfm, final_data, alpha, settings.max_cond);
    return 0;
  });

  out.verdicts = {verdict(out.causal_markov), verdict(out.agent_detection.markov), verdict(out.sfm_verification)};
  out.as_expected = out.verdicts == std::vector<std::string>{"consistent", "violated", "consistent"};
  return out;
}

SmokingRepro run_repro_smoking(std::uint64_t seed, const ReproSettings& settings) {
  SmokingRepro out;
  out.seed = seed;
  out.settings = settings;
  const ScmModel model = smoking_model();
  const IntentionalIntervention policy = smoking_policy();
  const std::string observed = replica_name(policy.target);

  auto sample_under = [&](const ScmModel& m, std::uint64_t stream) {
    return sample_twin(build_sfm(m, policy, model), settings.n, derive_seed(seed, stream));
  };
  out.baseline = stage("baseline", [&] { return pmf_of("P(S*)", sample_under(model, 0), observed); });
  out.under_do_d0 = stage("do-damage", [&] {
    return pmf_of("P(S* | do(D=0))", sample_under(apply_do(model, "D", 0.0), 1), observed);
  });
  out.under_do_p0 = stage("do-pleasure", [&] {
    return pmf_of("P(S* | do(P=0))", sample_under(apply_do(model, "P", 0.0), 2), observed);
  });
  stage("shift-tests", [&] {
    out.damage_vs_baseline = two_proportion_test(out.under_do_d0.ones, out.under_do_d0.n, out.baseline.ones,
                                                 out.baseline.n, settings.alpha);
    out.pleasure_vs_baseline = two_proportion_test(out.under_do_p0.ones, out.under_do_p0.n, out.baseline.ones,
                                                   out.baseline.n, settings.alpha);
    return 0;
  });
  out.discovery = stage("discovery", [&] {
    DiscoveryOptions opts;
    opts.n = settings.n;
    opts.alpha = settings.alpha;
    opts.seed = derive_seed(seed, 3);
    opts.value_pairs = {{"P", {0.0, 2.0}}, {"D", {0.0, 1.0}}};
    return discover_intention(model, SimulatedAgent(model, policy), policy.target, {"D", "P"}, opts);
  });

  out.as_expected = out.under_do_p0.ones == 0 && out.pleasure_vs_baseline.dependent &&
                    !out.damage_vs_baseline.dependent && out.discovery.listened == std::set<std::string>{"P"};
  return out;
}

std::string to_json(const HeatingRepro& r) {
  detail::ojson out = detail::ojson::object();
  out["pipeline"] = "heating";
  out["settings"] = settings_json(r.seed, r.settings);
  out["policy"] = to_string(heating_policy().policy);
  detail::ojson causal = detail::ojson::object();
  causal["checks"] = detail::ojson::array();
  for (const auto& t : r.causal_checks) causal["checks"].push_back(named_test_json(t));
  causal["markov"] = detail::markov_json(r.causal_markov);
  out["causal"] = std::move(causal);
  detail::ojson agent = detail::ojson::object();
  agent["check"] = named_test_json(r.agent_check);
  agent["detection"] = detail::detection_json(r.agent_detection);
  out["agent"] = std::move(agent);
  out["sfm_verification"] = detail::markov_json(r.sfm_verification);
  out["verdicts"] = r.verdicts;
  out["as_expected"] = r.as_expected;
  return out.dump(2) + "\n";
}

std::string to_json(const SmokingRepro& r) {
  detail::ojson out = detail::ojson::object();
  out["pipeline"] = "smoking";
  out["settings"] = settings_json(r.seed, r.settings);
  out["policy"] = to_string(smoking_policy().policy);
  out["pmf"] = detail::ojson::array({pmf_json(r.baseline), pmf_json(r.under_do_d0), pmf_json(r.under_do_p0)});
  detail::ojson tests = detail::ojson::object();
  tests["do_d0_vs_baseline"] = detail::test_json(r.damage_vs_baseline);
  tests["do_p0_vs_baseline"] = detail::test_json(r.pleasure_vs_baseline);
  out["shift_tests"] = std::move(tests);
  out["discovery"] = detail::discovery_json(r.discovery);
  out["as_expected"] = r.as_expected;
  return out.dump(2) + "\n";
}

std::string pmf_csv(const SmokingRepro& r) {
  std::string out = "distribution,value,probability\n";
  for (const Pmf* p : {&r.baseline, &r.under_do_d0, &r.under_do_p0}) {
    detail::ojson p0 = p->p0(), p1 = p->p1();
    out += "\"" + p->label + "\",0," + p0.dump() + "\n";
    out += "\"" + p->label + "\",1," + p1.dump() + "\n";
  }
  return out;
}

}  // namespace teleo
