#include "cli.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "teleo/csv.hpp"
#include "teleo/dot.hpp"
#include "teleo/dsep.hpp"
#include "teleo/error.hpp"
#include "teleo/inference.hpp"
#include "teleo/model_io.hpp"
#include "teleo/report_io.hpp"
#include "teleo/repro.hpp"
#include "teleo/sampling.hpp"

namespace teleo::cli {

namespace {

struct Options {
  std::string model;
  std::string second;  // data file, op file or pipeline name
  std::string output;
  std::string format = "dot";
  std::string policy;
  std::string target;
  std::string x;
  std::string y;
  std::vector<std::string> given;
  std::vector<std::string> observed;
  std::vector<std::string> candidates;
  std::vector<std::string> pairs;
  std::size_t n = 10'000;
  std::size_t shards = 1;
  std::size_t max_cond = kDefaultMaxCond;
  std::uint64_t seed = 0;
  double alpha = kDefaultAlpha;
  bool observed_only = false;
};

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

AnyModel load_model(const std::string& path) {
  AnyModel any = read_model(path);
  std::vector<Violation> problems = validate_model(underlying(any));
  if (const auto* twin = std::get_if<TwinModel>(&any); twin && problems.empty()) problems = validate_twin(*twin);
  if (!problems.empty()) {
    const Violation& v = problems.front();
    throw ModelError("invalid model '" + path + "': [" + v.rule + "] " + v.variable + ": " + v.message);
  }
  return any;
}

ScmModel load_plain_model(const std::string& path) {
  AnyModel any = load_model(path);
  if (auto* twin = std::get_if<TwinModel>(&any)) return twin->base_world();
  return std::get<ScmModel>(std::move(any));
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

// The query graph: endogenous DAG for plain models, the full graph (shared
// noise vertices included) for twins or when a noise term is named.
Dag query_graph(const AnyModel& any, const std::vector<std::string>& names) {
  const ScmModel& m = underlying(any);
  bool full = std::holds_alternative<TwinModel>(any);
  for (const auto& name : names) full = full || m.is_exogenous(name);
  return full ? induce_full_graph(m) : induce_dag(m);
}

std::map<std::string, ValuePair> parse_pairs(const std::vector<std::string>& specs) {
  // name=low:high
  std::map<std::string, ValuePair> out;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    const auto colon = s.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos || eq == 0) {
      throw CLI::ValidationError("--pair", "expected name=low:high, got '" + s + "'");
    }
    try {
      std::size_t used = 0;
      const std::string lo = s.substr(eq + 1, colon - eq - 1), hi = s.substr(colon + 1);
      ValuePair p{std::stod(lo, &used), 0.0};
      if (used != lo.size()) throw std::invalid_argument(lo);
      p.high = std::stod(hi, &used);
      if (used != hi.size()) throw std::invalid_argument(hi);
      out[s.substr(0, eq)] = p;
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--pair", "bad number in '" + s + "'");
    }
  }
  return out;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const AnyModel any = read_model(o.model);
  std::vector<Violation> problems = validate_model(underlying(any));
  if (const auto* twin = std::get_if<TwinModel>(&any)) {
    auto more = validate_twin(*twin);
    problems.insert(problems.end(), more.begin(), more.end());
  }
  if (!problems.empty()) {
    out << to_json(problems);
    return kInvalidInput;
  }
  const ScmModel& m = underlying(any);
  out << "valid: " << m.name << " (" << m.endogenous.size() << " endogenous, " << m.exogenous.size()
      << " exogenous)\n";
  return kOk;
}

int cmd_graph(const Options& o, std::ostream& out) {
  const AnyModel any = load_model(o.model);
  const std::string dot = std::visit([](const auto& m) { return to_dot(m); }, any);
  emit(out, o.output, dot);
  return kOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const AnyModel any = load_model(o.model);
  Dataset data;
  if (const auto* twin = std::get_if<TwinModel>(&any)) {
    data = sample_twin(*twin, o.n, o.seed);
    if (o.observed_only) data = data.select(twin->observed());
  } else {
    data = sample_sharded(std::get<ScmModel>(any), o.n, o.seed, o.shards);
  }
  emit(out, o.output, to_csv(data));
  return kOk;
}

int cmd_dsep(const Options& o, std::ostream& out) {
  const AnyModel any = load_model(o.model);
  std::vector<std::string> names = o.given;
  names.push_back(o.x);
  names.push_back(o.y);
  const Dag dag = query_graph(any, names);
  const auto statement = IndependenceStatement::make(o.x, o.y, as_set(o.given));
  const bool separated = d_separated(dag, o.x, o.y, statement.given);
  out << to_string(statement) << ": " << (separated ? "separated" : "connected") << "\n";
  return kOk;
}

int cmd_independencies(const Options& o, std::ostream& out) {
  const AnyModel any = load_model(o.model);
  std::vector<std::string> observed = o.observed;
  if (observed.empty()) {
    const auto* twin = std::get_if<TwinModel>(&any);
    observed = twin ? twin->observed() : underlying(any).endogenous_names();
  }
  const Dag dag = query_graph(any, observed);
  for (const auto& s : implied_independencies(dag, as_set(observed), o.max_cond)) out << to_string(s) << "\n";
  return kOk;
}

int cmd_apply(const Options& o, std::ostream& out) {
  const AnyModel any = load_model(o.model);
  if (std::holds_alternative<TwinModel>(any)) throw ModelError("operators apply to plain models, not twins");
  const InterventionSpec spec = read_intervention(o.second);
  const auto result = apply(std::get<ScmModel>(any), spec);
  const AnyModel as_any = std::visit([](const auto& m) { return AnyModel(m); }, result);
  emit(out, o.output, model_to_json(as_any));
  return kOk;
}

int cmd_markov_check(const Options& o, std::ostream& out) {
  const AnyModel any = load_model(o.model);
  MarkovReport report;
  if (const auto* twin = std::get_if<TwinModel>(&any)) {
    const Dataset data = read_csv(o.second);
    if (twin->kind == TwinKind::Final) {
      report = verify_sfm_hypothesis(*twin, data, o.alpha, o.max_cond);
    } else {
      const auto observed = twin->observed();
      report = markov_check(induce_full_graph(twin->model), data, as_set(observed), o.alpha, o.max_cond);
    }
  } else {
    const ScmModel& m = std::get<ScmModel>(any);
    const auto names = m.endogenous_names();
    const Dataset data = read_csv(o.second, names);
    report = markov_check(induce_dag(m), data, as_set(names), o.alpha, o.max_cond);
  }
  out << to_json(report);
  return report.violated() ? kDetected : kOk;
}

int cmd_detect_agent(const Options& o, std::ostream& out) {
  const ScmModel model = load_plain_model(o.model);
  // Observed replica columns are read under their base names.
  const Dataset data = read_csv(o.second).renamed([](const std::string& c) { return strip_replica(c); });
  const DetectionReport report = detect_agent(model, data, o.alpha, o.max_cond);
  out << to_json(report);
  return report.detected ? kDetected : kOk;
}

int cmd_discover(const Options& o, std::ostream& out) {
  const ScmModel model = load_plain_model(o.model);
  const InterventionSpec spec = read_intervention(o.policy);
  const auto* policy = std::get_if<IntentionalIntervention>(&spec);
  if (!policy) throw SchemaError("policy file must hold an intentional intervention", "/op");
  if (policy->target != o.target) {
    throw ModelError("--target '" + o.target + "' differs from the policy target '" + policy->target + "'");
  }
  DiscoveryOptions opts;
  opts.n = o.n;
  opts.alpha = o.alpha;
  opts.seed = o.seed;
  opts.value_pairs = parse_pairs(o.pairs);
  const SimulatedAgent agent(model, *policy);
  out << to_json(discover_intention(model, agent, o.target, o.candidates, opts));
  return kOk;
}

int cmd_repro(const Options& o, std::ostream& out) {
  ReproSettings settings;
  settings.n = o.n;
  if (o.second == "heating") {
    emit(out, o.output, to_json(run_repro_heating(o.seed, settings)));
    return kOk;
  }
  const SmokingRepro r = run_repro_smoking(o.seed, settings);
  emit(out, o.output, to_json(r));
  if (!o.output.empty() && o.output != "-") {
    std::filesystem::path pmf = o.output;
    pmf.replace_filename(pmf.stem().string() + "_pmf.csv");
    write_text_file(pmf, pmf_csv(r));
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Structural causal models, intentional interventions and teleological inference", "teleo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "teleo 0.1.0");

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed")->envname("TELEO_SEED");
  };
  auto add_alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
  };
  auto add_max_cond = [&](CLI::App* sub) {
    sub->add_option("--max-cond", o.max_cond, "Largest conditioning set")->check(CLI::Range(0, 16));
  };
  auto add_model = [&](CLI::App* sub) { sub->add_option("model", o.model, "Model JSON file")->required(); };

  auto* validate = app.add_subcommand("validate", "Check a model file");
  add_model(validate);

  auto* graph = app.add_subcommand("graph", "Emit the induced graph");
  add_model(graph);
  graph->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"dot"}));
  graph->add_option("-o,--output", o.output, "Output path (default stdout)");

  auto* sample = app.add_subcommand("sample", "Draw a dataset");
  add_model(sample);
  sample->add_option("-n", o.n, "Number of rows")->required();
  add_seed(sample);
  sample->add_option("--shards", o.shards, "Independent generator blocks")->check(CLI::Range(1, 1024));
  sample->add_option("-o,--output", o.output, "CSV path (default stdout)");
  sample->add_flag("--observed-only", o.observed_only, "Twin models: keep observed columns only");

  auto* dsep = app.add_subcommand("dsep", "Query d-separation");
  add_model(dsep);
  dsep->add_option("--x", o.x)->required();
  dsep->add_option("--y", o.y)->required();
  dsep->add_option("--given", o.given, "Comma-separated conditioning set")->delimiter(',');

  auto* indep = app.add_subcommand("independencies", "List graph-implied independencies");
  add_model(indep);
  add_max_cond(indep);
  indep->add_option("--observed", o.observed, "Comma-separated variables (default: observed columns)")
      ->delimiter(',');

  auto* apply_cmd = app.add_subcommand("apply", "Apply an operator");
  add_model(apply_cmd);
  apply_cmd->add_option("op", o.second, "Operator JSON file")->required();
  apply_cmd->add_option("-o,--output", o.output, "Output model path (default stdout)");

  auto* markov = app.add_subcommand("markov-check", "Test the Markov condition against data");
  add_model(markov);
  markov->add_option("data", o.second, "CSV file")->required();
  add_alpha(markov);
  add_max_cond(markov);

  auto* detect = app.add_subcommand("detect-agent", "Look for an intentional intervention in data");
  add_model(detect);
  detect->add_option("data", o.second, "CSV file")->required();
  add_alpha(detect);
  add_max_cond(detect);

  auto* discover = app.add_subcommand("discover-intention", "Find the variables an agent listens to");
  add_model(discover);
  discover->add_option("--policy", o.policy, "Intentional intervention JSON (the simulated agent)")->required();
  discover->add_option("--target", o.target, "Variable the agent sets")->required();
  discover->add_option("--candidates", o.candidates, "Comma-separated descendants")->delimiter(',')->required();
  discover->add_option("--pair", o.pairs, "Intervention values, name=low:high (repeatable)");
  discover->add_option("-n", o.n, "Rows per regime");
  add_alpha(discover);
  add_seed(discover);

  auto* repro = app.add_subcommand("repro", "Run a reference pipeline");
  repro->add_option("pipeline", o.second)->required()->check(CLI::IsMember({"heating", "smoking"}));
  add_seed(repro);
  repro->add_option("-n", o.n, "Rows per sample");
  repro->add_option("-o,--output", o.output, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (graph->parsed()) return cmd_graph(o, out);
    if (sample->parsed()) return cmd_sample(o, out);
    if (dsep->parsed()) return cmd_dsep(o, out);
    if (indep->parsed()) return cmd_independencies(o, out);
    if (apply_cmd->parsed()) return cmd_apply(o, out);
    if (markov->parsed()) return cmd_markov_check(o, out);
    if (detect->parsed()) return cmd_detect_agent(o, out);
    if (discover->parsed()) return cmd_discover(o, out);
    if (repro->parsed()) return cmd_repro(o, out);
  } catch (const CLI::Error& e) {
    err << "teleo: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "teleo: error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kUsage;
}

}  // namespace teleo::cli
