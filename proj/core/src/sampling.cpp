#include "teleo/sampling.hpp"

#include <cmath>
#include <future>
#include <unordered_map>

#include "teleo/error.hpp"
#include "teleo/random.hpp"

namespace teleo {

namespace {

// Model compiled onto a flat slot layout: endogenous slots first, then exogenous.
class Simulator {
 public:
  explicit Simulator(const ScmModel& model) : model_(model) {
    require_valid(model);
    const std::size_t ne = model.endogenous.size();
    std::unordered_map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < ne; ++i) slot.emplace(model.endogenous[i].name, i);
    for (std::size_t j = 0; j < model.exogenous.size(); ++j) slot.emplace(model.exogenous[j].name, ne + j);
    equations_.reserve(ne);
    for (const auto& v : model.endogenous) equations_.emplace_back(v.equation, slot);

    const Dag dag = induce_dag(model);
    if (!topological_indices(ne, dag.edges(), order_)) throw ModelError("model graph has a cycle");
    values_.assign(ne + model.exogenous.size(), 0.0);
  }

  std::size_t endogenous_count() const { return model_.endogenous.size(); }
  std::span<const double> values() const { return values_; }

  void draw(Rng& rng) {
    const std::size_t ne = model_.endogenous.size();
    for (std::size_t j = 0; j < model_.exogenous.size(); ++j) {
      const auto& dist = model_.exogenous[j].distribution;
      if (const auto* b = std::get_if<Bernoulli>(&dist)) {
        values_[ne + j] = rng.bernoulli(b->p);
      } else {
        const auto& g = std::get<Normal>(dist);
        values_[ne + j] = rng.normal(g.mean, g.variance);
      }
    }
  }

  void evaluate(std::size_t row) {
    for (std::size_t i : order_) {
      try {
        values_[i] = equations_[i](values_);
      } catch (const EvalError& e) {
        throw EvalError("row " + std::to_string(row) + ", variable '" + model_.endogenous[i].name + "': " + e.what());
      }
    }
  }

 private:
  const ScmModel& model_;
  std::vector<CompiledExpression> equations_;
  std::vector<std::size_t> order_;
  std::vector<double> values_;
};

Dataset forward_sample(const ScmModel& model, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  Simulator sim(model);
  Rng rng(seed, stream);
  Dataset out(model.endogenous_names(), n);
  const std::size_t ne = sim.endogenous_count();
  for (std::size_t r = 0; r < n; ++r) {
    sim.draw(rng);
    sim.evaluate(r);
    const auto vals = sim.values();
    for (std::size_t c = 0; c < ne; ++c) out.at(r, c) = vals[c];
  }
  out.provenance = {model.name, seed, n, "observational"};
  return out;
}

// Accepted rows carry every slot: endogenous then exogenous.
Dataset rejection_rows(const ScmModel& model, const std::map<std::string, double, std::less<>>& evidence,
                       double tolerance, std::size_t n, std::uint64_t seed, std::size_t max_tries) {
  if (!(tolerance >= 0.0)) throw Error("evidence tolerance must be nonnegative");
  std::vector<std::pair<std::size_t, double>> checks;
  for (const auto& [name, value] : evidence) {
    std::size_t idx = model.endogenous.size();
    for (std::size_t i = 0; i < model.endogenous.size(); ++i) {
      if (model.endogenous[i].name == name) idx = i;
    }
    if (idx == model.endogenous.size()) throw ModelError("evidence variable '" + name + "' is not endogenous");
    checks.emplace_back(idx, value);
  }

  Simulator sim(model);
  Rng rng(seed, 0);
  std::vector<std::string> names = model.endogenous_names();
  for (const auto& u : model.exogenous) names.push_back(u.name);
  Dataset out(std::move(names), 0);

  std::size_t tries = 0;
  while (out.rows() < n) {
    if (tries >= max_tries) {
      const double rate = tries ? static_cast<double>(out.rows()) / static_cast<double>(tries) : 0.0;
      throw InfeasibleEvidence("evidence accepted " + std::to_string(out.rows()) + " of " + std::to_string(tries) +
                                   " draws (rate " + std::to_string(rate) + "); needed " + std::to_string(n),
                               rate);
    }
    ++tries;
    sim.draw(rng);
    sim.evaluate(out.rows());
    const auto vals = sim.values();
    bool accept = true;
    for (const auto& [idx, value] : checks) {
      if (!(std::fabs(vals[idx] - value) <= tolerance)) {
        accept = false;
        break;
      }
    }
    if (accept) out.append_row(vals);
  }
  out.provenance = {model.name, seed, n, "conditioned"};
  return out;
}

}  // namespace

Dataset sample_dataset(const ScmModel& model, std::size_t n, std::uint64_t seed) {
  return forward_sample(model, n, seed, 0);
}

Dataset sample_sharded(const ScmModel& model, std::size_t n, std::uint64_t seed, std::size_t shards) {
  if (shards == 0) throw Error("shard count must be positive");
  std::vector<std::future<Dataset>> jobs;
  jobs.reserve(shards);
  for (std::size_t i = 0; i < shards; ++i) {
    const std::size_t begin = i * n / shards;
    const std::size_t end = (i + 1) * n / shards;
    jobs.push_back(std::async(std::launch::async, [&model, seed, i, begin, end] {
      return forward_sample(model, end - begin, seed, i);
    }));
  }
  std::vector<Dataset> parts;
  parts.reserve(shards);
  for (auto& j : jobs) parts.push_back(j.get());
  Dataset out = Dataset::concat(parts);
  out.provenance = {model.name, seed, n, "observational, " + std::to_string(shards) + " shards"};
  return out;
}

Dataset rejection_condition(const ScmModel& model, const std::map<std::string, double, std::less<>>& evidence,
                            double tolerance, std::size_t n, std::uint64_t seed, std::size_t max_tries) {
  Dataset rows = rejection_rows(model, evidence, tolerance, n, seed, max_tries);
  Dataset out = rows.select(model.exogenous_names());
  out.provenance = rows.provenance;
  return out;
}

Dataset sample_twin(const TwinModel& twin, std::size_t n, std::uint64_t seed, std::size_t max_tries) {
  const std::string op = std::string(to_string(twin.kind)) + " twin on " + twin.target;
  if (twin.evidence.empty()) {
    Dataset out = sample_dataset(twin.model, n, seed);
    out.provenance.operation = op;
    return out;
  }
  Dataset rows = rejection_rows(twin.model, twin.evidence, twin.tolerance, n, seed, max_tries);
  Dataset out = rows.select(twin.model.endogenous_names());
  out.provenance = {twin.model.name, seed, n, op + " given evidence"};
  return out;
}

}  // namespace teleo
