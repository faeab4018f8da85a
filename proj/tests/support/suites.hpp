#pragma once

// Randomised suites shared by the property tests and the acceptance runner.
// Each returns counts so callers decide how to report them.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dsep_oracle.hpp"
#include "normal_oracle.hpp"
#include "random_models.hpp"
#include "teleo/dataset.hpp"
#include "teleo/dsep.hpp"
#include "teleo/error.hpp"
#include "teleo/operators.hpp"
#include "teleo/random.hpp"
#include "teleo/sampling.hpp"
#include "teleo/stats.hpp"

namespace testing_support {

struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;  // first few failure descriptions

  void fail(std::string note) {
    ++failures;
    if (notes.size() < 5) notes.push_back(std::move(note));
  }
};

/// Build final models for random (model, intention) pairs and check that
/// every result is a valid acyclic twin.
inline Tally sfm_acyclicity(std::size_t pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tally t;
  for (std::size_t i = 0; i < pairs; ++i) {
    const teleo::ScmModel m = random_model(rng, 1 + i % 6);
    const teleo::IntentionalIntervention spec = random_intention(rng, m);
    ++t.cases;
    try {
      const teleo::TwinModel sfm = teleo::build_sfm(m, spec);
      const teleo::Dag dag = teleo::induce_full_graph(sfm.model);
      if (teleo::topological_order(dag).size() != dag.size() || !teleo::validate_twin(sfm).empty()) {
        t.fail("pair " + std::to_string(i) + ": invalid final model");
      }
    } catch (const teleo::Error& e) {
      t.fail("pair " + std::to_string(i) + ": " + e.what());
    }
  }
  return t;
}

inline teleo::Expression constant_reading(const std::string& x, double value) {
  // 0 * X + value: reads the goal X yet always returns value.
  return teleo::parse_expression("0 * " + x + " + " + std::to_string(value));
}

/// Counterfactual twin versus final model with a constant policy reading X and
/// evidence on X: identical datasets under identical seeds.
inline Tally counterfactual_equivalence(std::size_t models, std::uint64_t seed, std::size_t n = 200) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-2, 4);
  Tally t;
  for (std::size_t i = 0; i < models; ++i) {
    const teleo::ScmModel m = random_model(rng, 1 + i % 6);
    const std::string x = m.endogenous[rng() % m.endogenous.size()].name;
    const double x_star = small(rng) / 2.0;
    // Evidence: the value X takes in a pilot row, matched within a tolerance.
    const double x_obs = teleo::sample_dataset(m, 1, rng()).column(x)[0];
    const double tol = 0.25;

    teleo::TwinModel cf = teleo::build_twin(m, {x, x_star, {{x, x_obs}}});
    cf.tolerance = tol;
    teleo::TwinModel sfm = teleo::build_sfm(m, {x, constant_reading(x, x_star)});
    sfm.evidence = {{x, x_obs}};
    sfm.tolerance = tol;

    const std::uint64_t s = rng();
    ++t.cases;
    try {
      if (!teleo::identical(teleo::sample_twin(cf, n, s), teleo::sample_twin(sfm, n, s))) {
        t.fail("model " + std::to_string(i) + ": datasets differ");
      }
    } catch (const teleo::Error& e) {
      t.fail("model " + std::to_string(i) + ": " + e.what());
    }
  }
  return t;
}

/// Replica world of a final model with a constant policy versus do() on the
/// base, and the constant-policy final model versus the empty-evidence twin.
inline Tally intervention_equivalence(std::size_t models, std::uint64_t seed, std::size_t n = 300) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-2, 4);
  Tally t;
  for (std::size_t i = 0; i < models; ++i) {
    const teleo::ScmModel m = random_model(rng, 1 + i % 6);
    const std::string x = m.endogenous[rng() % m.endogenous.size()].name;
    const double value = small(rng) / 2.0;
    const std::uint64_t s = rng();
    ++t.cases;
    try {
      const teleo::TwinModel sfm = teleo::build_sfm(m, {x, teleo::Expression::number(value)});
      const teleo::Dataset both = teleo::sample_twin(sfm, n, s);
      const teleo::Dataset starred =
          both.select(sfm.replica_names()).renamed([](const std::string& c) { return teleo::strip_replica(c); });
      const teleo::Dataset done = teleo::sample_dataset(teleo::apply_do(m, x, value), n, s);
      if (!teleo::identical(starred, done)) t.fail("model " + std::to_string(i) + ": replica differs from do()");

      const teleo::TwinModel cf = teleo::build_twin(m, {x, value, {}});
      if (!(cf.model == sfm.model)) t.fail("model " + std::to_string(i) + ": twin structures differ");
      if (!teleo::identical(teleo::sample_twin(cf, n, s), both)) {
        t.fail("model " + std::to_string(i) + ": twin datasets differ");
      }
    } catch (const teleo::Error& e) {
      t.fail("model " + std::to_string(i) + ": " + e.what());
    }
  }
  return t;
}

/// d_separated against the brute-force path enumerator on random DAGs of at
/// most five vertices, every pair and every conditioning set of size <= 2.
inline Tally dsep_agreement(std::size_t dags, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Tally t;
  for (std::size_t trial = 0; trial < dags; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const double density = 0.2 + 0.6 * unit(rng);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::pair<std::string, std::string>> named;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (unit(rng) < density) {
          edges.emplace_back(perm[i], perm[j]);
          named.emplace_back(names[perm[i]], names[perm[j]]);
        }
      }
    }
    const teleo::Dag dag(names, named);
    const oracle::PathDsep o(n, edges);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          if ((mask & ((1u << x) | (1u << y))) || std::popcount(mask) > 2) continue;
          std::set<std::string> z;
          std::set<std::size_t> zi;
          for (std::size_t k = 0; k < n; ++k) {
            if (mask & (1u << k)) {
              z.insert(names[k]);
              zi.insert(k);
            }
          }
          ++t.cases;
          if (teleo::d_separated(dag, names[x], names[y], z) != o.separated(x, y, zi)) {
            t.fail("dag " + std::to_string(trial) + ": " + names[x] + ", " + names[y]);
          }
        }
      }
    }
  }
  return t;
}

/// Largest |Phi(z) - oracle(z)| over `points` evenly spaced z in [-lo, lo].
inline double phi_max_error(std::size_t points, double lo = 8.0) {
  double worst = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double z = -lo + 2.0 * lo * double(i) / double(points - 1);
    worst = std::max(worst, std::fabs(teleo::std_normal_cdf(z) - oracle::phi(z)));
  }
  return worst;
}

/// Rejection rate of the Fisher z-test at `alpha` on pairs of independent
/// standard normal columns.
inline double fisher_type_one_rate(std::size_t trials, std::size_t n, std::uint64_t seed, double alpha = 0.05) {
  std::size_t rejected = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    teleo::Rng rng(seed, trial);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.normal(0.0, 1.0);
      b[i] = rng.normal(0.0, 1.0);
    }
    const double r = teleo::pearson_correlation(a, b);
    rejected += teleo::fisher_z_test(r, n, 0, alpha).dependent;
  }
  return double(rejected) / double(trials);
}

}  // namespace testing_support
