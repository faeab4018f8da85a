#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "teleo/dataset.hpp"
#include "teleo/scm.hpp"

namespace teleo {

/// Total draw budget for rejection sampling.
inline constexpr std::size_t kDefaultMaxTries = 1'000'000;

/// Ancestral sampling. Each row draws every exogenous variable in declaration
/// order from stream 0 of `seed`, then evaluates the equations in topological
/// order. Columns are the endogenous variables in declaration order.
Dataset sample_dataset(const ScmModel& model, std::size_t n, std::uint64_t seed);

/// Splits n rows into `shards` contiguous blocks (block i holds rows
/// [i*n/k, (i+1)*n/k)), samples block i from stream i on its own thread and
/// concatenates in block order. With one shard this equals sample_dataset.
Dataset sample_sharded(const ScmModel& model, std::size_t n, std::uint64_t seed, std::size_t shards);

/// Rejection sampling of the exogenous posterior given endogenous evidence.
/// Returns n exogenous rows (columns: exogenous names) whose forward
/// evaluation lies within `tolerance` of every evidence value. Throws
/// InfeasibleEvidence once `max_tries` total draws are spent.
Dataset rejection_condition(const ScmModel& model, const std::map<std::string, double, std::less<>>& evidence,
                            double tolerance, std::size_t n, std::uint64_t seed,
                            std::size_t max_tries = kDefaultMaxTries);

/// Samples both worlds of a twin model from shared exogenous draws. With
/// evidence the draws come from rejection_condition on the same stream.
/// Columns: base variables then replicas.
Dataset sample_twin(const TwinModel& twin, std::size_t n, std::uint64_t seed,
                    std::size_t max_tries = kDefaultMaxTries);

}  // namespace teleo
