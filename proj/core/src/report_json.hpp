#pragma once

// Shared JSON builders for report serialisation (private to the library).

#include <json.hpp>

#include "teleo/inference.hpp"

namespace teleo::detail {

using ojson = nlohmann::ordered_json;

ojson statement_json(const IndependenceStatement& s);
ojson test_json(const TestResult& t);
ojson markov_json(const MarkovReport& r);
ojson detection_json(const DetectionReport& r);
ojson discovery_json(const DiscoveryReport& r);

}  // namespace teleo::detail
