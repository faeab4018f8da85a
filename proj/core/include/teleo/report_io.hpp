#pragma once

#include <string>

#include "teleo/inference.hpp"
#include "teleo/scm.hpp"

namespace teleo {

// Reports as pretty-printed JSON with a trailing newline. Output is a pure
// function of the report, so equal reports serialise byte-identically.

std::string to_json(const MarkovReport& report);
std::string to_json(const DetectionReport& report);
std::string to_json(const DiscoveryReport& report);
std::string to_json(const std::vector<Violation>& violations);

}  // namespace teleo
