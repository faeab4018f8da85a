#include "teleo/error.hpp"

#include <utility>

namespace teleo {

ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
    : Error(std::move(message)), offset_(offset), expected_(std::move(expected)) {}

SchemaError::SchemaError(const std::string& message, std::string pointer)
    : Error(message + " (at " + pointer + ")"), pointer_(std::move(pointer)) {}

InfeasibleEvidence::InfeasibleEvidence(const std::string& message, double acceptance_rate)
    : Error(message), acceptance_rate_(acceptance_rate) {}

}  // namespace teleo
