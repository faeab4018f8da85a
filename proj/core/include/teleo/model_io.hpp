#pragma once

// JSON model and intervention files.
//
// Model:
//   { "name": string,
//     "endogenous": [ { "name": string, "exogenous": string, "equation": string } ... ],
//     "exogenous":  [ { "name": string,
//                       "distribution": {"type":"bernoulli","p":number}
//                                     | {"type":"normal","mean":number,"variance":number} } ... ],
//     "twin": { "kind": "final"|"counterfactual", "target": string,
//               "evidence": {string: number}, "tolerance": number } }   // optional
//
// Intervention:
//   {"op":"do","target":str,"value":num}
//   {"op":"mechanism","target":str,"equation":str}
//   {"op":"counterfactual","target":str,"value":num,"evidence":{str:num}}
//   {"op":"intentional","target":str,"equation":str}
//
// Unknown keys are rejected; errors carry a JSON pointer.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "teleo/operators.hpp"
#include "teleo/scm.hpp"

namespace teleo {

using AnyModel = std::variant<ScmModel, TwinModel>;

AnyModel parse_model_json(std::string_view text);
/// Canonical form: fixed key order, two-space indent, equations re-printed, trailing newline.
std::string model_to_json(const AnyModel& model);

AnyModel read_model(const std::filesystem::path& path);
void write_model(const AnyModel& model, const std::filesystem::path& path);

/// The plain model, or the full twin (both worlds) as a plain model.
const ScmModel& underlying(const AnyModel& model);

InterventionSpec parse_intervention_json(std::string_view text);
std::string intervention_to_json(const InterventionSpec& spec);
InterventionSpec read_intervention(const std::filesystem::path& path);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace teleo
