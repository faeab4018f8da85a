#pragma once

// CSV data files: a header row of column names, one row per sample, values
// in shortest round-trip decimal form, LF line endings.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "teleo/dataset.hpp"

namespace teleo {

std::string to_csv(const Dataset& data);

/// Throws SchemaError (pointer "line:N") on ragged rows, malformed numbers,
/// or, when `known` is non-empty, a header naming a column outside it.
Dataset parse_csv(std::string_view text, const std::vector<std::string>& known = {});

Dataset read_csv(const std::filesystem::path& path, const std::vector<std::string>& known = {});
void write_csv(const Dataset& data, const std::filesystem::path& path);

}  // namespace teleo
