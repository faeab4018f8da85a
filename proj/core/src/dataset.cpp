#include "teleo/dataset.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "teleo/error.hpp"

namespace teleo {

Dataset::Dataset(std::vector<std::string> columns, std::size_t rows)
    : names_(std::move(columns)), data_(names_.size(), std::vector<double>(rows, 0.0)), rows_(rows) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw Error("duplicate column '" + n + "'");
  }
  provenance.n = rows;
}

bool Dataset::has_column(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t Dataset::column_index(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error("dataset has no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

void Dataset::append_row(std::span<const double> values) {
  if (values.size() != names_.size()) {
    throw Error("row has " + std::to_string(values.size()) + " values, expected " + std::to_string(names_.size()));
  }
  for (std::size_t c = 0; c < values.size(); ++c) data_[c].push_back(values[c]);
  ++rows_;
  provenance.n = rows_;
}

Dataset Dataset::select(const std::vector<std::string>& names) const {
  Dataset out(names, 0);
  out.rows_ = rows_;
  for (std::size_t c = 0; c < names.size(); ++c) out.data_[c] = data_[column_index(names[c])];
  out.provenance = provenance;
  return out;
}

Dataset Dataset::renamed(const std::function<std::string(const std::string&)>& rename) const {
  std::vector<std::string> names;
  names.reserve(names_.size());
  for (const auto& n : names_) names.push_back(rename(n));
  Dataset out(std::move(names), 0);
  out.data_ = data_;
  out.rows_ = rows_;
  out.provenance = provenance;
  return out;
}

Dataset Dataset::concat(const std::vector<Dataset>& parts) {
  if (parts.empty()) return {};
  Dataset out(parts.front().names_, 0);
  out.provenance = parts.front().provenance;
  for (const auto& p : parts) {
    if (p.names_ != out.names_) throw Error("cannot concatenate datasets with different columns");
    for (std::size_t c = 0; c < out.cols(); ++c) {
      out.data_[c].insert(out.data_[c].end(), p.data_[c].begin(), p.data_[c].end());
    }
    out.rows_ += p.rows_;
  }
  out.provenance.n = out.rows_;
  return out;
}

bool identical(const Dataset& a, const Dataset& b) {
  if (a.columns() != b.columns() || a.rows() != b.rows()) return false;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    const auto ca = a.column(c);
    const auto cb = b.column(c);
    for (std::size_t r = 0; r < ca.size(); ++r) {
      if (std::bit_cast<std::uint64_t>(ca[r]) != std::bit_cast<std::uint64_t>(cb[r])) return false;
    }
  }
  return true;
}

}  // namespace teleo
