#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace teleo {

struct Provenance {
  std::string model;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string operation = "observational";
};

/// Named-column table of reals, stored column-major.
class Dataset {
 public:
  Dataset() = default;
  /// `rows` zero-filled rows. Throws Error on duplicate column names.
  explicit Dataset(std::vector<std::string> columns, std::size_t rows = 0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return names_.size(); }
  const std::vector<std::string>& columns() const noexcept { return names_; }

  bool has_column(std::string_view name) const;
  /// Throws Error for unknown columns.
  std::size_t column_index(std::string_view name) const;

  std::span<const double> column(std::size_t c) const { return data_.at(c); }
  std::span<const double> column(std::string_view name) const { return data_[column_index(name)]; }
  std::span<double> column(std::size_t c) { return data_.at(c); }

  double at(std::size_t row, std::size_t col) const { return data_[col][row]; }
  double& at(std::size_t row, std::size_t col) { return data_[col][row]; }

  void append_row(std::span<const double> values);

  /// Columns in the requested order.
  Dataset select(const std::vector<std::string>& names) const;
  Dataset renamed(const std::function<std::string(const std::string&)>& rename) const;

  /// Row-wise concatenation; every part must have identical columns.
  static Dataset concat(const std::vector<Dataset>& parts);

  Provenance provenance;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> data_;
  std::size_t rows_ = 0;
};

/// Same columns and bit-identical values (provenance ignored).
bool identical(const Dataset& a, const Dataset& b);

}  // namespace teleo
