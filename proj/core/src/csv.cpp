#include "teleo/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "teleo/error.hpp"
#include "teleo/model_io.hpp"

namespace teleo {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string to_csv(const Dataset& data) {
  std::string out;
  for (std::size_t c = 0; c < data.cols(); ++c) {
    if (c) out += ',';
    out += data.columns()[c];
  }
  out += '\n';
  std::array<char, 64> buf{};
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t c = 0; c < data.cols(); ++c) {
      if (c) out += ',';
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), data.at(r, c));
      out.append(buf.data(), res.ptr);
    }
    out += '\n';
  }
  return out;
}

Dataset parse_csv(std::string_view text, const std::vector<std::string>& known) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw SchemaError("CSV file has no header row", "line:1");

  std::vector<std::string> names;
  for (auto field : split(lines.front())) {
    const std::string name(trim(field));
    if (name.empty()) throw SchemaError("empty column name", "line:1");
    if (!known.empty() && std::find(known.begin(), known.end(), name) == known.end()) {
      throw SchemaError("unknown column '" + name + "'", "line:1");
    }
    names.push_back(name);
  }
  Dataset data;
  try {
    data = Dataset(names, 0);
  } catch (const Error& e) {
    throw SchemaError(e.what(), "line:1");
  }

  std::vector<double> row(names.size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "line:" + std::to_string(i + 1);
    const auto fields = split(lines[i]);
    if (fields.size() != names.size()) {
      throw SchemaError("row has " + std::to_string(fields.size()) + " fields, header has " +
                            std::to_string(names.size()),
                        where);
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string_view f = trim(fields[c]);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(v)) {
        throw SchemaError("malformed number '" + std::string(f) + "' in column '" + names[c] + "'", where);
      }
      row[c] = v;
    }
    data.append_row(row);
  }
  return data;
}

Dataset read_csv(const std::filesystem::path& path, const std::vector<std::string>& known) {
  return parse_csv(read_text_file(path), known);
}

void write_csv(const Dataset& data, const std::filesystem::path& path) { write_text_file(path, to_csv(data)); }

}  // namespace teleo
