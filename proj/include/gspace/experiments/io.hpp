#pragma once

#include "gspace/analytics/dataset.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gspace::experiments {

enum class OutputFormat { Csv, Json };
OutputFormat parse_output_format(const std::string& name);
const char* to_string(OutputFormat format);

/// Shortest-free fixed form: 17 significant digits ("%.17g"); NaN prints as "nan".
std::string format_number(double x);

struct Provenance {
  std::string tool = "gspace";
  std::string version;
  std::string experiment;
  std::string config_hash;
  std::uint64_t seed = 0;
};

/// A rectangular table of preformatted cells.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  Table& row();  // starts a new row
  Table& add(const std::string& cell);
  Table& add(const char* cell) { return add(std::string(cell)); }
  Table& add(double value);
  Table& add(std::int64_t value);
  Table& add(std::uint64_t value);
  Table& add(int value) { return add(static_cast<std::int64_t>(value)); }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// CSV: "# key: value" provenance lines, a header, then rows.
/// JSON: {"provenance": {...}, "columns": [...], "rows": [[...], ...]} with numeric cells as numbers.
void write_table(std::ostream& os, const Table& table, const Provenance& provenance, OutputFormat format);

/// Output files live directly inside one directory. Existing files are only
/// replaced when `force` is set; names with path separators are rejected.
class OutputDirectory {
 public:
  OutputDirectory(std::filesystem::path root, bool force);

  /// Writes table to root/stem.{csv,json}; throws OutputError on refusal or I/O failure.
  std::filesystem::path write(const std::string& stem, const Table& table, const Provenance& provenance,
                              OutputFormat format) const;
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  bool force_;
};

/// generator, seed, n, the 12 property columns, then label (empty when unlabeled).
Table dataset_table(const analytics::Dataset& d);
/// Inverse of dataset_table in CSV form. Class indices follow first appearance.
/// Throws InputError on malformed content.
analytics::Dataset read_dataset_csv(std::istream& is);
analytics::Dataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace gspace::experiments
