#include "gspace/experiments/io.hpp"

#include "gspace/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace gspace::experiments {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool is_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

template <typename T>
T parse_integer(const std::string& s, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError(std::string("malformed ") + what + ": " + s);
  return value;
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("unknown output format: " + name);
}

const char* to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

Table& Table::row() {
  if (!rows_.empty() && rows_.back().size() != columns_.size()) throw ValidationError("table row has wrong width");
  rows_.emplace_back();
  return *this;
}

Table& Table::add(const std::string& cell) {
  if (rows_.empty()) rows_.emplace_back();
  if (rows_.back().size() == columns_.size()) throw ValidationError("table row is already full");
  rows_.back().push_back(cell);
  return *this;
}

Table& Table::add(double value) { return add(format_number(value)); }
Table& Table::add(std::int64_t value) { return add(std::to_string(value)); }
Table& Table::add(std::uint64_t value) { return add(std::to_string(value)); }

void write_table(std::ostream& os, const Table& table, const Provenance& provenance, OutputFormat format) {
  for (const auto& row : table.rows())
    if (row.size() != table.columns().size()) throw ValidationError("table row has wrong width");
  if (format == OutputFormat::Csv) {
    os << "# tool: " << provenance.tool << "\n"
       << "# version: " << provenance.version << "\n"
       << "# experiment: " << provenance.experiment << "\n"
       << "# config_hash: " << provenance.config_hash << "\n"
       << "# seed: " << provenance.seed << "\n";
    for (std::size_t i = 0; i < table.columns().size(); ++i) os << (i ? "," : "") << table.columns()[i];
    os << "\n";
    for (const auto& row : table.rows()) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << "\n";
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["provenance"] = {{"tool", provenance.tool},
                       {"version", provenance.version},
                       {"experiment", provenance.experiment},
                       {"config_hash", provenance.config_hash},
                       {"seed", provenance.seed}};
  doc["columns"] = table.columns();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows()) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      double value = 0.0;
      // Numbers stay as their 17-digit text so JSON and CSV carry identical digits.
      if (is_number(cell, value) && std::isfinite(value))
        out.push_back(nlohmann::ordered_json::parse(cell));
      else
        out.push_back(cell);
    }
    rows.push_back(std::move(out));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(1) << "\n";
}

OutputDirectory::OutputDirectory(std::filesystem::path root, bool force) : root_(std::move(root)), force_(force) {}

std::filesystem::path OutputDirectory::write(const std::string& stem, const Table& table, const Provenance& provenance,
                                             OutputFormat format) const {
  if (stem.empty() || stem.find('/') != std::string::npos || stem.find('\\') != std::string::npos || stem == "." ||
      stem == "..")
    throw OutputError("invalid output file name: " + stem);
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw OutputError("cannot create output directory " + root_.string() + ": " + ec.message());
  const auto path = root_ / (stem + "." + to_string(format));
  if (std::filesystem::exists(path) && !force_)
    throw OutputError("refusing to overwrite " + path.string() + " (use --force)");
  std::ostringstream buffer;
  write_table(buffer, table, provenance, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << buffer.str();
  out.flush();
  if (!out) throw OutputError("failed writing " + path.string());
  return path;
}

Table dataset_table(const analytics::Dataset& d) {
  d.validate();
  std::vector<std::string> columns = {"generator", "seed", "n"};
  for (auto name : kPropertyNames) columns.emplace_back(name);
  columns.emplace_back("label");
  Table t(std::move(columns));
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    t.row();
    if (d.info.empty()) {
      t.add(std::string()).add(std::uint64_t{0}).add(0);
    } else {
      t.add(d.info[r].generator).add(d.info[r].seed).add(d.info[r].n);
    }
    for (int p = 0; p < kPropertyCount; ++p) t.add(d.features(r, p));
    t.add(d.labeled() ? d.class_names[d.labels[r]] : std::string());
  }
  return t;
}

analytics::Dataset read_dataset_csv(std::istream& is) {
  analytics::Dataset d;
  std::map<std::string, int> class_index;
  std::string line;
  bool header_seen = false;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv_line(line);
    if (!header_seen) {
      header_seen = true;
      if (cells.size() != 4 + kPropertyCount || cells[0] != "generator" || cells[1] != "seed" || cells[2] != "n" ||
          cells.back() != "label")
        throw InputError("dataset header must be generator,seed,n, the 12 properties, then label");
      for (int p = 0; p < kPropertyCount; ++p)
        if (cells[3 + p] != kPropertyNames[p]) throw InputError("unexpected dataset column: " + cells[3 + p]);
      continue;
    }
    if (cells.size() != 4 + kPropertyCount)
      throw InputError("dataset line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) + " cells");
    if (const auto& label = cells.back(); !label.empty()) {
      const auto [it, inserted] = class_index.emplace(label, static_cast<int>(d.class_names.size()));
      if (inserted) d.class_names.push_back(label);
      d.labels.push_back(it->second);
    }
    d.info.push_back({cells[0], parse_integer<std::uint64_t>(cells[1], "seed"), parse_integer<int>(cells[2], "n")});
    std::vector<double> values(kPropertyCount);
    for (int p = 0; p < kPropertyCount; ++p) {
      const auto& cell = cells[3 + p];
      if (cell == "nan") {
        values[p] = std::nan("");
      } else if (!is_number(cell, values[p])) {
        throw InputError("malformed number on dataset line " + std::to_string(line_no) + ": " + cell);
      }
    }
    rows.push_back(std::move(values));
  }
  if (!header_seen) throw InputError("dataset has no header");
  if (!d.labels.empty() && d.labels.size() != rows.size()) throw InputError("dataset mixes labeled and unlabeled rows");
  d.features.resize(static_cast<Eigen::Index>(rows.size()), kPropertyCount);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int p = 0; p < kPropertyCount; ++p) d.features(static_cast<Eigen::Index>(r), p) = rows[r][p];
  return d;
}

analytics::Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset " + path.string());
  return read_dataset_csv(in);
}

}  // namespace gspace::experiments
