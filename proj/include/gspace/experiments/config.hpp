#pragma once

#include "gspace/experiments/io.hpp"
#include "gspace/generators.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gspace::experiments {

/// Settings for one experiment run. Every field maps to a JSON key of the
/// same name (and to a CLI flag with '_' written as '-').
struct ExperimentConfig {
  std::string experiment;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "results";
  OutputFormat format = OutputFormat::Csv;
  bool force = false;
  unsigned threads = 1;

  std::string generator = "er";
  std::string p = "0.5";             // ER edge probability, or "log" for log(n)/n
  double density = 0.5;              // target density for the other generators
  std::vector<int> n = {100};        // graph orders
  int samples = 1000;
  int repeats = 10;
  std::vector<int> sizes = {100, 200, 400, 800, 1600};  // stability sample sizes
  int decimals = 2;
  int runs = 10;                     // collision-hunt runs per order
  std::uint64_t cap = 1'000'000;     // collision-hunt draw limit
  std::string dataset;               // optional input dataset CSV
  int per_class = 1000;              // classification dataset size per generator
  int trees = 100;
  int subset_size = 2;
  int extra_subsets = -1;            // -1 evaluates every subset
  std::string required = "gcc";      // feature kept in restricted sweeps
  double threshold = 0.2;
  int split_seeds = 5;
  int dims = 2;

  /// Throws ConfigError on any out-of-range setting or a missing seed.
  void validate() const;
  /// Sorted-key JSON of every field except out, force and threads; the
  /// basis of config_hash().
  std::string canonical_json() const;
  /// FNV-1a 64 of canonical_json(), as 16 hex digits.
  std::string config_hash() const;
  /// Edge probability for an ER graph on n vertices.
  double er_probability(int n) const;
  /// Generator spec on n vertices from generator/p/density.
  GeneratorSpec generator_spec(int n) const;
};

/// Parses "a..b" (with step), "a,b,c" or a single integer.
std::vector<int> parse_int_list(const std::string& text, int step = 1);

/// Overrides fields of `base` with keys present in the JSON text.
/// Unknown keys and wrong types raise ConfigError.
ExperimentConfig apply_config_json(ExperimentConfig base, const std::string& json_text);
ExperimentConfig apply_config_file(ExperimentConfig base, const std::filesystem::path& path);

}  // namespace gspace::experiments
