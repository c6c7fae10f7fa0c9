#include "gspace/experiments/config.hpp"

#include "gspace/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace gspace::experiments {

namespace {

using json = nlohmann::json;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["out"] = c.out.generic_string();
  j["format"] = to_string(c.format);
  j["force"] = c.force;
  j["threads"] = c.threads;
  j["generator"] = c.generator;
  j["p"] = c.p;
  j["density"] = c.density;
  j["n"] = c.n;
  j["samples"] = c.samples;
  j["repeats"] = c.repeats;
  j["sizes"] = c.sizes;
  j["decimals"] = c.decimals;
  j["runs"] = c.runs;
  j["cap"] = c.cap;
  j["dataset"] = c.dataset;
  j["per_class"] = c.per_class;
  j["trees"] = c.trees;
  j["subset_size"] = c.subset_size;
  j["extra_subsets"] = c.extra_subsets;
  j["required"] = c.required;
  j["threshold"] = c.threshold;
  j["split_seeds"] = c.split_seeds;
  j["dims"] = c.dims;
  return j;
}

std::vector<int> int_list(const json& v, const std::string& key) {
  if (v.is_number_integer()) return {v.get<int>()};
  if (v.is_string()) return parse_int_list(v.get<std::string>());
  if (v.is_array()) {
    std::vector<int> out;
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw ConfigError("'" + key + "' must hold integers");
      out.push_back(e.get<int>());
    }
    return out;
  }
  throw ConfigError("'" + key + "' must be an integer, a list or a range string");
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text, int step) {
  if (step < 1) throw ConfigError("step must be positive");
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("malformed integer list: " + text);
    }
    if (used != s.size()) throw ConfigError("malformed integer list: " + text);
    return v;
  };
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = to_int(text.substr(0, dots)), hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw ConfigError("empty range: " + text);
    for (int v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_int(item));
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

void ExperimentConfig::validate() const {
  if (!seed) throw ConfigError("a seed is required (--seed)");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (n.empty()) throw ConfigError("at least one graph order is required");
  for (int v : n)
    if (v < 1) throw ConfigError("graph orders must be positive");
  if (samples < 0) throw ConfigError("samples must be non-negative");
  if (repeats < 1) throw ConfigError("repeats must be at least 1");
  if (sizes.empty()) throw ConfigError("sizes must not be empty");
  for (int s : sizes)
    if (s < 2) throw ConfigError("stability sample sizes must be at least 2");
  if (decimals < 0 || decimals > 15) throw ConfigError("decimals must lie in [0, 15]");
  if (runs < 1) throw ConfigError("runs must be at least 1");
  if (cap < 1) throw ConfigError("cap must be at least 1");
  if (per_class < 0) throw ConfigError("per_class must be non-negative");
  if (trees < 1) throw ConfigError("trees must be at least 1");
  if (subset_size < 1 || subset_size > kPropertyCount) throw ConfigError("subset_size must lie in [1, 12]");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("threshold must lie in (0, 1)");
  if (split_seeds < 1) throw ConfigError("split_seeds must be at least 1");
  if (dims < 1) throw ConfigError("dims must be at least 1");
  if (!(density >= 0.0 && density <= 1.0)) throw ConfigError("density must lie in [0, 1]");
  try {
    parse_generator_kind(generator);
    parse_property(required);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (p != "log") {
    const double v = er_probability(2);
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("p must lie in [0, 1] or be 'log'");
  }
}

std::string ExperimentConfig::canonical_json() const {
  json j = to_json(*this);
  // Where and how fast a run happens does not change its results.
  for (const char* key : {"out", "force", "threads"}) j.erase(key);
  return j.dump();
}

std::string ExperimentConfig::config_hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_json())));
  return buf;
}

double ExperimentConfig::er_probability(int order) const {
  if (p == "log") return order > 1 ? std::min(1.0, std::log(static_cast<double>(order)) / order) : 1.0;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(p, &used);
  } catch (const std::exception&) {
    throw ConfigError("malformed p: " + p);
  }
  if (used != p.size()) throw ConfigError("malformed p: " + p);
  return v;
}

GeneratorSpec ExperimentConfig::generator_spec(int order) const {
  const auto kind = parse_generator_kind(generator);
  GeneratorSpec spec{order, ErParams{er_probability(order)}, 0};
  switch (kind) {
    case GeneratorKind::ER: return spec;
    case GeneratorKind::SBM:
      spec.params = SbmParams{equal_blocks(order, 2), Eigen::MatrixXd::Constant(2, 2, 0.75)};
      break;
    case GeneratorKind::NWS:
      spec.params = NwsParams{std::max(2, 2 * static_cast<int>(std::floor(0.75 * density * (order - 1) / 2.0))), 0.0};
      break;
    case GeneratorKind::GEOMETRIC: spec.params = GeometricParams{0.5}; break;
    case GeneratorKind::BA: spec.params = BaParams{1}; break;
  }
  return tune_density(spec, density);
}

ExperimentConfig apply_config_json(ExperimentConfig c, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "experiment", "seed", "out", "format", "force", "threads", "generator", "p", "density",
      "n", "samples", "repeats", "sizes", "decimals", "runs", "cap", "dataset", "per_class",
      "trees", "subset_size", "extra_subsets", "required", "threshold", "split_seeds", "dims"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config key: " + key);
  try {
    if (j.contains("experiment")) c.experiment = j["experiment"].get<std::string>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("format")) c.format = parse_output_format(j["format"].get<std::string>());
    if (j.contains("force")) c.force = j["force"].get<bool>();
    if (j.contains("threads")) c.threads = j["threads"].get<unsigned>();
    if (j.contains("generator")) c.generator = j["generator"].get<std::string>();
    if (j.contains("p")) c.p = j["p"].is_string() ? j["p"].get<std::string>() : j["p"].dump();
    if (j.contains("density")) c.density = j["density"].get<double>();
    if (j.contains("n")) c.n = int_list(j["n"], "n");
    if (j.contains("samples")) c.samples = j["samples"].get<int>();
    if (j.contains("repeats")) c.repeats = j["repeats"].get<int>();
    if (j.contains("sizes")) c.sizes = int_list(j["sizes"], "sizes");
    if (j.contains("decimals")) c.decimals = j["decimals"].get<int>();
    if (j.contains("runs")) c.runs = j["runs"].get<int>();
    if (j.contains("cap")) c.cap = j["cap"].get<std::uint64_t>();
    if (j.contains("dataset")) c.dataset = j["dataset"].get<std::string>();
    if (j.contains("per_class")) c.per_class = j["per_class"].get<int>();
    if (j.contains("trees")) c.trees = j["trees"].get<int>();
    if (j.contains("subset_size")) c.subset_size = j["subset_size"].get<int>();
    if (j.contains("extra_subsets")) c.extra_subsets = j["extra_subsets"].get<int>();
    if (j.contains("required")) c.required = j["required"].get<std::string>();
    if (j.contains("threshold")) c.threshold = j["threshold"].get<double>();
    if (j.contains("split_seeds")) c.split_seeds = j["split_seeds"].get<int>();
    if (j.contains("dims")) c.dims = j["dims"].get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value has the wrong type: ") + e.what());
  }
  return c;
}

ExperimentConfig apply_config_file(ExperimentConfig base, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return apply_config_json(std::move(base), text.str());
}

}  // namespace gspace::experiments
