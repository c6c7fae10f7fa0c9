#include "gspace/enumeration.hpp"
#include "gspace/errors.hpp"
#include "gspace/experiments/config.hpp"
#include "gspace/experiments/experiments.hpp"
#include "gspace/experiments/io.hpp"
#include "gspace/generators.hpp"
#include "gspace/properties.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace gspace;
using namespace gspace::experiments;

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kSampling = 3, kNumeric = 4, kOutput = 5 };

// Raw flag values; the config file, when given, is applied on top.
struct Flags {
  std::optional<std::uint64_t> seed;
  std::string out = "results";
  std::string format = "csv";
  bool force = false;
  unsigned threads = 1;
  std::string config;
  std::string generator = "er";
  std::string p = "0.5";
  double density = 0.5;
  std::string n;
  int step = 1;
  int samples = 1000;
  int repeats = 10;
  std::string sizes;
  int decimals = 2;
  int runs = 10;
  std::uint64_t cap = 1'000'000;
  std::string dataset;
  int per_class = 1000;
  int trees = 100;
  int subset_size = 2;
  int extra_subsets = -1;
  std::string required = "gcc";
  double threshold = 0.2;
  int split_seeds = 5;
  int dims = 2;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--seed", f.seed, "Master seed (required)");
  app->add_option("--out", f.out, "Output directory");
  app->add_option("--format", f.format, "Output format: csv or json");
  app->add_flag("--force", f.force, "Overwrite existing output files");
  app->add_option("--threads", f.threads, "Worker threads");
  app->add_option("--config", f.config, "JSON config file; its keys override flags");
}

void add_experiment_options(CLI::App* app, Flags& f) {
  app->add_option("--gen,--generator", f.generator, "Generator: er, sbm, nws/ws, geometric/ge, ba");
  app->add_option("--p", f.p, "ER edge probability, or 'log' for log(n)/n");
  app->add_option("--density", f.density, "Target density for non-ER generators");
  app->add_option("--n", f.n, "Graph orders: 100, 5..15 or 50,100");
  app->add_option("--step", f.step, "Step for an a..b range in --n");
  app->add_option("--samples", f.samples, "Graphs per order");
  app->add_option("--repeats", f.repeats, "Repeats");
  app->add_option("--sizes", f.sizes, "Stability sample sizes, e.g. 100,200,400");
  app->add_option("--decimals", f.decimals, "Rounding decimals for collisions");
  app->add_option("--runs", f.runs, "Collision-hunt runs per order");
  app->add_option("--cap", f.cap, "Collision-hunt draw limit");
  app->add_option("--dataset", f.dataset, "Input dataset CSV");
  app->add_option("--per-class", f.per_class, "Classification graphs per generator");
  app->add_option("--trees", f.trees, "Random forest size");
  app->add_option("--subset-size", f.subset_size, "Sweep subset size");
  app->add_option("--extra-subsets", f.extra_subsets, "Restricted sweep: random subsets without --required (-1 = all)");
  app->add_option("--required", f.required, "Feature kept in a restricted sweep");
  app->add_option("--threshold", f.threshold, "Importance improvement threshold");
  app->add_option("--split-seeds", f.split_seeds, "Regression splits per target");
  app->add_option("--dims", f.dims, "MDS output dimensions");
}

ExperimentConfig to_config(const Flags& f, const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.seed = f.seed;
  c.out = f.out;
  c.format = parse_output_format(f.format);
  c.force = f.force;
  c.threads = f.threads;
  c.generator = f.generator;
  c.p = f.p;
  c.density = f.density;
  if (!f.n.empty()) c.n = parse_int_list(f.n, f.step);
  c.samples = f.samples;
  c.repeats = f.repeats;
  if (!f.sizes.empty()) c.sizes = parse_int_list(f.sizes);
  c.decimals = f.decimals;
  c.runs = f.runs;
  c.cap = f.cap;
  c.dataset = f.dataset;
  c.per_class = f.per_class;
  c.trees = f.trees;
  c.subset_size = f.subset_size;
  c.extra_subsets = f.extra_subsets;
  c.required = f.required;
  c.threshold = f.threshold;
  c.split_seeds = f.split_seeds;
  c.dims = f.dims;
  if (!f.config.empty()) c = apply_config_file(std::move(c), f.config);
  return c;
}

std::ofstream open_output(const std::string& path, bool force) {
  if (std::filesystem::exists(path) && !force) throw OutputError("refusing to overwrite " + path + " (use --force)");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path + " for writing");
  return out;
}

int enumerate_command(int n, const std::string& stats_path, const std::string& corr_path, const Flags& f) {
  const auto stats = exact_property_stats(n, f.threads);
  std::cout << "n=" << n << " labeled graphs " << stats.total_graphs << ", connected " << stats.connected_graphs
            << "\n";
  ExperimentConfig c;
  c.experiment = "enumerate";
  c.n = {n};
  c.seed = f.seed.value_or(0);
  const auto format = parse_output_format(f.format);
  if (!stats_path.empty()) {
    Table t({"property", "count", "mean", "std", "min", "q05", "q25", "q50", "q75", "q95", "max"});
    for (int p = 0; p < kPropertyCount; ++p) {
      const auto& d = stats.properties[p];
      t.row().add(std::string(kPropertyNames[p])).add(static_cast<std::uint64_t>(d.moments.count)).add(d.moments.mean);
      t.add(d.moments.stddev()).add(d.moments.min);
      for (double q : {0.05, 0.25, 0.5, 0.75, 0.95}) t.add(d.quantile(q));
      t.add(d.moments.max);
    }
    auto out = open_output(stats_path, f.force);
    write_table(out, t, provenance_of(c), format);
  }
  if (!corr_path.empty()) {
    const auto corr = correlation_from(stats.covariance);
    std::vector<std::string> columns = {"property"};
    for (auto name : kPropertyNames) columns.emplace_back(name);
    Table t(columns);
    for (int i = 0; i < kPropertyCount; ++i) {
      t.row().add(std::string(kPropertyNames[i]));
      for (int j = 0; j < kPropertyCount; ++j) t.add(corr.values(i, j));
    }
    auto out = open_output(corr_path, f.force);
    write_table(out, t, provenance_of(c), format);
  }
  return kOk;
}

int generate_command(const Flags& f, int n, const std::string& path) {
  ExperimentConfig c = to_config(f, "generate");
  c.n = {n};
  c.validate();
  const auto spec = c.generator_spec(n);
  const Graph g = generate(GeneratorSpec{spec.n, spec.params, *c.seed});
  if (path.empty() || path == "-") {
    write_edge_list(std::cout, g);
  } else {
    auto out = open_output(path, f.force);
    write_edge_list(out, g);
  }
  return kOk;
}

int props_command(const std::string& path) {
  Graph g;
  if (path.empty() || path == "-") {
    g = read_edge_list(std::cin);
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    g = read_edge_list(in);
  }
  const auto pv = compute_property_vector(g);
  for (int p = 0; p < kPropertyCount; ++p) std::cout << (p ? "," : "") << kPropertyNames[p];
  std::cout << "\n";
  for (int p = 0; p < kPropertyCount; ++p) std::cout << (p ? "," : "") << format_number(pv.values(p));
  std::cout << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Labeled-graph property space: generators, properties, enumeration and experiments"};
  app.require_subcommand(1);
  Flags flags;

  auto* run = app.add_subcommand("run", "Run one experiment and write its tables");
  std::string experiment;
  run->add_option("experiment", experiment, "Experiment id")->required();
  add_common(run, flags);
  add_experiment_options(run, flags);

  auto* enumerate = app.add_subcommand("enumerate", "Exact statistics over all connected labeled graphs");
  int enum_n = 0;
  std::string stats_path, corr_path;
  enumerate->add_option("--n", enum_n, "Order, 4..7")->required();
  enumerate->add_option("--stats", stats_path, "Per-property summary output file");
  enumerate->add_option("--correlations", corr_path, "Correlation matrix output file");
  enumerate->add_option("--seed", flags.seed, "Recorded in the provenance header");
  enumerate->add_option("--format", flags.format, "Output format: csv or json");
  enumerate->add_flag("--force", flags.force, "Overwrite existing output files");
  enumerate->add_option("--threads", flags.threads, "Worker threads");

  auto* gen = app.add_subcommand("generate", "Draw one graph and print its edge list");
  int gen_n = 100;
  std::string gen_out;
  gen->add_option("--seed", flags.seed, "Seed (required)");
  gen->add_option("--gen,--generator", flags.generator, "Generator: er, sbm, nws/ws, geometric/ge, ba");
  gen->add_option("--n", gen_n, "Order");
  gen->add_option("--p", flags.p, "ER edge probability, or 'log'");
  gen->add_option("--density", flags.density, "Target density for non-ER generators");
  gen->add_option("--out", gen_out, "Edge list file (default: standard output)");
  gen->add_flag("--force", flags.force, "Overwrite an existing file");

  auto* props = app.add_subcommand("props", "Property vector of an edge-list graph");
  std::string props_in;
  props->add_option("input", props_in, "Edge list file (default: standard input)");

  auto* dataset = app.add_subcommand("dataset", "Build the labeled eight-generator dataset");
  add_common(dataset, flags);
  add_experiment_options(dataset, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) {
      experiments::run(to_config(flags, experiment), std::cout);
    } else if (*enumerate) {
      return enumerate_command(enum_n, stats_path, corr_path, flags);
    } else if (*gen) {
      return generate_command(flags, gen_n, gen_out);
    } else if (*props) {
      return props_command(props_in);
    } else if (*dataset) {
      build_dataset_file(to_config(flags, "dataset"), std::cout);
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kConfig;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfig;
  } catch (const SamplingError& e) {
    std::cerr << "sampling failure: " << e.what() << "\n";
    return kSampling;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kNumeric;
  } catch (const OutputError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kOutput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
