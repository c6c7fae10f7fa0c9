#include "gspace/experiments/experiments.hpp"

#include "gspace/analytics/classifier.hpp"
#include "gspace/analytics/collisions.hpp"
#include "gspace/analytics/correlation.hpp"
#include "gspace/analytics/evaluation.hpp"
#include "gspace/analytics/mds.hpp"
#include "gspace/analytics/regression.hpp"
#include "gspace/enumeration.hpp"
#include "gspace/errors.hpp"
#include "gspace/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace gspace::experiments {

namespace {

using analytics::Dataset;

struct Context {
  const ExperimentConfig& config;
  OutputDirectory out;
  Provenance provenance;
  RunResult result;
  std::ostream& log;

  std::uint64_t seed() const { return *config.seed; }

  void write(const std::string& stem, const Table& table) {
    result.files.push_back(out.write(stem, table, provenance, config.format));
  }
  void say(const std::string& line) {
    result.summary.push_back(line);
    log << line << "\n";
  }
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

std::vector<std::string> property_columns(std::vector<std::string> head) {
  for (auto name : kPropertyNames) head.emplace_back(name);
  return head;
}

Table matrix_table(const PropertyMatrix& m) {
  Table t(property_columns({"property"}));
  for (int i = 0; i < kPropertyCount; ++i) {
    t.row().add(std::string(kPropertyNames[i]));
    for (int j = 0; j < kPropertyCount; ++j) t.add(m(i, j));
  }
  return t;
}

// Sorted copy for quantiles.
std::vector<double> sorted_values(const Eigen::Ref<const Eigen::VectorXd>& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

constexpr double kSummaryQuantiles[] = {0.05, 0.25, 0.5, 0.75, 0.95};

Dataset input_dataset(const ExperimentConfig& c) {
  if (!c.dataset.empty()) return read_dataset_csv(std::filesystem::path(c.dataset));
  return analytics::sample_dataset(c.generator_spec(c.n.front()), static_cast<std::size_t>(c.samples), *c.seed,
                                   c.threads);
}

void run_trends(Context& ctx) {
  const auto& c = ctx.config;
  Table values({"n", "property", "value"});
  Table summary({"n", "property", "count", "mean", "std", "min", "q05", "q25", "q50", "q75", "q95", "max"});
  for (int n : c.n) {
    const Dataset d = analytics::sample_dataset(c.generator_spec(n), static_cast<std::size_t>(c.samples),
                                                child_seed(ctx.seed(), static_cast<std::uint64_t>(n)), c.threads);
    for (Eigen::Index r = 0; r < d.rows(); ++r)
      for (int p = 0; p < kPropertyCount; ++p) values.row().add(n).add(std::string(kPropertyNames[p])).add(d.features(r, p));
    for (int p = 0; p < kPropertyCount; ++p) {
      numerics::RunningMoments m;
      for (Eigen::Index r = 0; r < d.rows(); ++r) m.push(d.features(r, p));
      const auto sorted = sorted_values(d.features.col(p));
      summary.row().add(n).add(std::string(kPropertyNames[p])).add(static_cast<std::uint64_t>(m.count));
      summary.add(m.mean).add(m.stddev()).add(sorted.empty() ? std::nan("") : sorted.front());
      for (double q : kSummaryQuantiles) summary.add(numerics::quantile_sorted(sorted, q));
      summary.add(sorted.empty() ? std::nan("") : sorted.back());
    }
  }
  ctx.write("trends_values", values);
  ctx.write("trends_summary", summary);
  ctx.say("trends: " + std::to_string(summary.rows().size()) + " (n, property) groups");
}

void run_connectivity(Context& ctx) {
  const auto& c = ctx.config;
  Table t({"n", "p", "samples", "connected", "fraction", "exact_fraction"});
  for (int n : c.n) {
    const double p = c.er_probability(n);
    Rng rng(child_seed(ctx.seed(), static_cast<std::uint64_t>(n)));
    std::uint64_t connected = 0;
    for (int s = 0; s < c.samples; ++s) connected += is_connected(gen_er(n, p, rng));
    const double fraction = c.samples > 0 ? static_cast<double>(connected) / c.samples : std::nan("");
    t.row().add(n).add(p).add(c.samples).add(connected).add(fraction);
    if (p == 0.5 && n >= kMinEnumerationOrder && n <= kMaxEnumerationOrder)
      t.add(static_cast<double>(count_connected(n, c.threads)) / std::ldexp(1.0, n * (n - 1) / 2));
    else
      t.add(std::string());
    ctx.say("connectivity: n=" + std::to_string(n) + " connected fraction " + fmt(fraction));
  }
  ctx.write("connectivity", t);
}

void run_groundtruth(Context& ctx) {
  const auto& c = ctx.config;
  Table t({"n", "property", "exact_mean", "exact_std", "exact_q05", "exact_q25", "exact_q50", "exact_q75", "exact_q95",
           "sample_mean", "sample_std", "sample_se", "z"});
  for (int n : c.n) {
    const auto exact = exact_property_stats(n, c.threads);
    const Dataset d = analytics::sample_dataset(GeneratorSpec{n, ErParams{c.er_probability(n)}, 0},
                                                static_cast<std::size_t>(c.samples),
                                                child_seed(ctx.seed(), static_cast<std::uint64_t>(n)), c.threads);
    int far = 0;
    for (int p = 0; p < kPropertyCount; ++p) {
      const auto& dist = exact.properties[p];
      numerics::RunningMoments m;
      for (Eigen::Index r = 0; r < d.rows(); ++r) m.push(d.features(r, p));
      const double se = m.count > 0 ? m.stddev() / std::sqrt(static_cast<double>(m.count)) : std::nan("");
      const double z = se > 0 ? (m.mean - dist.moments.mean) / se : (m.mean == dist.moments.mean ? 0.0 : std::nan(""));
      far += !(std::abs(z) <= 3.0);
      t.row().add(n).add(std::string(kPropertyNames[p])).add(dist.moments.mean).add(dist.moments.stddev());
      for (double q : kSummaryQuantiles) t.add(dist.quantile(q));
      t.add(m.mean).add(m.stddev()).add(se).add(z);
    }
    ctx.say("groundtruth: n=" + std::to_string(n) + " " + std::to_string(exact.connected_graphs) +
            " connected graphs; " + std::to_string(far) + " properties with sample mean beyond 3 standard errors");
  }
  ctx.write("groundtruth", t);
}

void run_correlations(Context& ctx) {
  const auto& c = ctx.config;
  for (int n : c.n) {
    const Dataset d = analytics::sample_dataset(c.generator_spec(n), static_cast<std::size_t>(c.samples),
                                                child_seed(ctx.seed(), static_cast<std::uint64_t>(n)), c.threads);
    const auto sampled = analytics::correlation_matrix(d);
    ctx.write("correlations_n" + std::to_string(n), matrix_table(sampled.values));
    if (n >= kMinEnumerationOrder && n <= kMaxEnumerationOrder) {
      const auto exact = exact_correlation_matrix(n, c.threads);
      ctx.write("correlations_exact_n" + std::to_string(n), matrix_table(exact.values));
      double worst = 0.0;
      for (int i = 0; i < kPropertyCount; ++i)
        for (int j = 0; j < kPropertyCount; ++j)
          if (sampled.defined(i, j) && exact.defined(i, j))
            worst = std::max(worst, std::abs(sampled.values(i, j) - exact.values(i, j)));
      ctx.say("correlations: n=" + std::to_string(n) + " max |sampled - exact| = " + fmt(worst));
    } else {
      ctx.say("correlations: n=" + std::to_string(n) + " from " + std::to_string(d.rows()) + " graphs");
    }
  }
}

void run_stability(Context& ctx) {
  const auto& c = ctx.config;
  std::vector<std::size_t> sizes(c.sizes.begin(), c.sizes.end());
  const auto result = analytics::stability_test(c.generator_spec(c.n.front()), sizes, c.repeats, ctx.seed(), c.threads);
  Table values({"sample_size", "repeat", "property_a", "property_b", "correlation"});
  Table spread({"sample_size", "property_a", "property_b", "defined", "min", "max", "std"});
  int defined = 0, shrinking = 0;
  for (const auto& level : result.levels) {
    for (std::size_t r = 0; r < level.matrices.size(); ++r)
      for (int i = 0; i < kPropertyCount; ++i)
        for (int j = i + 1; j < kPropertyCount; ++j)
          values.row().add(static_cast<std::uint64_t>(level.sample_size)).add(static_cast<std::uint64_t>(r))
              .add(std::string(kPropertyNames[i])).add(std::string(kPropertyNames[j])).add(level.matrices[r].values(i, j));
    for (int i = 0; i < kPropertyCount; ++i) {
      for (int j = i + 1; j < kPropertyCount; ++j) {
        const auto& s = level.spread[i][j];
        spread.row().add(static_cast<std::uint64_t>(level.sample_size)).add(std::string(kPropertyNames[i]))
            .add(std::string(kPropertyNames[j])).add(s.defined).add(s.min).add(s.max).add(s.stddev);
      }
    }
  }
  for (int i = 0; i < kPropertyCount; ++i) {
    for (int j = i + 1; j < kPropertyCount; ++j) {
      if (!result.pair_defined(i, j)) continue;
      ++defined;
      shrinking += result.pair_non_increasing(i, j);
    }
  }
  ctx.write("stability_values", values);
  ctx.write("stability_spread", spread);
  ctx.say("stability: spread non-increasing for " + std::to_string(shrinking) + " of " + std::to_string(defined) +
          " defined property pairs");
}

void run_collisions(Context& ctx) {
  const auto& c = ctx.config;
  std::vector<Graph> graphs;
  const Dataset d = analytics::sample_dataset(c.generator_spec(c.n.front()), static_cast<std::size_t>(c.samples),
                                              ctx.seed(), c.threads, &graphs);
  const auto report = analytics::find_collisions(d, c.decimals, graphs);
  Table groups(property_columns({"group", "size", "rows"}));
  for (std::size_t g = 0; g < report.groups.size(); ++g) {
    const auto& group = report.groups[g];
    std::string rows;
    for (auto r : group.members) rows += (rows.empty() ? "" : " ") + std::to_string(r);
    groups.row().add(static_cast<std::uint64_t>(g)).add(static_cast<std::uint64_t>(group.members.size())).add(rows);
    for (int p = 0; p < kPropertyCount; ++p)
      groups.add(static_cast<double>(group.key[p]) / std::pow(10.0, c.decimals));
  }
  Table pairs({"first", "second", "first_seed", "second_seed", "verdict"});
  std::map<std::string, int> verdicts;
  for (const auto& pair : report.checked) {
    pairs.row().add(static_cast<std::int64_t>(pair.first)).add(static_cast<std::int64_t>(pair.second))
        .add(d.info[pair.first].seed).add(d.info[pair.second].seed).add(analytics::to_string(pair.verdict));
    ++verdicts[analytics::to_string(pair.verdict)];
  }
  ctx.write("collision_groups", groups);
  ctx.write("collision_pairs", pairs);
  std::string verdict_text;
  for (const auto& [name, count] : verdicts) verdict_text += " " + name + "=" + std::to_string(count);
  ctx.say("collisions: " + std::to_string(report.pairs) + " pairs, " + std::to_string(report.triples) + " triples, " +
          std::to_string(report.quadruples) + " quadruples;" + verdict_text);
}

void run_collision_hunt(Context& ctx) {
  const auto& c = ctx.config;
  Table t({"n", "run", "generated", "first_match"});
  for (int n : c.n) {
    std::vector<analytics::HuntResult> hunts(static_cast<std::size_t>(c.runs));
    const std::uint64_t base = child_seed(ctx.seed(), static_cast<std::uint64_t>(n));
    const auto spec = c.generator_spec(n);
    parallel_for(hunts.size(), c.threads, [&](std::size_t r) {
      hunts[r] = analytics::collision_search_until_pair(spec, c.decimals, child_seed(base, r), c.cap);
    });
    std::vector<double> counts;
    for (std::size_t r = 0; r < hunts.size(); ++r) {
      t.row().add(n).add(static_cast<std::uint64_t>(r)).add(static_cast<std::uint64_t>(hunts[r].generated))
          .add(static_cast<std::uint64_t>(hunts[r].first));
      counts.push_back(static_cast<double>(hunts[r].generated));
    }
    std::sort(counts.begin(), counts.end());
    ctx.say("collision-hunt: n=" + std::to_string(n) + " median graphs until a repeat " +
            fmt(numerics::quantile_sorted(counts, 0.5), 8));
  }
  ctx.write("collision_hunt", t);
}

void run_predict(Context& ctx) {
  const auto& c = ctx.config;
  const Dataset d = input_dataset(c);
  Table losses({"target", "mode", "split", "train_loss", "dev_loss", "test_loss"});
  Table summary({"target", "mode", "mean_test_loss", "std_test_loss"});
  using analytics::PredictorMode;
  for (int t = 0; t < kPropertyCount; ++t) {
    for (auto mode : {PredictorMode::Mean, PredictorMode::Linear, PredictorMode::Nonlinear}) {
      numerics::RunningMoments m;
      for (int s = 0; s < c.split_seeds; ++s) {
        const auto r = analytics::train_predictors(d, static_cast<Property>(t), mode,
                                                   child_seed(ctx.seed(), static_cast<std::uint64_t>(s)));
        losses.row().add(std::string(kPropertyNames[t])).add(analytics::to_string(mode)).add(s);
        losses.add(r.train_loss).add(r.dev_loss).add(r.test_loss);
        m.push(r.test_loss);
      }
      summary.row().add(std::string(kPropertyNames[t])).add(analytics::to_string(mode)).add(m.mean).add(m.stddev());
    }
  }
  ctx.write("predict_losses", losses);
  ctx.write("predict_summary", summary);
  ctx.say("predict: " + std::to_string(d.rows()) + " rows, " + std::to_string(c.split_seeds) + " splits per target");
}

void run_importance(Context& ctx) {
  const auto& c = ctx.config;
  const Dataset d = input_dataset(c);
  const auto m = analytics::importance_matrix(d, c.threshold, ctx.seed(), c.threads);
  Table t(property_columns({"target"}));
  for (int i = 0; i < kPropertyCount; ++i) {
    t.row().add(std::string(kPropertyNames[i]));
    for (int j = 0; j < kPropertyCount; ++j) t.add(m.counts(i, j));
  }
  ctx.write("importance", t);
  ctx.write("importance_abs_correlation", matrix_table(analytics::correlation_matrix(d).values.cwiseAbs()));
  ctx.say("importance: matrix over " + std::to_string(d.rows()) + " rows, threshold " + fmt(c.threshold));
}

void run_classify(Context& ctx) {
  const auto& c = ctx.config;
  const Dataset d = classification_dataset(c, &ctx.log);
  analytics::EvaluationOptions options;
  options.trees = c.trees;
  std::vector<int> all(kPropertyCount);
  for (int p = 0; p < kPropertyCount; ++p) all[p] = p;
  const std::vector<int> pair = {index_of(Property::Gcc), index_of(Property::SpectralRadius)};
  Table t({"model", "features", "mean_accuracy", "std_accuracy", "repeat_accuracies"});
  for (auto kind : {analytics::ClassifierKind::RandomForest, analytics::ClassifierKind::Logistic}) {
    for (const std::vector<int>* features : std::initializer_list<const std::vector<int>*>{&all, &pair}) {
      const auto r = analytics::repeated_holdout_accuracy(d, kind, *features, c.repeats, ctx.seed(), options, c.threads);
      std::string names, accs;
      for (int f : *features) names += (names.empty() ? "" : " ") + std::string(kPropertyNames[f]);
      for (double a : r.accuracies) accs += (accs.empty() ? "" : " ") + format_number(a);
      t.row().add(analytics::to_string(kind)).add(names).add(r.mean).add(r.stddev).add(accs);
      ctx.say(std::string("classify: ") + analytics::to_string(kind) + " [" + names + "] accuracy " + fmt(r.mean));
    }
  }
  ctx.write("classify", t);
}

void run_sweep(Context& ctx) {
  const auto& c = ctx.config;
  const Dataset d = classification_dataset(c, &ctx.log);
  const auto subsets = c.extra_subsets < 0
                           ? analytics::all_subsets(c.subset_size)
                           : analytics::restricted_subsets(c.subset_size, index_of(parse_property(c.required)),
                                                           c.extra_subsets, ctx.seed());
  analytics::EvaluationOptions options;
  options.trees = c.trees;
  const analytics::ClassifierKind kinds[] = {analytics::ClassifierKind::RandomForest};
  const auto rows = analytics::subset_sweep(d, kinds, subsets, c.repeats, ctx.seed(), options, c.threads);
  Table t({"rank", "features", "rf_mean_accuracy", "rf_std_accuracy"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string names;
    for (int f : rows[i].subset) names += (names.empty() ? "" : " ") + std::string(kPropertyNames[f]);
    t.row().add(static_cast<std::uint64_t>(i + 1)).add(names).add(rows[i].results[0].mean).add(rows[i].results[0].stddev);
  }
  ctx.write("sweep_size" + std::to_string(c.subset_size), t);
  if (!rows.empty())
    ctx.say("sweep: best of " + std::to_string(rows.size()) + " subsets reaches " + fmt(rows.front().results[0].mean));
}

void run_embed(Context& ctx) {
  const auto& c = ctx.config;
  const Dataset d = classification_dataset(c, &ctx.log);
  const Eigen::MatrixXd coords = analytics::classical_mds(d.features, c.dims);
  std::vector<std::string> columns = {"label"};
  if (c.dims == 2) {
    columns.insert(columns.end(), {"x", "y"});
  } else {
    for (int k = 1; k <= c.dims; ++k) columns.push_back("x" + std::to_string(k));
  }
  Table t(columns);
  for (Eigen::Index r = 0; r < coords.rows(); ++r) {
    t.row().add(d.labeled() ? d.class_names[d.labels[r]] : std::string());
    for (int k = 0; k < c.dims; ++k) t.add(coords(r, k));
  }
  ctx.write("embed", t);
  ctx.say("embed: " + std::to_string(coords.rows()) + " points in " + std::to_string(c.dims) + " dimensions");
}

const std::map<std::string, std::function<void(Context&)>>& registry() {
  static const std::map<std::string, std::function<void(Context&)>> r = {
      {"trends", run_trends},         {"connectivity", run_connectivity},
      {"groundtruth", run_groundtruth}, {"correlations", run_correlations},
      {"stability", run_stability},   {"collisions", run_collisions},
      {"collision-hunt", run_collision_hunt}, {"predict", run_predict},
      {"importance", run_importance}, {"classify", run_classify},
      {"sweep", run_sweep},           {"embed", run_embed}};
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"trends",         "connectivity", "groundtruth", "correlations",
                                               "stability",      "collisions",   "collision-hunt", "predict",
                                               "importance",     "classify",     "sweep",       "embed"};
  return ids;
}

Provenance provenance_of(const ExperimentConfig& config) {
  Provenance p;
  p.version = kVersion;
  p.experiment = config.experiment;
  p.config_hash = config.config_hash();
  p.seed = config.seed.value_or(0);
  return p;
}

RunResult run(const ExperimentConfig& config, std::ostream& log) {
  const auto it = registry().find(config.experiment);
  if (it == registry().end()) throw ConfigError("unknown experiment: " + config.experiment);
  config.validate();
  Context ctx{config, OutputDirectory(config.out, config.force), provenance_of(config), {}, log};
  it->second(ctx);
  return std::move(ctx.result);
}

Dataset dataset_build(const std::vector<ClassSpec>& specs, DensityBand band, unsigned threads, std::ostream* warnings,
                      std::size_t max_tries) {
  struct Job {
    std::size_t cls;
    std::size_t index;
  };
  std::vector<Job> jobs;
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < specs.size(); ++c) {
    if (specs[c].count == 0) {
      if (warnings) *warnings << "warning: class " << specs[c].label << " has count 0 and is omitted\n";
      continue;
    }
    specs[c].base.validate();
    kept.push_back(c);
    for (std::size_t g = 0; g < specs[c].count; ++g) jobs.push_back({c, g});
  }
  std::vector<PropertyVector> vectors(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    const auto& spec = specs[jobs[j].cls];
    GeneratorSpec tmpl = spec.base;
    if (auto* sbm = std::get_if<SbmParams>(&tmpl.params); sbm && spec.sbm_matrices > 0) {
      const auto m = jobs[j].index * static_cast<std::size_t>(spec.sbm_matrices) / spec.count;
      Rng matrix_rng(child_seed(spec.base.seed, m));
      sbm->probabilities = random_sbm_matrix(sbm->block_of, static_cast<int>(sbm->probabilities.rows()),
                                             band.center(), matrix_rng);
    }
    try {
      const auto sample = sample_in_density_band(tmpl, band, max_tries, stream_seed(spec.base.seed, jobs[j].index));
      vectors[j] = compute_property_vector(sample.graph);
    } catch (const SamplingError& e) {
      throw SamplingError("class " + spec.label + ": " + e.what(), e.attempts());
    }
  });
  Dataset d;
  std::map<std::size_t, int> label_of;
  for (std::size_t c : kept) {
    label_of[c] = static_cast<int>(d.class_names.size());
    d.class_names.push_back(specs[c].label);
  }
  d.features.resize(static_cast<Eigen::Index>(jobs.size()), kPropertyCount);
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto& spec = specs[jobs[j].cls];
    d.features.row(static_cast<Eigen::Index>(j)) = vectors[j].values.transpose();
    d.labels.push_back(label_of[jobs[j].cls]);
    d.info.push_back({to_string(spec.base.kind()), stream_seed(spec.base.seed, jobs[j].index), spec.base.n});
  }
  return d;
}

Dataset classification_dataset(const ExperimentConfig& config, std::ostream* warnings) {
  if (!config.dataset.empty()) {
    Dataset d = read_dataset_csv(std::filesystem::path(config.dataset));
    if (!d.labeled()) throw InputError("dataset " + config.dataset + " has no labels");
    return d;
  }
  const auto suite = classification_suite(config.n.front(), static_cast<std::size_t>(config.per_class), *config.seed);
  return dataset_build(suite, DensityBand{}, config.threads, warnings);
}

RunResult build_dataset_file(const ExperimentConfig& config, std::ostream& log) {
  config.validate();
  Context ctx{config, OutputDirectory(config.out, config.force), provenance_of(config), {}, log};
  ctx.provenance.experiment = "dataset";
  const Dataset d = classification_dataset(config, &log);
  ctx.write("dataset", dataset_table(d));
  ctx.say("dataset: " + std::to_string(d.rows()) + " rows, " + std::to_string(d.class_count()) + " classes");
  return std::move(ctx.result);
}

}  // namespace gspace::experiments
