#include "gspace/errors.hpp"
#include "gspace/experiments/config.hpp"
#include "gspace/experiments/experiments.hpp"
#include "gspace/experiments/io.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace gspace;
using namespace gspace::experiments;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("gspace_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(GSPACE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentConfig small(const std::string& experiment, const fs::path& out) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.seed = 42;
  c.out = out;
  c.n = {12};
  c.samples = 120;
  return c;
}

}  // namespace

TEST_CASE("integer list parsing") {
  CHECK(parse_int_list("100") == std::vector<int>{100});
  CHECK(parse_int_list("5..8") == std::vector<int>{5, 6, 7, 8});
  CHECK(parse_int_list("10..40", 10) == std::vector<int>{10, 20, 30, 40});
  CHECK(parse_int_list("3,1,2") == std::vector<int>{3, 1, 2});
  CHECK_THROWS_AS(parse_int_list("a..b"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("8..5"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("1..5", 0), ConfigError);
}

TEST_CASE("config validation") {
  ExperimentConfig c;
  c.experiment = "trends";
  CHECK_THROWS_AS(c.validate(), ConfigError);  // no seed
  c.seed = 1;
  c.validate();
  c.threshold = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.threshold = 0.2;
  c.p = "1.5";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.p = "log";
  c.validate();
  CHECK(c.er_probability(100) == Catch::Approx(std::log(100.0) / 100.0));
  c.decimals = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("config JSON overrides and hashing") {
  ExperimentConfig c;
  c.experiment = "trends";
  c.seed = 7;
  const auto applied = apply_config_json(c, R"({"samples": 50, "n": [10, 20], "generator": "ba"})");
  CHECK(applied.samples == 50);
  CHECK(applied.n == std::vector<int>{10, 20});
  CHECK(applied.generator == "ba");
  CHECK(applied.seed == 7u);
  CHECK_THROWS_AS(apply_config_json(c, R"({"sampels": 50})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(c, R"({"samples": "many"})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(c, "{not json"), ConfigError);

  // The hash covers what the run computes, not where or how fast it writes.
  auto moved = c;
  moved.out = "elsewhere";
  moved.threads = 4;
  moved.force = true;
  CHECK(moved.config_hash() == c.config_hash());
  CHECK(c.config_hash().size() == 16);
  auto reseeded = c;
  reseeded.seed = 8;
  CHECK(reseeded.config_hash() != c.config_hash());
  CHECK(nlohmann::json::parse(c.canonical_json()).contains("samples"));
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("tables render as CSV and JSON") {
  Table t({"name", "value"});
  t.row().add("a").add(0.5);
  t.row().add("b").add(std::int64_t{3});
  Provenance prov{"gspace", kVersion, "demo", "00ff", 9};
  std::ostringstream csv;
  write_table(csv, t, prov, OutputFormat::Csv);
  CHECK(csv.str() ==
        "# tool: gspace\n# version: 1.0.0\n# experiment: demo\n# config_hash: 00ff\n# seed: 9\n"
        "name,value\na,0.5\nb,3\n");
  std::ostringstream js;
  write_table(js, t, prov, OutputFormat::Json);
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["provenance"]["seed"] == 9);
  CHECK(doc["columns"][1] == "value");
  CHECK(doc["rows"][0][1].get<double>() == 0.5);
  CHECK(doc["rows"][1][0] == "b");
}

TEST_CASE("dataset CSV round trip") {
  analytics::Dataset d;
  d.features = Eigen::MatrixXd::Random(3, kPropertyCount);
  d.features(1, 4) = 1.0 / 3.0;
  d.labels = {1, 0, 1};
  d.class_names = {"ER", "BA"};
  d.info = {{"er", 5, 10}, {"ba", 6, 10}, {"er", 7, 10}};
  std::stringstream s;
  write_table(s, dataset_table(d), Provenance{}, OutputFormat::Csv);
  const auto back = read_dataset_csv(s);
  CHECK(back.features == d.features);
  // Class indices follow first appearance in the file.
  CHECK(back.class_names == std::vector<std::string>{"BA", "ER"});
  CHECK(back.labels == std::vector<int>{0, 1, 0});
  CHECK(back.info[2].seed == 7u);
  std::istringstream bad("generator,seed\ner,1\n");
  CHECK_THROWS_AS(read_dataset_csv(bad), InputError);
}

TEST_CASE("output directory refuses to overwrite without force") {
  const auto dir = scratch("outdir");
  Table t({"x"});
  t.row().add(1);
  OutputDirectory(dir, false).write("table", t, Provenance{}, OutputFormat::Csv);
  CHECK_THROWS_AS(OutputDirectory(dir, false).write("table", t, Provenance{}, OutputFormat::Csv), OutputError);
  CHECK_NOTHROW(OutputDirectory(dir, true).write("table", t, Provenance{}, OutputFormat::Csv));
  CHECK_THROWS_AS(OutputDirectory(dir, true).write("../escape", t, Provenance{}, OutputFormat::Csv), OutputError);
}

TEST_CASE("experiments run through the library") {
  const auto dir = scratch("library");
  std::ostringstream log;
  for (const std::string id : {"trends", "connectivity", "groundtruth", "correlations", "collisions", "predict", "embed"}) {
    INFO(id);
    auto c = small(id, dir / id);
    if (id == "groundtruth" || id == "correlations" || id == "connectivity") c.n = {6};
    if (id == "predict") c.samples = 300;  // the nonlinear fit needs more training rows than its 100 parameters
    const auto result = run(c, log);
    CHECK_FALSE(result.files.empty());
    for (const auto& f : result.files) CHECK(fs::exists(f));
  }
  auto bad = small("nope", dir / "nope");
  CHECK_THROWS_AS(run(bad, log), ConfigError);
}

TEST_CASE("labeled dataset builder") {
  ExperimentConfig c;
  c.experiment = "classify";
  c.seed = 3;
  c.n = {20};
  c.per_class = 6;
  const auto d = classification_dataset(c);
  CHECK(d.rows() == 8 * 6);
  CHECK(d.class_count() == 8);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    const double den = d.features(i, index_of(Property::Density));
    CHECK(den > 0.47);
    CHECK(den < 0.52);
  }
  const auto again = classification_dataset(c);
  CHECK(again.features == d.features);

  auto specs = classification_suite(20, 4, 1);
  specs[0].count = 0;
  std::ostringstream warnings;
  const auto skipped = dataset_build(specs, DensityBand{}, 1, &warnings);
  CHECK(skipped.rows() == 7 * 4);
  CHECK_FALSE(warnings.str().empty());
  CHECK_THROWS_AS(dataset_build(classification_suite(20, 2, 1), DensityBand{0.99, 0.995}, 1, nullptr, 5),
                  SamplingError);
}

TEST_CASE("CLI exit codes") {
  const auto dir = scratch("cli");
  const std::string out = " --out " + dir.string();
  CHECK(cli("--help") == 0);
  CHECK(cli("run trends --seed 1 --n 8 --samples 10" + out) == 0);
  CHECK(cli("run trends --seed 1 --n 8 --samples 10" + out) == 5);           // refuses to overwrite
  CHECK(cli("run trends --seed 1 --n 8 --samples 10 --force" + out) == 0);
  CHECK(cli("run trends --n 8" + out) == 2);                                  // missing seed
  CHECK(cli("run nonsense --seed 1" + out) == 2);
  CHECK(cli("run trends --seed 1 --samples -3" + out) == 2);
  CHECK(cli("run trends --seed 1 --bogus-flag" + out) == 2);
  CHECK(cli("run collision-hunt --seed 1 --n 30 --decimals 12 --runs 1 --cap 5" + out) == 3);
  CHECK(cli("props " + (dir / "missing.txt").string()) == 2);
  std::ofstream(dir / "split.txt") << "4 2\n0 1\n2 3\n";
  CHECK(cli("props " + (dir / "split.txt").string()) == 4);
  const fs::path config = dir / "config.json";
  std::ofstream(config) << R"({"samples": 10, "n": [8], "unknown_key": 1})";
  CHECK(cli("run trends --seed 1 --force --config " + config.string() + out) == 2);
}

TEST_CASE("reruns with the same seed are byte-identical") {
  const auto a = scratch("rerun_a");
  const auto b = scratch("rerun_b");
  const std::string args = "run collisions --seed 11 --n 10 --samples 150 --decimals 1 --threads ";
  REQUIRE(cli(args + "1 --out " + a.string()) == 0);
  REQUIRE(cli(args + "3 --out " + b.string()) == 0);
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    ++compared;
  }
  CHECK(compared > 0);

  const auto c = scratch("rerun_c");
  REQUIRE(cli("run collisions --seed 12 --n 10 --samples 150 --decimals 1 --out " + c.string()) == 0);
  CHECK(slurp(c / "collision_groups.csv") != slurp(a / "collision_groups.csv"));
}

TEST_CASE("generate and props agree with the library") {
  const auto dir = scratch("generate");
  const auto edges = dir / "g.txt";
  REQUIRE(cli("generate --seed 5 --gen er --n 12 --p 0.6 --out " + edges.string()) == 0);
  std::ifstream in(edges);
  const Graph g = read_edge_list(in);
  CHECK(g == generate(GeneratorSpec{12, ErParams{0.6}, 5}));
}
