#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "musielak/cli.hpp"

using namespace musielak;
using musielak::cli::ConfigError;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = MUSIELAK_CONFIG_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("musielak_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path write(const std::string& name, const json& doc) const {
    std::ofstream(path / name) << doc.dump();
    return path / name;
  }
};

std::string error_path(const json& doc) {
  try {
    cli::parse_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(std::initializer_list<std::string> args) {
  std::vector<std::string> argv{"musielak"};
  argv.insert(argv.end(), args);
  return cli::run(argv);
}

}  // namespace

TEST_CASE("config errors name the offending field") {
  CHECK(error_path(json::array()) == "$");
  CHECK(error_path({{"nfunction", {{"family", "cubic"}}}}) == "nfunction.family");
  CHECK(error_path({{"nfunction", {{"family", "power"}, {"p", -1.0}}}}) == "nfunction.family");
  CHECK(error_path({{"nfunction", {{"dim", 3}}}}) == "nfunction.dim");
  CHECK(error_path({{"nfunction", 2}}) == "nfunction");
  CHECK(error_path({{"s", 1.0}}) == "s");
  CHECK(error_path({{"s", "half"}}) == "s");
  CHECK(error_path({{"ladder", {0.5, "x"}}}) == "ladder[1]");
  CHECK(error_path({{"grid_ladder", {129, 1}}}) == "grid_ladder[1]");
  CHECK(error_path({{"grid", {{"lo", {-1.0}}, {"hi", {1.0}}, {"n", 1}}}}) == "grid");
  CHECK(error_path({{"domain", {{"kind", "torus"}}}}) == "domain.kind");
  CHECK(error_path({{"function", {{"name", "spike"}}}}) == "function.name");
  CHECK(error_path({{"kind", "dilate"}}) == "kind");
  CHECK(error_path({{"approximate", {{"j0", 0}}}}) == "approximate.j0");
  CHECK(error_path({{"sampling", {{"t_min", 2.0}, {"t_max", 1.0}}}}) == "sampling.t_max");
  CHECK(error_path({{"tolerances", {{"target", -1.0}}}}) == "tolerances.target");
  CHECK(error_path({{"counterexample", {{"r", 3.0}, {"d", 2.0}}}}).rfind("counterexample", 0) == 0);

  const cli::ExperimentConfig c = cli::parse_config(json::object());
  CHECK(c.s == 0.25);
  CHECK_FALSE(c.grid.has_value());
  CHECK_THROWS_AS(c.require_grid(), ConfigError);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  const std::string out = (tmp.path / "out").string();

  CHECK(run({}) == cli::kUsage);
  CHECK(run({"norm"}) == cli::kUsage);
  CHECK(run({"bogus", "--config", "x"}) == cli::kUsage);
  CHECK(run({"norm", "--config", (tmp.path / "missing.json").string()}) == cli::kUsage);
  CHECK(run({"--help"}) == cli::kOk);

  const fs::path broken = tmp.path / "broken.json";
  std::ofstream(broken) << "{ not json";
  CHECK(run({"norm", "--config", broken.string()}) == cli::kUsage);
  CHECK(run({"norm", "--config", tmp.write("nogrid.json", json::object()).string()}) ==
        cli::kUsage);

  const json ok = {{"function", {{"name", "tent"}, {"center", {-1.0}}}},
                   {"grid", {{"lo", {-4.0}}, {"hi", {4.0}}, {"n", 129}}},
                   {"ladder", {0.5, 0.25, 0.125}}};
  CHECK(run({"norm", "--config", tmp.write("ok.json", ok).string(), "--out", out}) == cli::kOk);
  CHECK(fs::exists(fs::path(out) / "norm.json"));
  CHECK(fs::exists(fs::path(out) / "norm.csv"));
  const json report = json::parse(slurp(fs::path(out) / "norm.json"));
  CHECK(report["verdict"] == true);
  CHECK(report["luxemburg"]["modular_at_norm"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));

  json strict = ok;
  strict["tolerances"] = {{"target", 1e-12}};
  CHECK(run({"converge", "--config", tmp.write("strict.json", strict).string(), "--out", out}) ==
        cli::kVerdictFalse);
  CHECK(json::parse(slurp(fs::path(out) / "converge.json"))["verdict"] == false);

  json tight = ok;
  tight["sigma"] = 1e-3;
  tight["domain"] = {{"kind", "hypograph"}, {"level", 0.5}};
  tight["grid"] = {{"lo", {-6.0}}, {"hi", {4.0}}, {"n", 161}};
  CHECK(run({"approximate", "--config", tmp.write("tight.json", tight).string(), "--out",
             out}) == cli::kBudgetInfeasible);
}

TEST_CASE("shipped configs run") {
  TempDir tmp;
  const std::pair<const char*, const char*> cases[] = {
      {"check-nfunc", "check_power.json"}, {"check-nfunc", "check_orlicz.json"},
      {"norm", "norm_tent.json"},          {"modular", "modular_tent.json"},
      {"converge", "converge_cutoff.json"}, {"counterexample", "counterexample.json"},
      {"finiteness", "finiteness_tent.json"},
  };
  for (const auto& [sub, file] : cases) {
    CAPTURE(file);
    const std::string out = (tmp.path / sub).string();
    CHECK(run({sub, "--config", (kConfigs / file).string(), "--out", out}) == cli::kOk);
    CHECK(fs::exists(fs::path(out) / (std::string(sub) + ".csv")));
  }
  CHECK(fs::exists(tmp.path / "counterexample" / "counterexample_reference.csv"));
  CHECK(run({"approximate", "--config", (kConfigs / "approximate_tent_n512.json").string(),
             "--out", (tmp.path / "a").string()}) == cli::kBudgetInfeasible);
}

TEST_CASE("outputs do not depend on the thread count") {
  TempDir tmp;
  const std::string config = (kConfigs / "norm_tent.json").string();
  const fs::path a = tmp.path / "a";
  const fs::path b = tmp.path / "b";
  REQUIRE(run({"norm", "--config", config, "--out", a.string(), "--threads", "1"}) == cli::kOk);
  REQUIRE(run({"norm", "--config", config, "--out", b.string(), "--threads", "4"}) == cli::kOk);
  CHECK(slurp(a / "norm.csv") == slurp(b / "norm.csv"));
  CHECK(slurp(a / "norm.json") == slurp(b / "norm.json"));
}
