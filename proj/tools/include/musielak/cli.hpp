#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "musielak/error.hpp"
#include "musielak/grid.hpp"
#include "musielak/modular.hpp"
#include "musielak/nfunction.hpp"
#include "musielak/pipeline.hpp"

namespace musielak::cli {

enum ExitCode : int {
  kOk = 0,
  kVerdictFalse = 1,
  kUsage = 2,
  kBudgetInfeasible = 3,
};

/// Malformed or inconsistent experiment configuration; `what()` starts with
/// the JSON path of the offending field.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : Error(path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Named closed form plus its parameters; materialised once the grid is known
/// (the singular example is capped at the grid's smallest positive node).
struct FunctionSpec {
  std::string name = "tent";
  Point center{};
  double half_width = 1.0;
  double radius = 1.0;
  double height = 1.0;
  Point lo{};
  Point hi{};
  double value = 1.0;
  double d = 3.0;  // exponent of the singular example x^{-1/d}

  ClosedForm closed_form(int dim, const GridSpec& spec) const;
};

struct ExperimentConfig {
  NFunction nf = NFunction::power(2.0);
  Domain domain = Domain::hypograph(1);
  FunctionSpec function;
  double s = 0.25;
  std::optional<GridSpec> grid;
  int levels = 3;
  LadderKind kind = LadderKind::Translate;
  std::vector<double> ladder;
  std::vector<int> grid_ladder;
  double sigma = 0.1;
  ApproximationOptions approx;
  double rel_tol = kDefaultRelTol;
  double target = 0.05;
  double structure_tol = 1e-9;
  double cauchy_tol = 0.05;
  SamplingSpec sampling;
  FractionalOptions fractional;
  double ce_r = 1.5;
  double ce_d = 3.0;
  double ce_h = 0.25;
  std::string out = ".";

  const GridSpec& require_grid() const;
};

/// Validates and converts a parsed JSON document; throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Entry point of the command-line tool; argv[0] is the program name.
int run(const std::vector<std::string>& argv);

}  // namespace musielak::cli
