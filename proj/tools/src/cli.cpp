#include "musielak/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "musielak/norms.hpp"
#include "musielak/serialize.hpp"

namespace musielak::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string config;
  std::string out;
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

struct Outcome {
  json report;
  std::string csv;
  bool verdict = true;
  std::string summary;
  std::vector<std::pair<std::string, std::string>> extra_csv;  // file name, content
};

ExperimentConfig load(const Flags& flags) {
  std::ifstream in(flags.config);
  if (!in) throw ConfigError("$", "cannot open config file '" + flags.config + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  ExperimentConfig c = parse_config(doc);
  if (!flags.out.empty()) c.out = flags.out;
  c.fractional.threads = flags.threads;
  c.approx.fractional = c.fractional;
  c.sampling.seed = flags.seed;
  return c;
}

GridFunction input_function(const ExperimentConfig& c) {
  const GridSpec& spec = c.require_grid();
  return sample(c.function.closed_form(c.nf.dim(), spec), spec);
}

template <class T>
std::string csv_of(const T& value) {
  std::ostringstream os;
  write_csv(os, value);
  return os.str();
}

Outcome run_check(const ExperimentConfig& c) {
  const NFunctionReport r = check_structure(c.nf, c.sampling, c.structure_tol);
  std::ostringstream os;
  os << "id,x0,x1,y0,y1,t,residual\n";
  for (const Violation& v : r.violations)
    os << v.id << ',' << format_double(v.x[0]) << ',' << format_double(v.x[1]) << ','
       << format_double(v.y[0]) << ',' << format_double(v.y[1]) << ',' << format_double(v.t)
       << ',' << format_double(v.residual) << '\n';
  Outcome o{to_json(r), os.str(), r.violations.empty(), "", {}};
  o.summary = "violations=" + std::to_string(r.violations.size()) +
              " samples=" + std::to_string(r.samples) + " g-=" + format_double(r.g_minus_est) +
              " g+=" + format_double(r.g_plus_est);
  return o;
}

Outcome run_norm(const ExperimentConfig& c) {
  const GridFunction u = input_function(c);
  const NormResult lux = luxemburg_norm(c.nf, u, c.rel_tol);
  const NormResult semi = gagliardo_seminorm(c.nf, u, c.s, c.rel_tol, c.fractional);
  const double full = sobolev_norm(c.nf, u, c.s, c.rel_tol, c.fractional);

  std::ostringstream os;
  os << "quantity,value,lo,hi,modular_at_norm\n";
  for (const auto& [name, r] : {std::pair{"luxemburg", lux}, std::pair{"seminorm", semi}})
    os << name << ',' << format_double(r.value) << ',' << format_double(r.lo) << ','
       << format_double(r.hi) << ',' << format_double(r.modular_at_norm) << '\n';
  os << "sobolev," << format_double(full) << ",,,\n";

  const auto unit = [](const NormResult& r) {
    return r.value == 0.0 || std::abs(r.modular_at_norm - 1.0) <= 1e-3;
  };
  Outcome o{{{"luxemburg", to_json(lux)}, {"seminorm", to_json(semi)}, {"sobolev", full}},
            os.str(),
            unit(lux) && unit(semi),
            "",
            {}};
  o.summary = "value=" + format_double(lux.value) + " bracket=[" + format_double(lux.lo) + ", " +
              format_double(lux.hi) + "] modular_at_norm=" + format_double(lux.modular_at_norm);
  return o;
}

Outcome run_modular(const ExperimentConfig& c) {
  const GridFunction u = input_function(c);
  const ModularResult scalar = modular_scalar(c.nf, u, c.levels);
  const ModularResult frac = modular_fractional(c.nf, u, c.s, c.levels, c.fractional);
  std::ostringstream os;
  os << "quantity,n,h,value\n";
  for (const auto& [name, r] : {std::pair{"scalar", &scalar}, std::pair{"fractional", &frac}})
    for (const LevelValue& l : r->refinement_levels)
      os << name << ',' << l.n << ',' << format_double(l.h) << ',' << format_double(l.value)
         << '\n';
  Outcome o{{{"scalar", to_json(scalar)}, {"fractional", to_json(frac)}},
            os.str(),
            !scalar.diverged && !frac.diverged,
            "",
            {}};
  o.summary = "scalar=" + format_double(scalar.value) + " fractional=" + format_double(frac.value) +
              " error_estimate=" + format_double(frac.error_estimate);
  return o;
}

Outcome run_approximate(const ExperimentConfig& c) {
  const GridFunction u = input_function(c);
  const ApproximationReport r = approximate(u, c.domain, c.nf, c.s, c.sigma, c.approx);
  json report = to_json(r);
  report["sigma"] = c.sigma;
  const bool ok = r.total_err < c.sigma && r.support_ok && r.chain_ok && r.vicinity_ok;
  Outcome o{report, csv_of(*r.rho), ok, "", {}};
  o.summary = "total_err=" + format_double(r.total_err) + " sigma=" + format_double(c.sigma) +
              " delta=" + format_double(r.params.delta) + " j=" + std::to_string(r.params.j) +
              " epsilon=" + format_double(r.params.epsilon);
  return o;
}

Outcome run_converge(const ExperimentConfig& c) {
  if (c.ladder.empty()) throw ConfigError("ladder", "missing or empty");
  const GridFunction u = input_function(c);
  const ConvergenceReport r = convergence_experiment(c.kind, u, c.domain, c.nf, c.s, c.ladder,
                                                     {c.target, c.rel_tol, c.fractional});
  Outcome o{to_json(r), csv_of(r), r.verdict, "", {}};
  o.summary = "kind=" + r.kind + " final=" + format_double(r.rows.back().norm) +
              " target=" + format_double(r.target);
  return o;
}

Outcome run_counterexample(const ExperimentConfig& c) {
  if (c.grid_ladder.empty()) throw ConfigError("grid_ladder", "missing or empty");
  const CounterexampleReport r = counterexample_experiment(c.ce_r, c.ce_d, c.ce_h, c.grid_ladder);
  Outcome o{to_json(r), csv_of(r.shifted), r.verdict, "", {}};
  o.extra_csv.emplace_back("counterexample_reference.csv", csv_of(r.reference));
  o.summary = "shifted_final=" + format_double(r.shifted.rows.back().modular) +
              " reference_final=" + format_double(r.reference.rows.back().modular) +
              " closed_form=" + format_double(r.closed_form);
  return o;
}

Outcome run_finiteness(const ExperimentConfig& c) {
  if (c.grid_ladder.empty()) throw ConfigError("grid_ladder", "missing or empty");
  const GridSpec& base = c.require_grid();
  const ConvergenceReport r =
      finiteness_experiment(c.function.closed_form(c.nf.dim(), base), base, c.nf, c.s,
                            c.grid_ladder, {c.cauchy_tol, c.fractional});
  Outcome o{to_json(r), csv_of(r), r.verdict, "", {}};
  o.summary = "final_norm=" + format_double(r.rows.back().norm);
  return o;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write '" + path.string() + "'");
  os << content;
}

int dispatch(const std::string& name, const Flags& flags) {
  const ExperimentConfig c = load(flags);
  Outcome o;
  if (name == "check-nfunc")
    o = run_check(c);
  else if (name == "norm")
    o = run_norm(c);
  else if (name == "modular")
    o = run_modular(c);
  else if (name == "approximate")
    o = run_approximate(c);
  else if (name == "converge")
    o = run_converge(c);
  else if (name == "counterexample")
    o = run_counterexample(c);
  else
    o = run_finiteness(c);

  const fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  o.report["verdict"] = o.verdict;
  write_file(dir / (name + ".json"), o.report.dump(2) + "\n");
  write_file(dir / (name + ".csv"), o.csv);
  for (const auto& [file, content] : o.extra_csv) write_file(dir / file, content);

  std::cout << name << ": verdict=" << (o.verdict ? "true" : "false") << ' ' << o.summary
            << '\n';
  return o.verdict ? kOk : kVerdictFalse;
}

}  // namespace

int run(const std::vector<std::string>& argv) {
  CLI::App app{"Fractional Musielak-Sobolev toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Flags flags;
  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"check-nfunc", "Check the structural conditions of an N-function"},
      {"norm", "Luxemburg norm, Gagliardo seminorm and full norm of a function"},
      {"modular", "Scalar and fractional modulars with a refinement ladder"},
      {"approximate", "Translate, cut off and mollify within a total error budget"},
      {"converge", "Convergence ladder of one smoothing operator"},
      {"counterexample", "Divergence of a translated variable-exponent modular"},
      {"finiteness", "Cauchy ladder of the fractional norm under grid refinement"},
  };
  for (const auto& [name, help] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "Experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "Output directory (overrides the config)");
    sub->add_option("--threads", flags.threads, "Worker threads, 0 for all cores");
    sub->add_option("--seed", flags.seed, "Seed of the random structural samples");
  }

  std::vector<const char*> args;
  for (const std::string& a : argv) args.push_back(a.c_str());
  if (args.empty()) args.push_back("musielak");
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    if (rc == 0) return kOk;
    std::cerr << app.help();
    return kUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return dispatch(name, flags);
  } catch (const BudgetInfeasible& e) {
    std::cout << name << ": budget infeasible at stage " << to_string(e.stage()) << ": "
              << e.what() << '\n';
    return kBudgetInfeasible;
  } catch (const ConfigError& e) {
    std::cerr << "config error at " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << name << ": error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace musielak::cli
