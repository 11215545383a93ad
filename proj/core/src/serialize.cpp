#include "musielak/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace musielak {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

/// JSON has no inf/nan; they become strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json point(const Point& p, int dim) {
  json a = json::array();
  for (int k = 0; k < dim; ++k) a.push_back(number(p[k]));
  return a;
}

json grid_json(const GridSpec& spec) {
  return {{"dim", spec.dim()},
          {"lo", point(spec.lo(), spec.dim())},
          {"hi", point(spec.hi(), spec.dim())},
          {"n", spec.n()},
          {"h", number(spec.h())}};
}

}  // namespace

json to_json(const NFunctionReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"id", v.id},
                          {"x", point(v.x, kMaxDim)},
                          {"y", point(v.y, kMaxDim)},
                          {"t", number(v.t)},
                          {"residual", number(v.residual)}});
  return {{"g_minus_est", number(report.g_minus_est)},
          {"g_plus_est", number(report.g_plus_est)},
          {"delta2_K", number(report.delta2_K)},
          {"bf_C1", number(report.bf_C1)},
          {"bf_C2", number(report.bf_C2)},
          {"violations", violations},
          {"samples", report.samples}};
}

json to_json(const ModularResult& result) {
  json levels = json::array();
  for (const auto& l : result.refinement_levels)
    levels.push_back({{"n", l.n}, {"h", number(l.h)}, {"value", number(l.value)}});
  return {{"value", number(result.value)},
          {"refinement_levels", levels},
          {"error_estimate", number(result.error_estimate)},
          {"diverged", result.diverged}};
}

json to_json(const NormResult& result) {
  return {{"value", number(result.value)},
          {"lambda_bracket", {number(result.lo), number(result.hi)}},
          {"modular_at_norm", number(result.modular_at_norm)},
          {"iterations", result.iterations}};
}

json to_json(const HolderResult& result) {
  return {{"lhs", number(result.lhs)}, {"rhs", number(result.rhs)}, {"ok", result.ok}};
}

json to_json(const Region& region) {
  // Runs of consecutive marked cells along the last axis: [i0, j_begin, j_end).
  const GridSpec& spec = region.spec();
  const int m = spec.n() - 1;
  const int rows = spec.dim() == 2 ? m : 1;
  json runs = json::array();
  for (int row = 0; row < rows; ++row) {
    int j = 0;
    while (j < m) {
      const std::size_t base = static_cast<std::size_t>(row) * m;
      if (!region.cells()[base + j]) {
        ++j;
        continue;
      }
      const int begin = j;
      while (j < m && region.cells()[base + j]) ++j;
      if (spec.dim() == 2)
        runs.push_back({row, begin, j});
      else
        runs.push_back({begin, j});
    }
  }
  return {{"grid", grid_json(spec)}, {"cell_runs", runs}, {"r", number(region.r())}};
}

json to_json(const SmoothingParams& params) {
  return {{"delta", number(params.delta)},
          {"j", params.j},
          {"epsilon", number(params.epsilon)},
          {"sigma", number(params.sigma)}};
}

json to_json(const ConvergenceReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"param", number(r.param)},
                    {"modular", number(r.modular)},
                    {"norm", number(r.norm)},
                    {"error_estimate", number(r.error_estimate)}});
  return {{"kind", report.kind},
          {"rows", rows},
          {"target", number(report.target)},
          {"verdict", report.verdict}};
}

json to_json(const ApproximationReport& report) {
  json trials = json::array();
  for (const auto& t : report.trials) {
    json e = {{"stage", to_string(t.stage)},
              {"param", number(t.param)},
              {"error", number(t.error)},
              {"accepted", t.accepted}};
    if (!t.note.empty()) e["note"] = t.note;
    trials.push_back(e);
  }
  json out = {{"params", to_json(report.params)},
              {"err_translate", number(report.err_translate)},
              {"err_cutoff", number(report.err_cutoff)},
              {"err_mollify", number(report.err_mollify)},
              {"total_err", number(report.total_err)},
              {"support_ok", report.support_ok},
              {"vicinity_ok", report.vicinity_ok},
              {"chain_ok", report.chain_ok},
              {"margin", number(report.margin)},
              {"cutoff_slope", number(report.cutoff_slope)},
              {"trials", trials}};
  if (report.rho) {
    out["rho"] = {{"grid", grid_json(report.rho->spec())},
                  {"max_abs", number(report.rho->max_abs())},
                  {"support", to_json(support(*report.rho))}};
  }
  return out;
}

json to_json(const CounterexampleReport& report) {
  return {{"shifted", to_json(report.shifted)},
          {"reference", to_json(report.reference)},
          {"closed_form", number(report.closed_form)},
          {"verdict", report.verdict}};
}

void write_csv(std::ostream& os, const GridFunction& gf) {
  const GridSpec& spec = gf.spec();
  const int dim = spec.dim();
  os << "# dim=" << dim;
  for (int k = 0; k < dim; ++k) os << ",lo" << k << '=' << format_double(spec.lo()[k]);
  for (int k = 0; k < dim; ++k) os << ",hi" << k << '=' << format_double(spec.hi()[k]);
  os << ",n=" << spec.n() << ",h=" << format_double(spec.h()) << '\n';
  for (int k = 0; k < dim; ++k) os << 'x' << k << ',';
  os << "value\n";
  for (std::size_t i = 0; i < gf.size(); ++i) {
    const Point p = spec.node(i);
    for (int k = 0; k < dim; ++k) os << format_double(p[k]) << ',';
    os << format_double(gf[i]) << '\n';
  }
}

void write_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "param,modular,norm,error_estimate\n";
  for (const auto& r : report.rows)
    os << format_double(r.param) << ',' << format_double(r.modular) << ','
       << format_double(r.norm) << ',' << format_double(r.error_estimate) << '\n';
}

void write_csv(std::ostream& os, const ModularResult& result) {
  os << "n,h,value\n";
  for (const auto& l : result.refinement_levels)
    os << l.n << ',' << format_double(l.h) << ',' << format_double(l.value) << '\n';
}

}  // namespace musielak
