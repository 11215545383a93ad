#include "musielak/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "musielak/parallel.hpp"

namespace musielak {

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::Translate: return "translate";
    case Stage::Cutoff: return "cutoff";
    case Stage::Mollify: return "mollify";
  }
  return "unknown";
}

std::string to_string(LadderKind kind) {
  switch (kind) {
    case LadderKind::Translate: return "translate";
    case LadderKind::Cutoff: return "cutoff";
    case LadderKind::Mollify: return "mollify";
  }
  return "unknown";
}

namespace {

Point along_last_axis(double t, int dim) {
  Point h{};
  h[dim - 1] = t;
  return h;
}

double box_radius(const GridSpec& spec) {
  double r = std::numeric_limits<double>::infinity();
  for (int k = 0; k < spec.dim(); ++k) r = std::min({r, -spec.lo()[k], spec.hi()[k]});
  return r;
}

/// Every probe point of the support lies in the open domain.
bool strictly_inside(const Region& region, const Domain& dom) {
  for (const Point& p : region.probe_points())
    if (!dom.contains(p)) return false;
  return true;
}

}  // namespace

ApproximationReport approximate(const GridFunction& u, const Domain& dom, const NFunction& nf,
                                double s, double sigma, const ApproximationOptions& options) {
  if (dom.kind() != Domain::Kind::Hypograph)
    throw ParameterError("approximate: the domain must be a hypograph");
  if (!(sigma > 0.0)) throw ParameterError("approximate: sigma must be > 0");
  if (!(options.delta0 > 0.0) || !(options.epsilon0 > 0.0) || options.j0 < 1)
    throw ParameterError("approximate: invalid starting parameters");
  const GridSpec& spec = u.spec();
  const int dim = spec.dim();
  const double h = spec.h();
  if (!u.zero_outside())
    throw PreconditionError("approximate: u must vanish outside the truncation box");
  if (!vanishes_outside(u, dom))
    throw PreconditionError("approximate: u must vanish outside the domain");
  require_truncation_margin(u, 2.0 * (options.epsilon0 + options.delta0) + 1.0);

  const auto W = [&](const GridFunction& w) {
    return sobolev_norm(nf, w, s, options.rel_tol, options.fractional);
  };
  const double share = sigma / 3.0;
  ApproximationReport rep;
  rep.params.sigma = sigma;
  rep.cutoff_slope = cutoff_slope_constant();

  // (i) translate into the domain: delta = k h with k halving until the error is
  // below sigma / 3, then bisected upwards to the largest such k; a larger delta
  // leaves more room for the mollifier in (iii).
  std::optional<GridFunction> u_delta;
  const auto try_delta = [&](int k) {
    const double delta = k * h;
    GridFunction cand = translate(u, along_last_axis(delta, dim), Domain::full_space(dim));
    const double err = W(cand - u);
    const bool ok = err < share;
    rep.trials.push_back({Stage::Translate, delta, err, ok, ""});
    if (ok) {
      rep.params.delta = delta;
      rep.err_translate = err;
      u_delta = std::move(cand);
    }
    return ok;
  };
  int rejected = 0;
  int k = std::max(1, static_cast<int>(std::lround(options.delta0 / h)));
  while (!try_delta(k)) {
    if (k == 1)
      throw BudgetInfeasible(Stage::Translate,
                             "approximate: translation error stays above sigma/3 down to "
                             "delta = h (last error " +
                                 std::to_string(rep.trials.back().error) + ")");
    rejected = k;
    k /= 2;
  }
  for (int lo = k, hi = rejected; hi - lo > 1;) {
    const int mid = lo + (hi - lo) / 2;
    if (try_delta(mid))
      lo = mid;
    else
      hi = mid;
  }
  // try_delta overwrote the state on each success; the largest accepted k is the last.

  // (ii) cut off: smallest j >= j0 within sigma / 3.
  const int j_max = options.j_max.value_or(static_cast<int>(std::floor(box_radius(spec))) - 1);
  std::optional<GridFunction> v;
  for (int j = options.j0;; ++j) {
    if (j > j_max)
      throw BudgetInfeasible(Stage::Cutoff, "approximate: cut-off error stays above sigma/3 "
                                            "up to j = " + std::to_string(j_max));
    GridFunction cand = cutoff(j, spec) * *u_delta;
    const double err = W(cand - *u_delta);
    const bool ok = err < share;
    rep.trials.push_back({Stage::Cutoff, static_cast<double>(j), err, ok, ""});
    if (ok) {
      rep.params.j = j;
      rep.err_cutoff = err;
      v = std::move(cand);
      break;
    }
  }

  // (iii) mollify: eps halving down to 2h, with 2 eps below the hypograph margin.
  const Region supp_delta = support(*u_delta);
  rep.margin = hypograph_margin(supp_delta, rep.params.j + 2.0, dom);
  bool found = false;
  for (double eps = options.epsilon0; eps >= 2.0 * h * (1.0 - 1e-12); eps *= 0.5) {
    if (!(2.0 * eps < rep.margin)) {
      rep.trials.push_back({Stage::Mollify, eps, 0.0, false, "2 eps >= margin"});
      continue;
    }
    GridFunction rho = mollify(*v, eps);
    const double err = W(rho - *v);
    const bool ok = err < share;
    rep.trials.push_back({Stage::Mollify, eps, err, ok, ""});
    if (ok) {
      rep.params.epsilon = eps;
      rep.err_mollify = err;
      rep.rho = std::move(rho);
      found = true;
      break;
    }
  }
  if (!found)
    throw BudgetInfeasible(Stage::Mollify,
                           "approximate: no eps >= 2h meets sigma/3 with 2 eps below the "
                           "margin " + std::to_string(rep.margin));

  rep.total_err = W(*rep.rho - u);
  const Region supp_rho = support(*rep.rho);
  rep.support_ok = vanishes_outside(*rep.rho, dom) && strictly_inside(supp_rho, dom);
  rep.chain_ok = supp_rho.inside_ball(rep.params.j + 2.0) &&
                 supp_rho.subset_of(inflate(supp_delta, 2.0 * rep.params.epsilon));
  rep.vicinity_ok =
      supp_rho.subset_of(inflate(support(u), 2.0 * (rep.params.epsilon + rep.params.delta)));
  return rep;
}

bool ladder_verdict(const std::vector<ConvergenceRow>& rows, double target) {
  if (rows.empty()) return false;
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (rows[k].norm > 1.1 * rows[k - 1].norm) return false;
  return rows.back().norm < target;
}

ConvergenceReport convergence_experiment(LadderKind kind, const GridFunction& u,
                                         const Domain& dom, const NFunction& nf, double s,
                                         const std::vector<double>& ladder,
                                         const ExperimentOptions& options) {
  if (ladder.empty()) throw ParameterError("convergence_experiment: empty ladder");
  const int dim = u.spec().dim();
  ConvergenceReport rep;
  rep.kind = to_string(kind);
  rep.target = options.target;
  const ScalarNFunction diag = ScalarNFunction::diagonal_of(nf);
  for (double param : ladder) {
    GridFunction op = u;
    switch (kind) {
      case LadderKind::Translate:
        op = translate(u, along_last_axis(param, dim), dom);
        break;
      case LadderKind::Cutoff: {
        const double j = std::round(param);
        if (j != param) throw ParameterError("cutoff ladder: j must be an integer");
        op = cutoff(static_cast<int>(j), u.spec()) * u;
        break;
      }
      case LadderKind::Mollify:
        op = mollify(u, param);
        break;
    }
    const GridFunction w = op - u;
    const ModularResult frac = modular_fractional(nf, w, s, 2, options.fractional);
    ConvergenceRow row;
    row.param = param;
    row.modular = ScalarModular(diag, w)(1.0) + frac.value;
    row.norm = sobolev_norm(nf, w, s, options.rel_tol, options.fractional);
    row.error_estimate = frac.error_estimate;
    rep.rows.push_back(row);
  }
  rep.verdict = ladder_verdict(rep.rows, options.target);
  return rep;
}

CounterexampleReport counterexample_experiment(double r, double d, double h,
                                               const std::vector<int>& grid_ladder) {
  if (!(r >= 1.0) || !(d > r) || !std::isfinite(d))
    throw ParameterError("counterexample: need 1 <= r < d");
  if (!(h > 0.0 && h < 1.0)) throw ParameterError("counterexample: need 0 < h < 1");
  if (grid_ladder.empty()) throw ParameterError("counterexample: empty grid ladder");

  CounterexampleReport rep;
  rep.closed_form = d / (d - r);
  rep.shifted.kind = "counterexample_shifted";
  rep.reference.kind = "counterexample_reference";
  const ScalarNFunction G = ScalarNFunction::spatial_exponent(
      [r, d](const Point& x) { return x[0] >= 0.0 ? r : d; }, r, d);
  const Domain omega = Domain::box(1, {-1.0, 0.0}, {1.0, 0.0});

  std::vector<double> shifted, reference;
  for (int n : grid_ladder) {
    const GridSpec spec(1, {-1.0, 0.0}, {1.0, 0.0}, n);
    const double hg = spec.h();
    const double cap = std::pow(hg, -1.0 / d);
    std::vector<double> values(spec.node_count(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double x = spec.node(i)[0];
      if (std::abs(x) < 0.5 * hg)
        values[i] = cap;
      else if (x > 0.0 && x < 1.0)
        values[i] = std::pow(x, -1.0 / d);
    }
    const GridFunction f(spec, std::move(values), true);
    const GridFunction tf = translate(f, {h, 0.0}, omega);

    const auto row = [&](const GridFunction& g) {
      ConvergenceRow out;
      out.param = hg;
      out.modular = ScalarModular(G, g)(1.0);
      out.norm = luxemburg_norm(G, g).value;
      return out;
    };
    rep.reference.rows.push_back(row(f));
    rep.shifted.rows.push_back(row(tf));
    reference.push_back(rep.reference.rows.back().modular);
    shifted.push_back(rep.shifted.rows.back().modular);
  }
  for (std::size_t k = 1; k < grid_ladder.size(); ++k) {
    rep.reference.rows[k].error_estimate = std::abs(reference[k] - reference[k - 1]);
    rep.shifted.rows[k].error_estimate = std::abs(shifted[k] - shifted[k - 1]);
  }

  rep.shifted.verdict = detect_divergence(shifted);
  rep.reference.target = rep.closed_form;
  rep.reference.verdict = std::all_of(reference.begin(), reference.end(), [&](double v) {
    return std::isfinite(v) && v <= rep.closed_form * (1.0 + 1e-12);
  });
  rep.verdict = rep.shifted.verdict && rep.reference.verdict;
  return rep;
}

bool ladder_is_cauchy(const std::vector<double>& values, double tol) {
  if (values.empty()) return false;
  for (double v : values)
    if (!std::isfinite(v)) return false;
  if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) return true;
  if (values.size() < 2 || detect_divergence(values)) return false;
  double prev_inc = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double inc = std::abs(values[k] - values[k - 1]);
    if (inc > 1.1 * prev_inc) return false;
    prev_inc = inc;
  }
  return prev_inc <= tol * std::abs(values.back());
}

ConvergenceReport finiteness_experiment(const ClosedForm& u, const GridSpec& base,
                                        const NFunction& nf, double s,
                                        const std::vector<int>& grid_ladder,
                                        const FinitenessOptions& options) {
  if (grid_ladder.empty()) throw ParameterError("finiteness: empty grid ladder");
  ConvergenceReport rep;
  rep.kind = "finiteness";
  rep.target = options.cauchy_tol;
  std::vector<double> values;
  for (int n : grid_ladder) {
    const GridSpec spec(base.dim(), base.lo(), base.hi(), n);
    const GridFunction gf = sample(u, spec);
    if (!gf.zero_outside())
      throw PreconditionError("finiteness: u must be compactly supported inside the box");
    const FractionalModular J(nf, gf, s, options.fractional);
    ConvergenceRow row;
    row.param = spec.h();
    row.modular = J(1.0);
    row.norm = luxemburg_norm(ModularFunctional{[&](double c) { return J(c); }, nf.g_minus(),
                                                nf.g_plus()})
                   .value;
    if (!values.empty()) row.error_estimate = std::abs(row.modular - values.back());
    values.push_back(row.modular);
    rep.rows.push_back(row);
  }
  rep.verdict = ladder_is_cauchy(values, options.cauchy_tol);
  return rep;
}

}  // namespace musielak
