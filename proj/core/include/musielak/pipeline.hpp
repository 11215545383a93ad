#pragma once

#include <optional>
#include <string>
#include <vector>

#include "musielak/error.hpp"
#include "musielak/grid.hpp"
#include "musielak/modular.hpp"
#include "musielak/nfunction.hpp"
#include "musielak/norms.hpp"
#include "musielak/smoothing.hpp"

namespace musielak {

enum class Stage { Translate, Cutoff, Mollify };

std::string to_string(Stage stage);

/// Raised when a stage of the approximation cannot meet its sigma/3 share
/// before hitting the grid's resource limits.
class BudgetInfeasible : public Error {
 public:
  BudgetInfeasible(Stage stage, const std::string& what) : Error(what), stage_(stage) {}
  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

struct ApproximationOptions {
  double delta0 = 0.25;  // first translation tried; halved on the grid lattice
  int j0 = 1;
  std::optional<int> j_max;  // default: floor(box radius) - 1
  double epsilon0 = 0.5;     // first mollifier radius; halved down to 2h
  double rel_tol = kDefaultRelTol;
  FractionalOptions fractional{};
};

struct StageTrial {
  Stage stage;
  double param = 0.0;
  double error = 0.0;
  bool accepted = false;
  std::string note;
};

struct ApproximationReport {
  SmoothingParams params;
  double err_translate = 0.0;
  double err_cutoff = 0.0;
  double err_mollify = 0.0;
  double total_err = 0.0;
  /// rho vanishes outside Omega and its support cells lie inside Omega.
  bool support_ok = false;
  /// Supp rho inside Supp u + B_gamma with gamma = 2 (eps + delta).
  bool vicinity_ok = false;
  /// Supp rho inside B_{j+2} cap (Supp u_delta + B_{2 eps}).
  bool chain_ok = false;
  double margin = 0.0;
  double cutoff_slope = 0.0;
  std::vector<StageTrial> trials;
  /// The approximant; set on success.
  std::optional<GridFunction> rho;
};

/// Translate into the hypograph, cut off, then mollify, each step within
/// sigma / 3 in the W^{s,G} norm.
ApproximationReport approximate(const GridFunction& u, const Domain& dom, const NFunction& nf,
                                double s, double sigma, const ApproximationOptions& options = {});

struct ConvergenceRow {
  double param = 0.0;
  double modular = 0.0;
  double norm = 0.0;
  double error_estimate = 0.0;
};

struct ConvergenceReport {
  std::string kind;
  std::vector<ConvergenceRow> rows;
  double target = 0.0;
  bool verdict = false;
};

enum class LadderKind { Translate, Cutoff, Mollify };

std::string to_string(LadderKind kind);

struct ExperimentOptions {
  double target = 0.05;
  double rel_tol = kDefaultRelTol;
  FractionalOptions fractional{};
};

/// ||op(u; param) - u||_{W^{s,G}} along a ladder of translations (|h| along
/// the last axis), cut-off indices, or mollifier radii. The modular column is
/// J_G^(w) + J_{s,G}(w) of the difference w; error_estimate is the two-level
/// refinement estimate of the fractional modular.
ConvergenceReport convergence_experiment(LadderKind kind, const GridFunction& u,
                                         const Domain& dom, const NFunction& nf, double s,
                                         const std::vector<double>& ladder,
                                         const ExperimentOptions& options = {});

/// Final row below target and no rung more than 10% above its predecessor.
bool ladder_verdict(const std::vector<ConvergenceRow>& rows, double target);

struct CounterexampleReport {
  ConvergenceReport shifted;    // T_h f
  ConvergenceReport reference;  // f
  double closed_form = 0.0;     // int_0^1 x^{-r/d} dx = d / (d - r)
  bool verdict = false;
};

/// Piecewise-exponent example on (-1, 1): p = r on [0,1), d on (-1,0),
/// f(x) = x^{-1/d} on [0,1). `grid_ladder` lists node counts; h must be grid
/// aligned on each of them.
CounterexampleReport counterexample_experiment(double r, double d, double h,
                                               const std::vector<int>& grid_ladder);

struct FinitenessOptions {
  double cauchy_tol = 0.05;
  FractionalOptions fractional{};
};

/// J_{s,G}(u) on each grid of the ladder; verdict when the ladder is Cauchy.
ConvergenceReport finiteness_experiment(const ClosedForm& u, const GridSpec& base,
                                        const NFunction& nf, double s,
                                        const std::vector<int>& grid_ladder,
                                        const FinitenessOptions& options = {});

/// Finite values, no divergence, contracting increments and a last relative
/// increment below `tol`.
bool ladder_is_cauchy(const std::vector<double>& values, double tol);

}  // namespace musielak
