#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "musielak/grid.hpp"
#include "musielak/nfunction.hpp"

namespace musielak {

/// A diagonal N-function x -> G^_x(t) for the scalar modular, with the index
/// bounds used to bracket Luxemburg norms.
struct ScalarNFunction {
  std::function<double(const Point& x, double t)> G;
  double g_minus = 1.0;
  double g_plus = 1.0;
  /// True when G^_x does not depend on x; lets evaluators hoist it.
  bool uniform = false;

  /// G^_x = G_{x,x}.
  static ScalarNFunction diagonal_of(const NFunction& nf);
  /// Young conjugate of the diagonal, evaluated numerically.
  static ScalarNFunction conjugate_of(const NFunction& nf);
  /// t^{p(x)} with an arbitrary spatial exponent (not translation invariant).
  static ScalarNFunction spatial_exponent(std::function<double(const Point&)> p,
                                          double p_min, double p_max);
};

struct LevelValue {
  int n = 0;
  double h = 0.0;
  double value = 0.0;
};

struct ModularResult {
  double value = 0.0;
  std::vector<LevelValue> refinement_levels;
  double error_estimate = 0.0;
  bool diverged = false;
};

struct FractionalOptions {
  /// Dyadic subdivision depth of the diagonal cells; the innermost shell is dropped.
  int diagonal_depth = 4;
  /// Add the pairs (x in box, y outside box), where u(y) = 0 but the kernel is not.
  bool exterior_tail = true;
  unsigned threads = 1;
};

/// Ladder divergence test on successive refinement values: flags three
/// successive growth steps that either each multiply the value by >= 1.5 or
/// whose increments do not decay (each >= 0.9 x the previous one).
bool detect_divergence(std::span<const double> ladder);

/// J(u) = int G^_x(|u(x)|) dx by node-centred midpoint quadrature, at up to
/// `levels` strided resolutions ending with the full grid.
ModularResult modular_scalar(const ScalarNFunction& nf, const GridFunction& gf, int levels);
ModularResult modular_scalar(const NFunction& nf, const GridFunction& gf, int levels);

/// J_{s,G}(u) = int int G_{x,y}(|u(x)-u(y)| / |x-y|^s) dx dy / |x-y|^N.
ModularResult modular_fractional(const NFunction& nf, const GridFunction& gf, double s,
                                 int levels, const FractionalOptions& options = {});

/// Values v(x_i, x_j) of a function on box x box, flat index i * M + j.
struct PairFunction {
  GridSpec spec;
  std::vector<double> values;

  static PairFunction from(const GridSpec& spec,
                           const std::function<double(const Point&, const Point&)>& v);
  /// v(x, y) = (u(x) - u(y)) / |x - y|^s off the diagonal, 0 on it.
  static PairFunction fractional_difference(const GridFunction& u, double s);
  PairFunction clamped(double k) const;
  PairFunction coarsened(int stride) const;
};

/// int int G_{x,y}(|v(x,y)|) dmu over box x box; diagonal cells are excluded.
ModularResult modular_pair(const NFunction& nf, const PairFunction& v, int levels,
                           const FractionalOptions& options = {});

/// J(scale * u) for the scalar modular, reusable across many scales.
class ScalarModular {
 public:
  ScalarModular(ScalarNFunction nf, const GridFunction& u);
  double operator()(double scale) const;
  const ScalarNFunction& nfunction() const { return nf_; }

 private:
  ScalarNFunction nf_;
  GridSpec spec_;
  std::vector<double> abs_values_;
};

/// J_{s,G}(scale * u) with all geometry (distances, weights, diagonal
/// sub-cells, exterior rays) precomputed once per u.
class FractionalModular {
 public:
  FractionalModular(const NFunction& nf, const GridFunction& u, double s,
                    FractionalOptions options = {});
  ~FractionalModular();
  FractionalModular(FractionalModular&&) noexcept;
  FractionalModular& operator=(FractionalModular&&) noexcept;

  double operator()(double scale) const;

  /// Contributions at scale 1, for diagnostics and tests.
  double off_diagonal(double scale = 1.0) const;
  double diagonal(double scale = 1.0) const;
  double exterior(double scale = 1.0) const;

  const NFunction& nfunction() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// int_D^inf G_r(a r^{-s}) dr / r, the radial integral behind the exterior term.
double exterior_ray_integral(const NFunction& nf, double D, double a, double s);

}  // namespace musielak
