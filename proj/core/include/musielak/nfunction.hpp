#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "musielak/geometry.hpp"

namespace musielak {

enum class Family { VariableExponent, Orlicz, Product };

std::string to_string(Family family);

/// Exponent map p(x, y) = mid + amp * cos(freq * |x - y|).
///
/// Depending on x and y only through |x - y| makes the map invariant under
/// diagonal shifts (x - z, y - z) by construction.
struct ExponentMap {
  double mid = 2.0;
  double amp = 0.0;
  double freq = 1.0;

  double operator()(double r) const;
  double min() const;
  double max() const;
};

/// A generalized N-function frozen at one value of r = |x - y|.
///
/// Everything the quadratures need per pair of points lives here so the inner
/// loops never recompute the exponent map.
struct Profile {
  Family family = Family::VariableExponent;
  double p = 2.0;  // power (VariableExponent, Product) or q (Orlicz)
  double c = 1.0;  // log(1 + c t) factor (Orlicz, Product)

  double G(double t) const;
  double g(double t) const;
};

/// Legendre-Young conjugate sup_{s >= 0} (tau s - G(s)) of one profile.
///
/// Golden-section search on the concave map s -> tau s - G(s). The returned
/// value is attained at some s, so it never exceeds the true supremum; the
/// search stops once the bracket is narrower than kConjugateRelTol * s_max.
/// Returns +inf when G grows at most linearly and the supremum is unbounded.
double conjugate(const Profile& profile, double tau);

inline constexpr double kConjugateRelTol = 1e-10;

/// A parametrized generalized N-function G_{x,y}(t) on R^N, N in {1, 2}.
class NFunction {
 public:
  /// G_{x,y}(t) = t^{p(x,y)}.
  static NFunction variable_exponent(ExponentMap map, int dim = 1);
  /// Constant exponent, G(t) = t^p.
  static NFunction power(double p, int dim = 1);
  /// G_{x,y}(t) = M(t) = t^q log(1 + c t).
  static NFunction orlicz(double q, double c = 1.0, int dim = 1);
  /// G_{x,y}(t) = t^{p(x,y)} log(1 + c t).
  static NFunction product(ExponentMap map, double c = 1.0, int dim = 1);

  Family family() const { return family_; }
  int dim() const { return dim_; }
  const ExponentMap& exponent() const { return map_; }
  double log_factor() const { return c_; }

  /// The N-function restricted to pairs at distance r.
  Profile at_distance(double r) const;
  Profile at(const Point& x, const Point& y) const;

  /// Declared bounds 1 < g- <= t g(t) / G(t) <= g+ of the family.
  double g_minus() const;
  double g_plus() const;

  /// True when t g(t) / G(t) is constant, i.e. G is an exact power law.
  bool power_law() const { return g_minus() == g_plus(); }

 private:
  NFunction(Family family, ExponentMap map, double c, int dim);

  Family family_;
  ExponentMap map_;
  double c_;
  int dim_;
};

/// G_{x,y}(t). Evaluating at y = x gives the diagonal function G^_x(t).
double eval_G(const NFunction& nf, const Point& x, const Point& y, double t);

/// g_{x,y}(t) = d/dt G_{x,y}(t); zero at t = 0.
double eval_g(const NFunction& nf, const Point& x, const Point& y, double t);

double conjugate(const NFunction& nf, const Point& x, const Point& y, double tau);

/// Sampling plan for the structural checks: log-spaced t values and a lattice
/// of points for x and y. Each refinement doubles both densities.
struct SamplingSpec {
  double t_min = 1e-6;
  double t_max = 1e6;
  int t_count = 64;
  int lattice_count = 8;
  double lattice_lo = -2.0;
  double lattice_hi = 2.0;
  int refinements = 0;
  int young_pairs = 256;
  double young_lo = 1e-3;
  double young_hi = 1e3;
  std::uint64_t seed = 0;

  std::vector<double> t_values() const;
  std::vector<Point> lattice(int dim) const;
};

struct GBounds {
  double g_minus;
  double g_plus;
};

/// Extremes of g(x,y,t) t / G(x,y,t) over the sampling plan.
GBounds estimate_g_bounds(const NFunction& nf, const SamplingSpec& sample);

struct Violation {
  std::string id;
  Point x{};
  Point y{};
  double t = 0.0;
  double residual = 0.0;
};

struct NFunctionReport {
  double g_minus_est = 0.0;
  double g_plus_est = 0.0;
  double delta2_K = 1.0;
  double bf_C1 = 0.0;
  double bf_C2 = 0.0;
  std::vector<Violation> violations;
  std::size_t samples = 0;
};

/// Verifies index bounds, the four scaling inequalities, Delta_2, the
/// fractional boundedness condition, Young's inequality and convexity on the
/// sampling plan. Violations above `tol` (relative) are recorded, never thrown.
NFunctionReport check_structure(const NFunction& nf, const SamplingSpec& sample,
                                double tol);

}  // namespace musielak
