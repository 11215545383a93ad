#pragma once

#include <functional>
#include <vector>

#include "musielak/grid.hpp"
#include "musielak/modular.hpp"
#include "musielak/nfunction.hpp"

namespace musielak {

struct NormResult {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double modular_at_norm = 0.0;
  int iterations = 0;
};

/// A modular seen as a function of the scaling: at_scale(c) = J(c u).
/// g_minus/g_plus are index bounds of the underlying N-function; they turn
/// J(u) into a guaranteed initial bracket for the norm.
struct ModularFunctional {
  std::function<double(double)> at_scale;
  double g_minus = 1.0;
  double g_plus = 1.0;
};

inline constexpr double kDefaultRelTol = 1e-8;

/// inf{lambda > 0 : J(u / lambda) <= 1} by bisection on the monotone map
/// lambda -> J(u / lambda). `value` is the upper end of the final bracket, so
/// J(u / value) <= 1 always holds.
NormResult luxemburg_norm(const ModularFunctional& modular, double rel_tol = kDefaultRelTol);

/// ||u||_{L^G^} for the diagonal of nf.
NormResult luxemburg_norm(const NFunction& nf, const GridFunction& u,
                          double rel_tol = kDefaultRelTol);
NormResult luxemburg_norm(const ScalarNFunction& nf, const GridFunction& u,
                          double rel_tol = kDefaultRelTol);

/// [u]_{s,G}: Luxemburg norm of the fractional modular.
NormResult gagliardo_seminorm(const NFunction& nf, const GridFunction& u, double s,
                              double rel_tol = kDefaultRelTol,
                              const FractionalOptions& options = {});

/// ||u||_{L^G^} + [u]_{s,G}.
double sobolev_norm(const NFunction& nf, const GridFunction& u, double s,
                    double rel_tol = kDefaultRelTol, const FractionalOptions& options = {});

struct HolderResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

/// |int u v| against 2 ||u||_{L^G^} ||v||_{L^{conj G^}}.
HolderResult holder_pairing(const NFunction& nf, const GridFunction& u, const GridFunction& v);

struct EquivalenceRow {
  double scalar_norm = 0.0;
  double scalar_modular = 0.0;
  double seminorm = 0.0;
  double fractional_modular = 0.0;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  /// No index where a norm is below 1e-6 while its modular is above 1e-2, or
  /// the other way round, for both the scalar and the fractional pair.
  bool co_vanish = true;
};

EquivalenceReport norm_modular_equivalence(const NFunction& nf,
                                           const std::vector<GridFunction>& seq,
                                           const GridFunction& u, double s,
                                           const FractionalOptions& options = {});

}  // namespace musielak
