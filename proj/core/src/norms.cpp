#include "musielak/norms.hpp"

#include <algorithm>
#include <cmath>

#include "musielak/error.hpp"
#include "musielak/parallel.hpp"

namespace musielak {

namespace {

constexpr int kMaxExpansion = 2000;

}  // namespace

NormResult luxemburg_norm(const ModularFunctional& modular, double rel_tol) {
  if (!(rel_tol > 0.0)) throw ParameterError("luxemburg_norm: rel_tol must be > 0");
  if (!(modular.g_minus > 0.0 && modular.g_minus <= modular.g_plus))
    throw ParameterError("luxemburg_norm: need 0 < g- <= g+");
  const auto J = [&](double lambda) { return modular.at_scale(1.0 / lambda); };

  NormResult res;
  double m = modular.at_scale(1.0);
  if (m == 0.0) return res;

  if (!std::isfinite(m)) {
    // Look for a scaling where the modular becomes finite and restart there.
    double lambda = 1.0;
    for (int k = 0; k < 1000 && !std::isfinite(m); ++k) {
      lambda *= 2.0;
      m = J(lambda);
    }
    if (!std::isfinite(m))
      throw NotInSpace("luxemburg_norm: modular is infinite at every scaling");
    ModularFunctional shifted{[&, lambda](double c) { return modular.at_scale(c / lambda); },
                              modular.g_minus, modular.g_plus};
    NormResult inner = luxemburg_norm(shifted, rel_tol);
    inner.value *= lambda;
    inner.lo *= lambda;
    inner.hi *= lambda;
    return inner;
  }

  // For m >= 1 the scaling bounds give m^(1/g+) <= norm <= m^(1/g-), reversed for m < 1.
  const double a = std::pow(m, 1.0 / modular.g_plus);
  const double b = std::pow(m, 1.0 / modular.g_minus);
  double lo = std::min(a, b);
  double hi = std::max(a, b);

  // Rounding can put the exact root just outside the bracket; widen minimally.
  for (int k = 0; J(hi) > 1.0; ++k) {
    if (k == kMaxExpansion) throw NotInSpace("luxemburg_norm: no upper bracket");
    hi *= 1.0 + 1e-14 * std::pow(2.0, k);
  }
  lo = std::min(lo, hi);
  for (int k = 0; lo > 0.0 && J(lo) <= 1.0; ++k) {
    if (k == kMaxExpansion) {
      lo = 0.0;
      break;
    }
    lo /= 1.0 + 1e-14 * std::pow(2.0, k);
  }

  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (J(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
    ++res.iterations;
  }
  res.lo = lo;
  res.hi = hi;
  res.value = hi;
  res.modular_at_norm = J(hi);
  return res;
}

NormResult luxemburg_norm(const ScalarNFunction& nf, const GridFunction& u, double rel_tol) {
  const ScalarModular J(nf, u);
  return luxemburg_norm(ModularFunctional{[&](double c) { return J(c); }, nf.g_minus, nf.g_plus},
                        rel_tol);
}

NormResult luxemburg_norm(const NFunction& nf, const GridFunction& u, double rel_tol) {
  return luxemburg_norm(ScalarNFunction::diagonal_of(nf), u, rel_tol);
}

NormResult gagliardo_seminorm(const NFunction& nf, const GridFunction& u, double s,
                              double rel_tol, const FractionalOptions& options) {
  const FractionalModular J(nf, u, s, options);
  return luxemburg_norm(
      ModularFunctional{[&](double c) { return J(c); }, nf.g_minus(), nf.g_plus()}, rel_tol);
}

double sobolev_norm(const NFunction& nf, const GridFunction& u, double s, double rel_tol,
                    const FractionalOptions& options) {
  return luxemburg_norm(nf, u, rel_tol).value +
         gagliardo_seminorm(nf, u, s, rel_tol, options).value;
}

HolderResult holder_pairing(const NFunction& nf, const GridFunction& u, const GridFunction& v) {
  if (!(u.spec() == v.spec())) throw ParameterError("holder_pairing: grids differ");
  const double hv = std::pow(u.spec().h(), u.spec().dim());
  std::vector<double> terms(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) terms[i] = hv * u[i] * v[i];
  HolderResult res;
  res.lhs = std::abs(pairwise_sum(terms));
  const double nu = luxemburg_norm(nf, u).value;
  const double nv = luxemburg_norm(ScalarNFunction::conjugate_of(nf), v).value;
  res.rhs = 2.0 * nu * nv;
  res.ok = res.lhs <= res.rhs * (1.0 + 1e-9) + 1e-14;
  return res;
}

EquivalenceReport norm_modular_equivalence(const NFunction& nf,
                                           const std::vector<GridFunction>& seq,
                                           const GridFunction& u, double s,
                                           const FractionalOptions& options) {
  constexpr double kSmall = 1e-6;
  constexpr double kLarge = 1e-2;
  const auto disagree = [](double norm, double modular) {
    return (norm < kSmall && modular > kLarge) || (modular < kSmall && norm > kLarge);
  };
  const ScalarNFunction diag = ScalarNFunction::diagonal_of(nf);
  EquivalenceReport rep;
  for (const GridFunction& un : seq) {
    const GridFunction w = un - u;
    EquivalenceRow row;
    row.scalar_norm = luxemburg_norm(diag, w).value;
    row.scalar_modular = ScalarModular(diag, w)(1.0);
    const FractionalModular J(nf, w, s, options);
    row.fractional_modular = J(1.0);
    row.seminorm = luxemburg_norm(ModularFunctional{[&](double c) { return J(c); },
                                                    nf.g_minus(), nf.g_plus()})
                       .value;
    if (disagree(row.scalar_norm, row.scalar_modular) ||
        disagree(row.seminorm, row.fractional_modular))
      rep.co_vanish = false;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace musielak
