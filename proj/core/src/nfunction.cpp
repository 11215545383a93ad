#include "musielak/nfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "musielak/error.hpp"

namespace musielak {

namespace {

bool finite_point(const Point& p) { return std::isfinite(p[0]) && std::isfinite(p[1]); }

void require_t(double t, const char* what) {
  if (!std::isfinite(t) || t < 0.0)
    throw DomainError(std::string(what) + ": t must be finite and >= 0");
}

double power(double t, double p) {
  if (p == 2.0) return t * t;
  if (p == 3.0) return t * t * t;
  return std::pow(t, p);
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::VariableExponent: return "variable_exponent";
    case Family::Orlicz: return "orlicz";
    case Family::Product: return "product";
  }
  return "unknown";
}

double ExponentMap::operator()(double r) const {
  if (amp == 0.0) return mid;
  return mid + amp * std::cos(freq * r);
}

double ExponentMap::min() const {
  if (freq == 0.0) return mid + amp;
  return mid - std::abs(amp);
}

double ExponentMap::max() const {
  if (freq == 0.0) return mid + amp;
  return mid + std::abs(amp);
}

double Profile::G(double t) const {
  if (t == 0.0) return 0.0;
  const double tp = power(t, p);
  if (family == Family::VariableExponent) return tp;
  return tp * std::log1p(c * t);
}

double Profile::g(double t) const {
  if (t == 0.0) return 0.0;
  const double tp1 = power(t, p - 1.0);
  if (family == Family::VariableExponent) return p * tp1;
  return p * tp1 * std::log1p(c * t) + tp1 * t * c / (1.0 + c * t);
}

double conjugate(const Profile& profile, double tau) {
  if (!std::isfinite(tau) || tau < 0.0)
    throw DomainError("conjugate: tau must be finite and >= 0");
  if (tau == 0.0) return 0.0;

  // Bracket the maximiser of s -> tau s - G(s) in [s_max / 2, s_max].
  double s_max = 1.0;
  while (!(profile.g(s_max) > tau)) {
    s_max *= 2.0;
    if (s_max > 1e300) return std::numeric_limits<double>::infinity();
  }
  while (s_max > 1e-300 && profile.g(0.5 * s_max) > tau) s_max *= 0.5;

  const auto f = [&](double s) { return tau * s - profile.G(s); };
  constexpr double kInvPhi = 0.6180339887498949;
  double a = 0.5 * s_max;
  double b = s_max;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  double best = std::max({f(a), f(b), fc, fd});
  while (b - a > kConjugateRelTol * s_max) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      best = std::max(best, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      best = std::max(best, fd);
    }
  }
  return std::max(best, 0.0);
}

NFunction::NFunction(Family family, ExponentMap map, double c, int dim)
    : family_(family), map_(map), c_(c), dim_(dim) {
  if (dim != 1 && dim != 2) throw ParameterError("NFunction: dim must be 1 or 2");
  if (!std::isfinite(map.mid) || !std::isfinite(map.amp) || !std::isfinite(map.freq))
    throw InvalidNFunction("NFunction: exponent parameters must be finite");
  if (!(map.min() > 0.0)) throw InvalidNFunction("NFunction: exponent must stay positive");
  if (family != Family::VariableExponent && !(c > 0.0 && std::isfinite(c)))
    throw InvalidNFunction("NFunction: log factor c must be positive");
}

NFunction NFunction::variable_exponent(ExponentMap map, int dim) {
  return NFunction(Family::VariableExponent, map, 1.0, dim);
}

NFunction NFunction::power(double p, int dim) {
  return NFunction(Family::VariableExponent, ExponentMap{p, 0.0, 1.0}, 1.0, dim);
}

NFunction NFunction::orlicz(double q, double c, int dim) {
  return NFunction(Family::Orlicz, ExponentMap{q, 0.0, 1.0}, c, dim);
}

NFunction NFunction::product(ExponentMap map, double c, int dim) {
  return NFunction(Family::Product, map, c, dim);
}

Profile NFunction::at_distance(double r) const { return Profile{family_, map_(r), c_}; }

Profile NFunction::at(const Point& x, const Point& y) const {
  return at_distance(distance(x, y, dim_));
}

double NFunction::g_minus() const { return map_.min(); }

double NFunction::g_plus() const {
  // t g / G = p + c t / ((1 + c t) log(1 + c t)) for the log families, in (p, p + 1).
  return family_ == Family::VariableExponent ? map_.max() : map_.max() + 1.0;
}

double eval_G(const NFunction& nf, const Point& x, const Point& y, double t) {
  require_t(t, "eval_G");
  if (!finite_point(x) || !finite_point(y)) throw DomainError("eval_G: non-finite point");
  return nf.at(x, y).G(t);
}

double eval_g(const NFunction& nf, const Point& x, const Point& y, double t) {
  require_t(t, "eval_g");
  if (!finite_point(x) || !finite_point(y)) throw DomainError("eval_g: non-finite point");
  return nf.at(x, y).g(t);
}

double conjugate(const NFunction& nf, const Point& x, const Point& y, double tau) {
  if (!finite_point(x) || !finite_point(y)) throw DomainError("conjugate: non-finite point");
  return conjugate(nf.at(x, y), tau);
}

std::vector<double> SamplingSpec::t_values() const {
  const int count = t_count << refinements;
  std::vector<double> out(count);
  const double a = std::log(t_min);
  const double b = std::log(t_max);
  for (int k = 0; k < count; ++k)
    out[k] = count == 1 ? t_min : std::exp(a + (b - a) * k / (count - 1));
  return out;
}

std::vector<Point> SamplingSpec::lattice(int dim) const {
  const int count = lattice_count << refinements;
  std::vector<Point> out(count);
  for (int k = 0; k < count; ++k) {
    const double u = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    out[k][0] = lattice_lo + (lattice_hi - lattice_lo) * u;
    if (dim == 2) {
      // Second coordinate scattered by the golden ratio so pairs see many directions.
      const double v = std::fmod(0.5 + 0.6180339887498949 * k, 1.0);
      out[k][1] = lattice_lo + (lattice_hi - lattice_lo) * v;
    }
  }
  return out;
}

namespace {

struct PairSample {
  Point x;
  Point y;
  Profile profile;
};

std::vector<PairSample> pairs_of(const NFunction& nf, const SamplingSpec& sample) {
  const auto pts = sample.lattice(nf.dim());
  std::vector<PairSample> out;
  out.reserve(pts.size() * pts.size());
  for (const auto& x : pts)
    for (const auto& y : pts) out.push_back({x, y, nf.at(x, y)});
  return out;
}

}  // namespace

GBounds estimate_g_bounds(const NFunction& nf, const SamplingSpec& sample) {
  const auto ts = sample.t_values();
  GBounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& ps : pairs_of(nf, sample)) {
    for (double t : ts) {
      const double G = ps.profile.G(t);
      if (!(G > 0.0)) throw InvalidNFunction("estimate_g_bounds: G vanishes at t > 0");
      const double ratio = t * ps.profile.g(t) / G;
      b.g_minus = std::min(b.g_minus, ratio);
      b.g_plus = std::max(b.g_plus, ratio);
    }
  }
  return b;
}

NFunctionReport check_structure(const NFunction& nf, const SamplingSpec& sample, double tol) {
  NFunctionReport rep;
  const double gm = nf.g_minus();
  const double gp = nf.g_plus();
  const auto ts = sample.t_values();
  const auto pairs = pairs_of(nf, sample);

  auto record = [&](const char* id, const PairSample& ps, double t, double residual) {
    rep.violations.push_back({id, ps.x, ps.y, t, residual});
  };

  if (!(gm > 1.0))
    rep.violations.push_back({"g_minus_gt_one", {}, {}, 0.0, 1.0 - gm});
  if (!(gm <= gp)) rep.violations.push_back({"g_minus_le_g_plus", {}, {}, 0.0, gm - gp});

  rep.g_minus_est = std::numeric_limits<double>::infinity();
  rep.g_plus_est = -std::numeric_limits<double>::infinity();
  rep.bf_C1 = std::numeric_limits<double>::infinity();
  rep.bf_C2 = 0.0;
  double K = 1.0;

  std::mt19937_64 rng(sample.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ylo = std::log(sample.young_lo);
  const double yhi = std::log(sample.young_hi);
  const int young_per_pair =
      pairs.empty() ? 0 : (sample.young_pairs + static_cast<int>(pairs.size()) - 1) /
                              static_cast<int>(pairs.size());

  constexpr double kDeltas[] = {0.1, 0.5, 2.0, 10.0};

  auto young = [&](const PairSample& ps, double sigma, double tau) {
    const double Gs = ps.profile.G(sigma);
    const double Gt = conjugate(ps.profile, tau);
    const double lhs = sigma * tau;
    const double relax = kConjugateRelTol * (lhs + Gs + Gt);
    const double excess = lhs - (Gs + Gt + relax);
    if (excess > tol * lhs) record("young", ps, sigma, excess / lhs);
  };

  for (const auto& ps : pairs) {
    const Profile& P = ps.profile;
    if (P.G(0.0) != 0.0) record("G_zero", ps, 0.0, P.G(0.0));

    const double g1 = P.G(1.0);
    rep.bf_C1 = std::min(rep.bf_C1, g1);
    rep.bf_C2 = std::max(rep.bf_C2, g1);
    if (!(g1 > 0.0) || !std::isfinite(g1)) record("bf", ps, 1.0, g1);

    double prev_G = 0.0;
    double prev_t = 0.0;
    double prev_slope = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const double t = ts[k];
      const double G = P.G(t);
      ++rep.samples;
      if (!(G > 0.0)) {
        record("positive", ps, t, -G);
        continue;
      }
      const double ratio = t * P.g(t) / G;
      rep.g_minus_est = std::min(rep.g_minus_est, ratio);
      rep.g_plus_est = std::max(rep.g_plus_est, ratio);
      if (ratio < gm * (1.0 - tol)) record("index_lower", ps, t, (gm - ratio) / gm);
      if (ratio > gp * (1.0 + tol)) record("index_upper", ps, t, (ratio - gp) / gp);

      for (double delta : kDeltas) {
        const double Gd = P.G(delta * t);
        const double lo = std::pow(delta, delta > 1.0 ? gm : gp) * G;
        const double hi = std::pow(delta, delta > 1.0 ? gp : gm) * G;
        if (lo > Gd * (1.0 + tol)) record("scaling_lower", ps, t, (lo - Gd) / Gd);
        if (Gd > hi * (1.0 + tol)) record("scaling_upper", ps, t, (Gd - hi) / hi);
      }

      K = std::max(K, P.G(2.0 * t) / G);

      if (k > 0) {
        if (!(G > prev_G)) record("monotone", ps, t, prev_G - G);
        const double slope = (G - prev_G) / (t - prev_t);
        if (k > 1 && slope < prev_slope * (1.0 - tol))
          record("convex", ps, t, (prev_slope - slope) / prev_slope);
        prev_slope = slope;
      }
      prev_G = G;
      prev_t = t;

      // Tight pairs: equality sigma tau = G(sigma) + conj(tau) at tau = g(sigma).
      young(ps, t, P.g(t));
    }
    for (int k = 0; k < young_per_pair; ++k) {
      const double sigma = std::exp(ylo + (yhi - ylo) * unit(rng));
      const double tau = std::exp(ylo + (yhi - ylo) * unit(rng));
      young(ps, sigma, tau);
    }
  }

  rep.delta2_K = K;
  if (K > std::pow(2.0, gp) * (1.0 + tol))
    rep.violations.push_back({"delta2", {}, {}, 0.0, K / std::pow(2.0, gp) - 1.0});
  if (!(rep.bf_C1 > 0.0) || !(rep.bf_C1 <= rep.bf_C2))
    rep.violations.push_back({"bf", {}, {}, 1.0, rep.bf_C1});
  if (pairs.empty() || ts.empty()) {
    rep.g_minus_est = rep.g_plus_est = 0.0;
    rep.bf_C1 = rep.bf_C2 = 0.0;
  }
  return rep;
}

}  // namespace musielak
