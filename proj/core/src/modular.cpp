#include "musielak/modular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "musielak/error.hpp"
#include "musielak/parallel.hpp"

namespace musielak {

namespace {

using Gauss8 = boost::math::quadrature::gauss<double, 8>;
using Gauss16 = boost::math::quadrature::gauss<double, 16>;

double cell_volume(const GridSpec& spec) { return std::pow(spec.h(), spec.dim()); }

/// |x_i - x_j| for an index offset; both the evaluators and the pair tables use
/// this exact expression so that equal offsets give bit-identical distances.
double offset_distance(int a, int b, double h, int dim) {
  const double da = a * h;
  if (dim == 1) return std::sqrt(da * da);
  const double db = b * h;
  return std::sqrt(da * da + db * db);
}

void require_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional order s must lie in (0, 1)");
}

void require_zero_outside(const GridFunction& gf) {
  if (!gf.zero_outside())
    throw PreconditionError("modular: the function must vanish outside the truncation box");
}

/// Largest usable number of levels: the coarsest stride must divide n - 1 and
/// leave at least two nodes per axis.
int usable_levels(int n, int levels) {
  if (levels < 1) throw ParameterError("levels must be >= 1");
  while (levels > 1) {
    const int stride = 1 << (levels - 1);
    if ((n - 1) % stride == 0 && (n - 1) / stride >= 1) break;
    --levels;
  }
  return levels;
}

ModularResult finish(std::vector<LevelValue> ladder) {
  ModularResult r;
  std::vector<double> values;
  for (const auto& l : ladder) values.push_back(l.value);
  r.refinement_levels = std::move(ladder);
  r.value = values.back();
  if (values.size() >= 2) {
    const double a = values[values.size() - 1];
    const double b = values[values.size() - 2];
    r.error_estimate = std::isfinite(a) && std::isfinite(b)
                           ? std::abs(a - b)
                           : std::numeric_limits<double>::infinity();
  }
  r.diverged = detect_divergence(values);
  if (!std::isfinite(r.value)) {
    // Report the last finite level as a lower bound.
    r.diverged = true;
    for (auto it = values.rbegin(); it != values.rend(); ++it)
      if (std::isfinite(*it)) {
        r.value = *it;
        break;
      }
  }
  return r;
}

template <class Eval>
ModularResult run_levels(const GridSpec& spec, int levels, Eval eval) {
  levels = usable_levels(spec.n(), levels);
  std::vector<LevelValue> ladder;
  for (int l = levels - 1; l >= 0; --l) {
    const int stride = 1 << l;
    const GridSpec coarse = spec.coarsened(stride);
    ladder.push_back({coarse.n(), coarse.h(), eval(stride)});
  }
  return finish(std::move(ladder));
}

}  // namespace

ScalarNFunction ScalarNFunction::diagonal_of(const NFunction& nf) {
  const Profile p = nf.at_distance(0.0);
  ScalarNFunction out;
  out.G = [p](const Point&, double t) { return p.G(t); };
  out.g_minus = p.p;
  out.g_plus = p.family == Family::VariableExponent ? p.p : p.p + 1.0;
  out.uniform = true;
  return out;
}

ScalarNFunction ScalarNFunction::conjugate_of(const NFunction& nf) {
  const ScalarNFunction d = diagonal_of(nf);
  if (!(d.g_minus > 1.0))
    throw InvalidNFunction("conjugate_of: the index g- must exceed 1");
  const Profile p = nf.at_distance(0.0);
  ScalarNFunction out;
  out.G = [p](const Point&, double t) { return conjugate(p, t); };
  out.g_minus = d.g_plus / (d.g_plus - 1.0);
  out.g_plus = d.g_minus / (d.g_minus - 1.0);
  out.uniform = true;
  return out;
}

ScalarNFunction ScalarNFunction::spatial_exponent(std::function<double(const Point&)> p,
                                                  double p_min, double p_max) {
  if (!(p_min > 0.0 && p_min <= p_max))
    throw ParameterError("spatial_exponent: need 0 < p_min <= p_max");
  ScalarNFunction out;
  out.G = [p = std::move(p)](const Point& x, double t) { return std::pow(t, p(x)); };
  out.g_minus = p_min;
  out.g_plus = p_max;
  out.uniform = false;
  return out;
}

bool detect_divergence(std::span<const double> ladder) {
  for (double v : ladder)
    if (!std::isfinite(v)) return true;
  constexpr double kGrowth = 1.5;
  constexpr double kPersist = 0.9;
  constexpr double kNoise = 1e-6;
  int ratio_run = 0;
  int increment_run = 0;
  for (std::size_t k = 1; k < ladder.size(); ++k) {
    const double prev = ladder[k - 1];
    const double cur = ladder[k];
    ratio_run = (prev > 0.0 && cur >= kGrowth * prev) ? ratio_run + 1 : 0;

    const double inc = cur - prev;
    const bool positive = inc > kNoise * std::abs(cur);
    if (!positive) {
      increment_run = 0;
    } else if (increment_run == 0 || inc < kPersist * (prev - ladder[k - 2])) {
      increment_run = 1;
    } else {
      ++increment_run;
    }
    if (ratio_run >= 3 || increment_run >= 3) return true;
  }
  return false;
}

ScalarModular::ScalarModular(ScalarNFunction nf, const GridFunction& u)
    : nf_(std::move(nf)), spec_(u.spec()), abs_values_(u.size()) {
  for (std::size_t i = 0; i < u.size(); ++i) abs_values_[i] = std::abs(u[i]);
}

double ScalarModular::operator()(double scale) const {
  const double hv = cell_volume(spec_);
  std::vector<double> terms(abs_values_.size());
  const Point origin{};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double a = abs_values_[i];
    if (a == 0.0) {
      terms[i] = 0.0;
      continue;
    }
    terms[i] = nf_.G(nf_.uniform ? origin : spec_.node(i), scale * a) * hv;
  }
  return pairwise_sum(terms);
}

ModularResult modular_scalar(const ScalarNFunction& nf, const GridFunction& gf, int levels) {
  require_zero_outside(gf);
  return run_levels(gf.spec(), levels, [&](int stride) {
    return ScalarModular(nf, stride == 1 ? gf : gf.coarsened(stride))(1.0);
  });
}

ModularResult modular_scalar(const NFunction& nf, const GridFunction& gf, int levels) {
  return modular_scalar(ScalarNFunction::diagonal_of(nf), gf, levels);
}

// ---------------------------------------------------------------------------
// Fractional modular.

namespace {

/// Graded Gauss-Legendre rule for int_0^inf F(z) dz with F ~ exp(-kappa z):
/// w = exp(-kappa z) maps the ray to (0, 1], panels [2^-(k+1), 2^-k].
constexpr int kRayPanels = 10;

template <class F>
double ray_quadrature(double kappa, F integrand) {
  auto in_w = [&](double w) { return integrand(-std::log(w) / kappa) / (kappa * w); };
  double acc = 0.0;
  double hi = 1.0;
  for (int k = 0; k < kRayPanels; ++k) {
    const double lo = 0.5 * hi;
    acc += Gauss8::integrate(in_w, lo, hi);
    hi = lo;
  }
  acc += Gauss8::integrate(in_w, 0.0, hi);
  return acc;
}

struct SubPair {
  Point a;  // centre offsets relative to the node
  Point b;
  double rs;
  double w;
  Profile profile;
};

/// Off-diagonal sub-cell pairs of the dyadic subdivision of the cell
/// [-h/2, h/2]^N x itself, `depth` levels deep; the innermost diagonal
/// sub-cells are dropped.
std::vector<SubPair> diagonal_geometry(const NFunction& nf, double h, int dim, double s,
                                       int depth) {
  std::vector<SubPair> out;
  const int children = 1 << dim;
  struct Cell {
    Point lo;
    double len;
  };
  std::vector<Cell> current{{Point{-0.5 * h, dim == 2 ? -0.5 * h : 0.0}, h}};
  for (int level = 1; level <= depth; ++level) {
    std::vector<Cell> next;
    for (const Cell& c : current) {
      const double half = 0.5 * c.len;
      std::vector<Cell> kids;
      for (int m = 0; m < children; ++m) {
        Point lo = c.lo;
        for (int k = 0; k < dim; ++k)
          if ((m >> (dim - 1 - k)) & 1) lo[k] += half;
        kids.push_back({lo, half});
      }
      for (int a = 0; a < children; ++a) {
        for (int b = 0; b < children; ++b) {
          if (a == b) continue;
          SubPair sp;
          for (int k = 0; k < dim; ++k) {
            sp.a[k] = kids[a].lo[k] + 0.5 * half;
            sp.b[k] = kids[b].lo[k] + 0.5 * half;
          }
          const double r = distance(sp.a, sp.b, dim);
          sp.rs = std::pow(r, s);
          sp.w = std::pow(half, 2 * dim) / std::pow(r, dim);
          sp.profile = nf.at_distance(r);
          out.push_back(sp);
        }
      }
      for (const Cell& k : kids) next.push_back(k);
    }
    current = std::move(next);
  }
  return out;
}

/// Piecewise (bi)linear interpolant of the node values. Outside the grid the
/// function is 0 when it vanishes outside the box, else extended by the
/// nearest node.
double interpolate(const GridFunction& u, const Point& x) {
  const GridSpec& spec = u.spec();
  const int dim = spec.dim();
  const int n = spec.n();
  std::array<int, kMaxDim> i0{};
  std::array<double, kMaxDim> t{};
  for (int k = 0; k < dim; ++k) {
    const double f = (x[k] - spec.lo()[k]) / spec.h();
    const double fl = std::floor(f);
    i0[k] = static_cast<int>(fl);
    t[k] = f - fl;
  }
  double acc = 0.0;
  for (int m = 0; m < (1 << dim); ++m) {
    double weight = 1.0;
    std::array<int, kMaxDim> idx{};
    bool inside = true;
    for (int k = 0; k < dim; ++k) {
      const int bit = (m >> k) & 1;
      idx[k] = i0[k] + bit;
      weight *= bit ? t[k] : 1.0 - t[k];
      if (idx[k] < 0 || idx[k] >= n) {
        if (u.zero_outside()) inside = false;
        idx[k] = std::clamp(idx[k], 0, n - 1);
      }
    }
    if (inside && weight != 0.0) acc += weight * u[spec.flatten(idx)];
  }
  return acc;
}

}  // namespace

double exterior_ray_integral(const NFunction& nf, double D, double a, double s) {
  if (!(D > 0.0)) throw DomainError("exterior_ray_integral: D must be > 0");
  require_s(s);
  if (a == 0.0) return 0.0;
  const double kappa = s * nf.g_minus();
  return ray_quadrature(kappa, [&](double z) {
    const double r = D * std::exp(z);
    return nf.at_distance(r).G(a * std::pow(r, -s));
  });
}

struct FractionalModular::Impl {
  NFunction nf;
  GridSpec spec;
  double s;
  FractionalOptions options;
  std::vector<double> values;

  // Per |offset| tables (1-D: index |k|; 2-D: |a| * n + |b|).
  std::vector<double> rs;
  std::vector<double> w;
  std::vector<Profile> profiles;

  std::vector<SubPair> sub;
  std::vector<std::size_t> active;     // nodes with a non-flat neighbourhood
  std::vector<double> diag_du;         // active.size() x sub.size()

  struct Ray {
    std::size_t node;
    double D;
    double weight;  // angular weight (1 per ray in 1-D)
  };
  std::vector<Ray> rays;
  std::vector<std::size_t> ray_begin;  // per tail node, into rays
  std::vector<std::size_t> tail_nodes;

  Impl(const NFunction& nf_, const GridFunction& u, double s_, FractionalOptions opt)
      : nf(nf_), spec(u.spec()), s(s_), options(opt), values(u.values()) {
    const int n = spec.n();
    const int dim = spec.dim();
    const double h = spec.h();
    const double hv = cell_volume(spec);
    const std::size_t table = dim == 1 ? n : static_cast<std::size_t>(n) * n;
    rs.assign(table, 0.0);
    w.assign(table, 0.0);
    profiles.assign(table, Profile{});
    for (std::size_t k = 1; k < table; ++k) {
      const int a = dim == 1 ? static_cast<int>(k) : static_cast<int>(k / n);
      const int b = dim == 1 ? 0 : static_cast<int>(k % n);
      const double r = offset_distance(a, b, h, dim);
      rs[k] = std::pow(r, s);
      w[k] = hv * hv / (dim == 1 ? r : r * r);
      profiles[k] = nf.at_distance(r);
    }

    if (options.diagonal_depth > 0) {
      sub = diagonal_geometry(nf, h, dim, s, options.diagonal_depth);
      for (std::size_t i = 0; i < values.size(); ++i) {
        const auto idx = spec.unflatten(i);
        bool flat = true;
        for (int m = 0; m < (dim == 1 ? 3 : 9) && flat; ++m) {
          std::array<int, kMaxDim> j = idx;
          j[0] += dim == 1 ? m - 1 : m / 3 - 1;
          if (dim == 2) j[1] += m % 3 - 1;
          bool inside = true;
          for (int k = 0; k < dim; ++k) {
            if (j[k] < 0 || j[k] >= n) inside = false;
            j[k] = std::clamp(j[k], 0, n - 1);
          }
          const double v = inside || !u.zero_outside() ? values[spec.flatten(j)] : 0.0;
          if (v != values[i]) flat = false;
        }
        if (flat) continue;
        active.push_back(i);
        const Point xi = spec.node(i);
        for (const SubPair& sp : sub) {
          Point pa = xi, pb = xi;
          for (int k = 0; k < dim; ++k) {
            pa[k] += sp.a[k];
            pb[k] += sp.b[k];
          }
          diag_du.push_back(std::abs(interpolate(u, pa) - interpolate(u, pb)));
        }
      }
    }

    // Without zero extension only box x box is meaningful.
    if (!u.zero_outside()) options.exterior_tail = false;
    if (options.exterior_tail) build_rays();
  }

  void build_rays() {
    const int dim = spec.dim();
    const double h = spec.h();
    // The node-centred cells cover [lo - h/2, hi + h/2].
    Point L{}, H{};
    for (int k = 0; k < dim; ++k) {
      L[k] = spec.lo()[k] - 0.5 * h;
      H[k] = spec.hi()[k] + 0.5 * h;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == 0.0) continue;
      tail_nodes.push_back(i);
      ray_begin.push_back(rays.size());
      const Point x = spec.node(i);
      if (dim == 1) {
        rays.push_back({i, x[0] - L[0], 1.0});
        rays.push_back({i, H[0] - x[0], 1.0});
        continue;
      }
      // Polar rays, split at the corner directions so D(theta) is smooth per arc.
      const double pi = std::numbers::pi;
      std::vector<double> cuts = {std::atan2(H[1] - x[1], H[0] - x[0]),
                                  std::atan2(H[1] - x[1], L[0] - x[0]),
                                  std::atan2(L[1] - x[1], L[0] - x[0]),
                                  std::atan2(L[1] - x[1], H[0] - x[0])};
      for (double& c : cuts)
        if (c < 0.0) c += 2.0 * pi;
      std::sort(cuts.begin(), cuts.end());
      cuts.push_back(cuts.front() + 2.0 * pi);
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double t0 = cuts[c];
        const double t1 = cuts[c + 1];
        const double mid = 0.5 * (t0 + t1);
        const double half = 0.5 * (t1 - t0);
        const auto& xs = Gauss16::abscissa();
        const auto& ws = Gauss16::weights();
        for (std::size_t q = 0; q < xs.size(); ++q) {
          for (int sign : {-1, 1}) {
            if (xs[q] == 0.0 && sign < 0) continue;
            const double th = mid + sign * half * xs[q];
            const double cx = std::cos(th);
            const double cy = std::sin(th);
            double D = std::numeric_limits<double>::infinity();
            if (cx > 0.0) D = std::min(D, (H[0] - x[0]) / cx);
            if (cx < 0.0) D = std::min(D, (L[0] - x[0]) / cx);
            if (cy > 0.0) D = std::min(D, (H[1] - x[1]) / cy);
            if (cy < 0.0) D = std::min(D, (L[1] - x[1]) / cy);
            rays.push_back({i, D, half * ws[q]});
          }
        }
      }
    }
  }

  double row_sum(std::size_t i, double scale, bool off, bool diag,
                 std::vector<double>& buf) const {
    const int n = spec.n();
    const int dim = spec.dim();
    buf.clear();
    const double ui = values[i];
    if (off) {
      if (dim == 1) {
        for (int j = 0; j < n; ++j) {
          if (static_cast<std::size_t>(j) == i) continue;
          const double du = std::abs(ui - values[j]);
          if (du == 0.0) {
            buf.push_back(0.0);
            continue;
          }
          const std::size_t k = static_cast<std::size_t>(std::abs(j - static_cast<int>(i)));
          buf.push_back(profiles[k].G(du * scale / rs[k]) * w[k]);
        }
      } else {
        const auto ii = spec.unflatten(i);
        std::size_t j = 0;
        for (int j0 = 0; j0 < n; ++j0) {
          const std::size_t row = static_cast<std::size_t>(std::abs(j0 - ii[0])) * n;
          for (int j1 = 0; j1 < n; ++j1, ++j) {
            if (j == i) continue;
            const double du = std::abs(ui - values[j]);
            if (du == 0.0) {
              buf.push_back(0.0);
              continue;
            }
            const std::size_t k = row + static_cast<std::size_t>(std::abs(j1 - ii[1]));
            buf.push_back(profiles[k].G(du * scale / rs[k]) * w[k]);
          }
        }
      }
    }
    if (diag && !sub.empty()) {
      const auto it = std::lower_bound(active.begin(), active.end(), i);
      if (it != active.end() && *it == i) {
        const double* du = &diag_du[static_cast<std::size_t>(it - active.begin()) * sub.size()];
        for (std::size_t g = 0; g < sub.size(); ++g)
          buf.push_back(du[g] == 0.0 ? 0.0 : sub[g].profile.G(du[g] * scale / sub[g].rs) * sub[g].w);
      }
    }
    return pairwise_sum(buf);
  }

  double interior(double scale, bool off, bool diag) const {
    const std::size_t m = values.size();
    std::vector<double> rows(m, 0.0);
    parallel_for(m, options.threads, [&](std::size_t begin, std::size_t end, unsigned) {
      std::vector<double> buf;
      buf.reserve(m + sub.size());
      for (std::size_t i = begin; i < end; ++i) rows[i] = row_sum(i, scale, off, diag, buf);
    });
    return pairwise_sum(rows);
  }

  double tail(double scale) const {
    if (tail_nodes.empty()) return 0.0;
    const double hv = cell_volume(spec);
    std::vector<double> per_node(tail_nodes.size(), 0.0);
    parallel_for(tail_nodes.size(), options.threads,
                 [&](std::size_t begin, std::size_t end, unsigned) {
                   std::vector<double> buf;
                   for (std::size_t t = begin; t < end; ++t) {
                     const std::size_t lo = ray_begin[t];
                     const std::size_t hi = t + 1 < ray_begin.size() ? ray_begin[t + 1] : rays.size();
                     const double a = scale * std::abs(values[tail_nodes[t]]);
                     buf.clear();
                     for (std::size_t q = lo; q < hi; ++q)
                       buf.push_back(rays[q].weight * exterior_ray_integral(nf, rays[q].D, a, s));
                     per_node[t] = 2.0 * hv * pairwise_sum(buf);
                   }
                 });
    return pairwise_sum(per_node);
  }
};

FractionalModular::FractionalModular(const NFunction& nf, const GridFunction& u, double s,
                                     FractionalOptions options) {
  require_s(s);
  if (nf.dim() != u.spec().dim()) throw ParameterError("modular: dimension mismatch");
  if (options.diagonal_depth < 0) throw ParameterError("diagonal_depth must be >= 0");
  impl_ = std::make_unique<Impl>(nf, u, s, options);
}

FractionalModular::~FractionalModular() = default;
FractionalModular::FractionalModular(FractionalModular&&) noexcept = default;
FractionalModular& FractionalModular::operator=(FractionalModular&&) noexcept = default;

double FractionalModular::operator()(double scale) const {
  const double inner = impl_->interior(scale, true, true);
  return impl_->options.exterior_tail ? inner + impl_->tail(scale) : inner;
}

double FractionalModular::off_diagonal(double scale) const {
  return impl_->interior(scale, true, false);
}

double FractionalModular::diagonal(double scale) const {
  return impl_->interior(scale, false, true);
}

double FractionalModular::exterior(double scale) const {
  return impl_->options.exterior_tail ? impl_->tail(scale) : 0.0;
}

const NFunction& FractionalModular::nfunction() const { return impl_->nf; }

ModularResult modular_fractional(const NFunction& nf, const GridFunction& gf, double s,
                                 int levels, const FractionalOptions& options) {
  require_s(s);
  require_zero_outside(gf);
  return run_levels(gf.spec(), levels, [&](int stride) {
    return FractionalModular(nf, stride == 1 ? gf : gf.coarsened(stride), s, options)(1.0);
  });
}

// ---------------------------------------------------------------------------
// Pair modular.

PairFunction PairFunction::from(const GridSpec& spec,
                                const std::function<double(const Point&, const Point&)>& v) {
  const std::size_t m = spec.node_count();
  PairFunction out{spec, std::vector<double>(m * m)};
  for (std::size_t i = 0; i < m; ++i) {
    const Point x = spec.node(i);
    for (std::size_t j = 0; j < m; ++j) out.values[i * m + j] = v(x, spec.node(j));
  }
  return out;
}

PairFunction PairFunction::fractional_difference(const GridFunction& u, double s) {
  require_s(s);
  const GridSpec& spec = u.spec();
  const std::size_t m = spec.node_count();
  const int dim = spec.dim();
  PairFunction out{spec, std::vector<double>(m * m, 0.0)};
  for (std::size_t i = 0; i < m; ++i) {
    const auto ii = spec.unflatten(i);
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const auto jj = spec.unflatten(j);
      const double r = offset_distance(std::abs(ii[0] - jj[0]),
                                       dim == 2 ? std::abs(ii[1] - jj[1]) : 0, spec.h(), dim);
      out.values[i * m + j] = (u[i] - u[j]) / std::pow(r, s);
    }
  }
  return out;
}

PairFunction PairFunction::clamped(double k) const {
  if (!(k > 0.0)) throw ParameterError("PairFunction::clamped: k must be > 0");
  PairFunction out = *this;
  for (double& v : out.values) v = std::clamp(v, -k, k);
  return out;
}

PairFunction PairFunction::coarsened(int stride) const {
  const GridSpec coarse = spec.coarsened(stride);
  const std::size_t m = spec.node_count();
  const std::size_t mc = coarse.node_count();
  std::vector<std::size_t> map(mc);
  for (std::size_t i = 0; i < mc; ++i) {
    auto idx = coarse.unflatten(i);
    for (int k = 0; k < spec.dim(); ++k) idx[k] *= stride;
    map[i] = spec.flatten(idx);
  }
  PairFunction out{coarse, std::vector<double>(mc * mc)};
  for (std::size_t i = 0; i < mc; ++i)
    for (std::size_t j = 0; j < mc; ++j) out.values[i * mc + j] = values[map[i] * m + map[j]];
  return out;
}

ModularResult modular_pair(const NFunction& nf, const PairFunction& v, int levels,
                           const FractionalOptions& options) {
  const GridSpec& spec = v.spec;
  if (nf.dim() != spec.dim()) throw ParameterError("modular_pair: dimension mismatch");
  return run_levels(spec, levels, [&](int stride) {
    const PairFunction p = stride == 1 ? v : v.coarsened(stride);
    const GridSpec& g = p.spec;
    const std::size_t m = g.node_count();
    const int dim = g.dim();
    const double hv = cell_volume(g);
    std::vector<double> rows(m, 0.0);
    parallel_for(m, options.threads, [&](std::size_t begin, std::size_t end, unsigned) {
      std::vector<double> buf;
      buf.reserve(m);
      for (std::size_t i = begin; i < end; ++i) {
        buf.clear();
        const auto ii = g.unflatten(i);
        for (std::size_t j = 0; j < m; ++j) {
          if (j == i) continue;
          const double t = std::abs(p.values[i * m + j]);
          if (t == 0.0) {
            buf.push_back(0.0);
            continue;
          }
          const auto jj = g.unflatten(j);
          const double r = offset_distance(std::abs(ii[0] - jj[0]),
                                           dim == 2 ? std::abs(ii[1] - jj[1]) : 0, g.h(), dim);
          buf.push_back(nf.at_distance(r).G(t) * (hv * hv / (dim == 1 ? r : r * r)));
        }
        rows[i] = pairwise_sum(buf);
      }
    });
    return pairwise_sum(rows);
  });
}

}  // namespace musielak
