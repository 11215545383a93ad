#include "musielak/smoothing.hpp"

#include <algorithm>
#include <cmath>

#include "musielak/error.hpp"

namespace musielak {

namespace {

double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

bool boundary_zero(const GridSpec& spec, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0.0 && spec.on_boundary(i)) return false;
  return true;
}

}  // namespace

GridFunction translate(const GridFunction& gf, const Point& h, const Domain& dom) {
  const GridSpec& spec = gf.spec();
  const int dim = spec.dim();
  if (dom.dim() != dim) throw ParameterError("translate: dimension mismatch");
  std::array<int, kMaxDim> shift{};
  for (int k = 0; k < dim; ++k) {
    const double m = h[k] / spec.h();
    const double r = std::round(m);
    if (!std::isfinite(m) || std::abs(m - r) > 1e-9 * std::max(1.0, std::abs(m)))
      throw AlignmentError("translate: h must be a multiple of the grid spacing");
    shift[k] = static_cast<int>(r);
  }
  std::vector<double> out(gf.size(), 0.0);
  for (std::size_t i = 0; i < gf.size(); ++i) {
    const auto idx = spec.unflatten(i);
    std::array<int, kMaxDim> src = idx;
    bool inside = true;
    Point xh = spec.node(idx);
    for (int k = 0; k < dim; ++k) {
      src[k] += shift[k];
      xh[k] += h[k];
      if (src[k] < 0 || src[k] >= spec.n()) inside = false;
    }
    if (!inside) continue;
    if (!dom.contains(spec.node(idx)) || !dom.contains(spec.node(src))) continue;
    out[i] = gf[spec.flatten(src)];
  }
  const bool zero_out = gf.zero_outside() && boundary_zero(spec, out);
  return GridFunction(spec, std::move(out), zero_out);
}

double smooth_step(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = glue(1.0 - t);
  const double b = glue(t);
  return a / (a + b);
}

double cutoff_slope_constant() {
  static const double value = [] {
    // Dense central differences; the profile is symmetric about t = 1/2.
    constexpr int kSamples = 200000;
    const double d = 1.0 / kSamples;
    double best = 0.0;
    for (int k = 1; k < kSamples; ++k) {
      const double t = k * d;
      best = std::max(best, std::abs(smooth_step(t + 0.5 * d) - smooth_step(t - 0.5 * d)) / d);
    }
    return best;
  }();
  return value;
}

GridFunction cutoff(int j, const GridSpec& spec) {
  if (j < 1) throw ParameterError("cutoff: j must be >= 1");
  for (int k = 0; k < spec.dim(); ++k)
    if (spec.lo()[k] > -(j + 1.0) || spec.hi()[k] < j + 1.0)
      throw DomainError("cutoff: the truncation box must contain B_{j+1}");
  std::vector<double> out(spec.node_count());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = smooth_step(norm(spec.node(i), spec.dim()) - j);
  const bool zero_out = boundary_zero(spec, out);
  return GridFunction(spec, std::move(out), zero_out);
}

double friedrichs_kernel(double z2) { return z2 < 1.0 ? std::exp(-1.0 / (1.0 - z2)) : 0.0; }

GridFunction mollify(const GridFunction& gf, double epsilon) {
  const GridSpec& spec = gf.spec();
  const int dim = spec.dim();
  const int n = spec.n();
  const double h = spec.h();
  if (!(epsilon >= 2.0 * h * (1.0 - 1e-12)))
    throw ResolutionError("mollify: epsilon must be at least twice the grid spacing");

  // Nodes the kernel can reach must stay inside the box.
  for (std::size_t i = 0; i < gf.size(); ++i) {
    if (gf[i] == 0.0) continue;
    const auto idx = spec.unflatten(i);
    for (int k = 0; k < dim; ++k)
      if (idx[k] * h < epsilon || (n - 1 - idx[k]) * h < epsilon)
        throw DomainError("mollify: support within epsilon of the box edge");
  }

  const int K = static_cast<int>(std::floor(epsilon / h));
  struct Tap {
    int a;
    int b;
    double w;
  };
  std::vector<Tap> taps;
  double total = 0.0;
  for (int a = -K; a <= K; ++a) {
    for (int b = (dim == 2 ? -K : 0); b <= (dim == 2 ? K : 0); ++b) {
      const double za = a * h / epsilon;
      const double zb = b * h / epsilon;
      const double w = friedrichs_kernel(za * za + zb * zb);
      if (w == 0.0) continue;
      taps.push_back({a, b, w});
      total += w;
    }
  }
  for (Tap& t : taps) t.w /= total;

  std::vector<double> out(gf.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto idx = spec.unflatten(i);
    double acc = 0.0;
    for (const Tap& t : taps) {
      std::array<int, kMaxDim> src = idx;
      src[0] += t.a;
      if (dim == 2) src[1] += t.b;
      bool inside = true;
      for (int k = 0; k < dim; ++k)
        if (src[k] < 0 || src[k] >= n) inside = false;
      if (inside) acc += t.w * gf[spec.flatten(src)];
    }
    out[i] = acc;
  }
  return GridFunction(spec, std::move(out), gf.zero_outside() && boundary_zero(spec, out));
}

Region inflate(const Region& region, double r) {
  if (!(r >= 0.0)) throw ParameterError("inflate: r must be >= 0");
  return Region(region.spec(), region.cells(), region.r() + r);
}

double hypograph_margin(const Region& region, double R, const Domain& dom) {
  if (dom.kind() != Domain::Kind::Hypograph)
    throw ParameterError("hypograph_margin: domain must be a hypograph");
  if (!(R > 0.0)) throw ParameterError("hypograph_margin: R must be > 0");
  if (region.empty()) return R;

  const GridSpec& spec = region.spec();
  const int dim = spec.dim();
  const double h = spec.h();
  for (std::size_t c = 0; c < region.cells().size(); ++c) {
    if (!region.cells()[c]) continue;
    Point centre = region.cell_lo(c);
    for (int k = 0; k < dim; ++k) centre[k] += 0.5 * h;
    if (!dom.contains(centre))
      throw PreconditionError("hypograph_margin: region is not inside the domain");
  }

  const auto [blo, bhi] = region.bounds();
  // Nodes of the grid lattice, extended past the box, near the inflated region.
  const auto feasible = [&](double a) {
    std::array<int, kMaxDim> lo{}, hi{};
    for (int k = 0; k < dim; ++k) {
      lo[k] = static_cast<int>(std::floor((blo[k] - a - spec.lo()[k]) / h)) - 1;
      hi[k] = static_cast<int>(std::ceil((bhi[k] + a - spec.lo()[k]) / h)) + 1;
    }
    std::array<int, kMaxDim> idx = lo;
    while (true) {
      Point p{};
      for (int k = 0; k < dim; ++k) p[k] = spec.lo()[k] + idx[k] * h;
      if (norm(p, dim) < R && region.contains(p, a) && !dom.contains(p)) return false;
      int k = dim - 1;
      while (k >= 0 && ++idx[k] > hi[k]) {
        idx[k] = lo[k];
        --k;
      }
      if (k < 0) return true;
    }
  };

  if (!feasible(0.0)) return 0.0;
  if (feasible(R)) return R;
  double lo = 0.0;
  double hi = R;
  while (hi - lo > 1e-6 * h) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace musielak
