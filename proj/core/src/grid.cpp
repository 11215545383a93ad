#include "musielak/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "musielak/error.hpp"

namespace musielak {

double HypographProfile::operator()(const Point& x, int dim) const {
  if (dim == 1) return level;
  return level + amplitude * std::sin(frequency * x[0]);
}

Domain Domain::hypograph(int dim, HypographProfile profile) {
  if (dim != 1 && dim != 2) throw ParameterError("Domain: dim must be 1 or 2");
  Domain d(Kind::Hypograph, dim);
  d.profile_ = profile;
  return d;
}

Domain Domain::box(int dim, const Point& lo, const Point& hi) {
  if (dim != 1 && dim != 2) throw ParameterError("Domain: dim must be 1 or 2");
  for (int k = 0; k < dim; ++k)
    if (!(lo[k] < hi[k])) throw ParameterError("Domain::box: lo must be < hi on every axis");
  Domain d(Kind::Box, dim);
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

Domain Domain::ball(int dim, const Point& center, double radius) {
  if (dim != 1 && dim != 2) throw ParameterError("Domain: dim must be 1 or 2");
  if (!(radius > 0.0)) throw ParameterError("Domain::ball: radius must be > 0");
  Domain d(Kind::Ball, dim);
  d.lo_ = center;
  d.radius_ = radius;
  return d;
}

Domain Domain::full_space(int dim) {
  if (dim != 1 && dim != 2) throw ParameterError("Domain: dim must be 1 or 2");
  return Domain(Kind::FullSpace, dim);
}

bool Domain::contains(const Point& x) const {
  switch (kind_) {
    case Kind::Hypograph: return x[dim_ - 1] < profile_(x, dim_);
    case Kind::Box:
      for (int k = 0; k < dim_; ++k)
        if (!(lo_[k] < x[k] && x[k] < hi_[k])) return false;
      return true;
    case Kind::Ball: return distance(x, lo_, dim_) < radius_;
    case Kind::FullSpace: return true;
  }
  return false;
}

std::string to_string(Domain::Kind kind) {
  switch (kind) {
    case Domain::Kind::Hypograph: return "hypograph";
    case Domain::Kind::Box: return "box";
    case Domain::Kind::Ball: return "ball";
    case Domain::Kind::FullSpace: return "full_space";
  }
  return "unknown";
}

GridSpec::GridSpec(int dim, const Point& lo, const Point& hi, int n_per_axis)
    : dim_(dim), lo_(lo), hi_(hi), n_(n_per_axis) {
  if (dim != 1 && dim != 2) throw ParameterError("GridSpec: dim must be 1 or 2");
  if (n_per_axis < 2) throw ParameterError("GridSpec: n_per_axis must be >= 2");
  for (int k = dim; k < kMaxDim; ++k) lo_[k] = hi_[k] = 0.0;
  h_ = (hi[0] - lo[0]) / (n_per_axis - 1);
  for (int k = 0; k < dim; ++k) {
    if (!(lo[k] < hi[k]) || !std::isfinite(lo[k]) || !std::isfinite(hi[k]))
      throw ParameterError("GridSpec: box must satisfy lo < hi");
    const double hk = (hi[k] - lo[k]) / (n_per_axis - 1);
    if (std::abs(hk - h_) > 1e-12 * h_)
      throw ParameterError("GridSpec: spacing must be equal on every axis");
  }
}

std::size_t GridSpec::node_count() const {
  std::size_t c = 1;
  for (int k = 0; k < dim_; ++k) c *= static_cast<std::size_t>(n_);
  return c;
}

std::size_t GridSpec::cell_count() const {
  std::size_t c = 1;
  for (int k = 0; k < dim_; ++k) c *= static_cast<std::size_t>(n_ - 1);
  return c;
}

Point GridSpec::node(const std::array<int, kMaxDim>& idx) const {
  Point p{};
  for (int k = 0; k < dim_; ++k) p[k] = lo_[k] + idx[k] * h_;
  return p;
}

Point GridSpec::node(std::size_t flat) const { return node(unflatten(flat)); }

std::array<int, kMaxDim> GridSpec::unflatten(std::size_t flat) const {
  std::array<int, kMaxDim> idx{};
  for (int k = dim_ - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(flat % n_);
    flat /= n_;
  }
  return idx;
}

std::size_t GridSpec::flatten(const std::array<int, kMaxDim>& idx) const {
  std::size_t flat = 0;
  for (int k = 0; k < dim_; ++k) flat = flat * n_ + idx[k];
  return flat;
}

bool GridSpec::on_boundary(std::size_t flat) const {
  const auto idx = unflatten(flat);
  for (int k = 0; k < dim_; ++k)
    if (idx[k] == 0 || idx[k] == n_ - 1) return true;
  return false;
}

GridSpec GridSpec::coarsened(int stride) const {
  if (stride < 1 || (n_ - 1) % stride != 0)
    throw ResolutionError("GridSpec::coarsened: stride must divide n - 1");
  return GridSpec(dim_, lo_, hi_, (n_ - 1) / stride + 1);
}

ClosedForm ClosedForm::zero(int dim) {
  // An empty support box (lo > hi) fits inside every grid.
  return {"zero", dim, [](const Point&) { return 0.0; }, std::pair{Point{1, 1}, Point{0, 0}}};
}

ClosedForm ClosedForm::tent(const Point& center, double half_width, double height, int dim) {
  if (!(half_width > 0.0)) throw ParameterError("tent: half_width must be > 0");
  Point lo{}, hi{};
  for (int k = 0; k < dim; ++k) {
    lo[k] = center[k] - half_width;
    hi[k] = center[k] + half_width;
  }
  return {"tent", dim,
          [=](const Point& x) {
            return height * std::max(0.0, 1.0 - distance(x, center, dim) / half_width);
          },
          std::pair{lo, hi}};
}

ClosedForm ClosedForm::bump(const Point& center, double radius, double height, int dim) {
  if (!(radius > 0.0)) throw ParameterError("bump: radius must be > 0");
  Point lo{}, hi{};
  for (int k = 0; k < dim; ++k) {
    lo[k] = center[k] - radius;
    hi[k] = center[k] + radius;
  }
  return {"bump", dim,
          [=](const Point& x) {
            const double d = distance(x, center, dim) / radius;
            if (d >= 1.0) return 0.0;
            return height * std::exp(-1.0 / (1.0 - d * d));
          },
          std::pair{lo, hi}};
}

ClosedForm ClosedForm::windowed_constant(const Point& lo, const Point& hi, double value,
                                         int dim) {
  return {"windowed_constant", dim,
          [=](const Point& x) {
            for (int k = 0; k < dim; ++k)
              if (!(lo[k] <= x[k] && x[k] < hi[k])) return 0.0;
            return value;
          },
          std::pair{lo, hi}};
}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values, bool zero_outside)
    : spec_(std::move(spec)), values_(std::move(values)), zero_outside_(zero_outside) {
  if (values_.size() != spec_.node_count())
    throw ParameterError("GridFunction: value count does not match the grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("GridFunction: values must be finite");
  if (zero_outside_) {
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] != 0.0 && spec_.on_boundary(i))
        throw PreconditionError("GridFunction: zero_outside requires zero boundary nodes");
  }
}

GridFunction GridFunction::zeros(const GridSpec& spec) {
  return GridFunction(spec, std::vector<double>(spec.node_count(), 0.0), true);
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction GridFunction::coarsened(int stride) const {
  const GridSpec coarse = spec_.coarsened(stride);
  std::vector<double> out(coarse.node_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto idx = coarse.unflatten(i);
    for (int k = 0; k < spec_.dim(); ++k) idx[k] *= stride;
    out[i] = values_[spec_.flatten(idx)];
  }
  return GridFunction(coarse, std::move(out), zero_outside_);
}

namespace {

template <class Op>
GridFunction combine(const GridFunction& a, const GridFunction& b, Op op, bool zero_outside) {
  if (!(a.spec() == b.spec())) throw ParameterError("GridFunction: grids differ");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return GridFunction(a.spec(), std::move(out), zero_outside);
}

}  // namespace

GridFunction GridFunction::operator-(const GridFunction& other) const {
  return combine(*this, other, std::minus<>{}, zero_outside_ && other.zero_outside_);
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
  return combine(*this, other, std::plus<>{}, zero_outside_ && other.zero_outside_);
}

GridFunction GridFunction::operator*(const GridFunction& other) const {
  return combine(*this, other, std::multiplies<>{}, zero_outside_ || other.zero_outside_);
}

GridFunction GridFunction::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return GridFunction(spec_, std::move(out), zero_outside_);
}

Region::Region(GridSpec spec, std::vector<std::uint8_t> cells, double r)
    : spec_(std::move(spec)), cells_(std::move(cells)), r_(r) {
  if (cells_.size() != spec_.cell_count())
    throw ParameterError("Region: cell mask does not match the grid");
  if (!(r >= 0.0)) throw ParameterError("Region: inflation radius must be >= 0");
}

bool Region::empty() const {
  return std::none_of(cells_.begin(), cells_.end(), [](std::uint8_t c) { return c != 0; });
}

std::size_t Region::cell_count() const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(),
                                                [](std::uint8_t c) { return c != 0; }));
}

std::size_t Region::cell_index(const std::array<int, kMaxDim>& idx) const {
  std::size_t flat = 0;
  for (int k = 0; k < spec_.dim(); ++k) flat = flat * (spec_.n() - 1) + idx[k];
  return flat;
}

Point Region::cell_lo(std::size_t flat) const {
  std::array<int, kMaxDim> idx{};
  const int m = spec_.n() - 1;
  for (int k = spec_.dim() - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(flat % m);
    flat /= m;
  }
  return spec_.node(idx);
}

namespace {

double cell_distance(const Point& p, const Point& lo, double h, int dim) {
  double acc = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = std::max({lo[k] - p[k], 0.0, p[k] - (lo[k] + h)});
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

double Region::distance_to_cells(const Point& p) const {
  const int dim = spec_.dim();
  const double h = spec_.h();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cells_.size(); ++c)
    if (cells_[c]) best = std::min(best, cell_distance(p, cell_lo(c), h, dim));
  return best;
}

bool Region::contains(const Point& p, double extra) const {
  const int dim = spec_.dim();
  const double h = spec_.h();
  const int m = spec_.n() - 1;
  const double reach = r_ + extra + 1e-9 * h;
  // Only cells within `reach` of p can matter; scan that index window.
  std::array<int, kMaxDim> lo{}, hi{};
  for (int k = 0; k < dim; ++k) {
    const double a = (p[k] - reach - spec_.lo()[k]) / h;
    const double b = (p[k] + reach - spec_.lo()[k]) / h;
    lo[k] = std::max(0, static_cast<int>(std::floor(a)) - 1);
    hi[k] = std::min(m - 1, static_cast<int>(std::floor(b)) + 1);
    if (lo[k] > hi[k]) return false;
  }
  std::array<int, kMaxDim> idx = lo;
  while (true) {
    const std::size_t c = cell_index(idx);
    if (cells_[c] && cell_distance(p, spec_.node(idx), h, dim) <= reach) return true;
    int k = dim - 1;
    while (k >= 0 && ++idx[k] > hi[k]) {
      idx[k] = lo[k];
      --k;
    }
    if (k < 0) return false;
  }
}

std::pair<Point, Point> Region::bounds() const {
  const int dim = spec_.dim();
  Point lo{}, hi{};
  for (int k = 0; k < dim; ++k) {
    lo[k] = std::numeric_limits<double>::infinity();
    hi[k] = -std::numeric_limits<double>::infinity();
  }
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (!cells_[c]) continue;
    const Point a = cell_lo(c);
    for (int k = 0; k < dim; ++k) {
      lo[k] = std::min(lo[k], a[k] - r_);
      hi[k] = std::max(hi[k], a[k] + spec_.h() + r_);
    }
  }
  return {lo, hi};
}

std::vector<Point> Region::probe_points() const {
  const int dim = spec_.dim();
  const double h = spec_.h();
  constexpr int kSub = 4;
  std::vector<Point> out;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (!cells_[c]) continue;
    const Point a = cell_lo(c);
    std::array<int, kMaxDim> s{};
    while (true) {
      Point q{};
      for (int k = 0; k < dim; ++k) q[k] = a[k] + h * s[k] / kSub;
      out.push_back(q);
      if (r_ > 0.0) {
        for (int k = 0; k < dim; ++k) {
          Point lo = q, hi = q;
          lo[k] -= r_;
          hi[k] += r_;
          out.push_back(lo);
          out.push_back(hi);
        }
        if (dim == 2) {
          const double d = r_ / std::sqrt(2.0);
          for (int sx = -1; sx <= 1; sx += 2)
            for (int sy = -1; sy <= 1; sy += 2) out.push_back({q[0] + sx * d, q[1] + sy * d});
        }
      }
      int k = dim - 1;
      while (k >= 0 && ++s[k] > kSub) {
        s[k] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
  return out;
}

bool Region::subset_of(const Region& outer) const {
  for (const Point& p : probe_points())
    if (!outer.contains(p)) return false;
  return true;
}

bool Region::inside_ball(double R) const {
  const int dim = spec_.dim();
  const double h = spec_.h();
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (!cells_[c]) continue;
    const Point a = cell_lo(c);
    double far = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double m = std::max(std::abs(a[k]), std::abs(a[k] + h));
      far += m * m;
    }
    if (!(std::sqrt(far) + r_ < R)) return false;
  }
  return true;
}

GridFunction sample(const ClosedForm& expr, const GridSpec& spec) {
  if (expr.dim != spec.dim()) throw ParameterError("sample: dimension mismatch");
  std::vector<double> values(spec.node_count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = expr.eval(spec.node(i));
    if (!std::isfinite(v))
      throw SamplingError("sample: '" + expr.name + "' is not finite at node " +
                              std::to_string(i),
                          i);
    values[i] = v;
  }
  bool inside = false;
  if (expr.support) {
    const auto& [lo, hi] = *expr.support;
    bool empty = false;
    inside = true;
    for (int k = 0; k < spec.dim(); ++k) {
      if (lo[k] > hi[k]) empty = true;
      if (!(spec.lo()[k] <= lo[k] && hi[k] <= spec.hi()[k])) inside = false;
    }
    inside = inside || empty;
    for (std::size_t i = 0; inside && i < values.size(); ++i)
      if (values[i] != 0.0 && spec.on_boundary(i)) inside = false;
  }
  return GridFunction(spec, std::move(values), inside);
}

Region support(const GridFunction& gf, double threshold) {
  if (!(threshold >= 0.0)) throw ParameterError("support: threshold must be >= 0");
  const GridSpec& spec = gf.spec();
  const int dim = spec.dim();
  const int m = spec.n() - 1;
  std::vector<std::uint8_t> cells(spec.cell_count(), 0);
  for (std::size_t i = 0; i < gf.size(); ++i) {
    if (!(std::abs(gf[i]) > threshold)) continue;
    const auto idx = spec.unflatten(i);
    // Mark every cell having this node as a corner.
    for (int mask = 0; mask < (1 << dim); ++mask) {
      std::array<int, kMaxDim> c{};
      bool ok = true;
      for (int k = 0; k < dim; ++k) {
        c[k] = idx[k] - ((mask >> k) & 1);
        if (c[k] < 0 || c[k] >= m) ok = false;
      }
      if (!ok) continue;
      std::size_t flat = 0;
      for (int k = 0; k < dim; ++k) flat = flat * m + c[k];
      cells[flat] = 1;
    }
  }
  return Region(spec, std::move(cells), 0.0);
}

bool vanishes_outside(const GridFunction& gf, const Domain& dom, double tol) {
  if (dom.dim() != gf.spec().dim()) throw ParameterError("vanishes_outside: dimension mismatch");
  for (std::size_t i = 0; i < gf.size(); ++i)
    if (std::abs(gf[i]) > tol && !dom.contains(gf.spec().node(i))) return false;
  return true;
}

GridFunction clamp(const GridFunction& gf, double n) {
  if (!(n > 0.0)) throw ParameterError("clamp: n must be > 0");
  std::vector<double> out(gf.values());
  for (double& v : out) v = std::clamp(v, -n, n);
  return GridFunction(gf.spec(), std::move(out), gf.zero_outside());
}

void require_truncation_margin(const GridFunction& u, double margin) {
  const GridSpec& spec = u.spec();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0.0) continue;
    const Point x = spec.node(i);
    for (int k = 0; k < spec.dim(); ++k) {
      if (x[k] - spec.lo()[k] < margin || spec.hi()[k] - x[k] < margin)
        throw DomainError("truncation box too small: support must stay " +
                          std::to_string(margin) + " away from the box edge");
    }
  }
}

}  // namespace musielak
