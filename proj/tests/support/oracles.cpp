#include "oracles.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace musielak::testing {

namespace {

double tree(const double* v, std::size_t n) {
  if (n <= 8) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return tree(v, half) + tree(v + half, n - half);
}

}  // namespace

double tree_sum(const std::vector<double>& values) { return tree(values.data(), values.size()); }

double serial_sum(const std::vector<double>& values) {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc;
}

double brute_fractional(const GridFunction& u, double s,
                        const std::function<double(double, double)>& G) {
  const GridSpec& spec = u.spec();
  const int dim = spec.dim();
  const double h = spec.h();
  const double hv = dim == 1 ? h : h * h;
  const std::size_t m = spec.node_count();
  std::vector<double> rows(m), row;
  for (std::size_t i = 0; i < m; ++i) {
    row.clear();
    const auto a = spec.unflatten(i);
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const double du = std::abs(u[i] - u[j]);
      if (du == 0.0) {
        row.push_back(0.0);
        continue;
      }
      const auto b = spec.unflatten(j);
      const double d0 = std::abs(a[0] - b[0]) * h;
      const double d1 = dim == 2 ? std::abs(a[1] - b[1]) * h : 0.0;
      const double r = dim == 1 ? std::sqrt(d0 * d0) : std::sqrt(d0 * d0 + d1 * d1);
      const double kernel = dim == 1 ? r : r * r;
      row.push_back(G(r, du / std::pow(r, s)) * (hv * hv / kernel));
    }
    rows[i] = tree_sum(row);
  }
  return tree_sum(rows);
}

double brute_fractional(const GridFunction& u, double s, const NFunction& nf) {
  return brute_fractional(u, s, [&](double r, double t) { return nf.at_distance(r).G(t); });
}

double power_tail_1d(const GridFunction& u, double p, double s) {
  const GridSpec& spec = u.spec();
  const double h = spec.h();
  const double L = spec.lo()[0] - 0.5 * h;
  const double H = spec.hi()[0] + 0.5 * h;
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = spec.node(i)[0];
    acc += std::pow(std::abs(u[i]), p) *
           (std::pow(x - L, -s * p) + std::pow(H - x, -s * p)) / (s * p);
  }
  return 2.0 * h * acc;
}

double power_tail_2d(const GridFunction& u, double p, double s, int angles) {
  const GridSpec& spec = u.spec();
  const double h = spec.h();
  const double L0 = spec.lo()[0] - 0.5 * h, H0 = spec.hi()[0] + 0.5 * h;
  const double L1 = spec.lo()[1] - 0.5 * h, H1 = spec.hi()[1] + 0.5 * h;
  const double dth = 2.0 * std::numbers::pi / angles;
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0.0) continue;
    const Point x = spec.node(i);
    double ang = 0.0;
    for (int k = 0; k < angles; ++k) {
      const double th = (k + 0.5) * dth;
      const double cx = std::cos(th), cy = std::sin(th);
      const double tx = cx > 0 ? (H0 - x[0]) / cx : (L0 - x[0]) / cx;
      const double ty = cy > 0 ? (H1 - x[1]) / cy : (L1 - x[1]) / cy;
      ang += std::pow(std::min(tx, ty), -s * p) * dth;
    }
    acc += std::pow(std::abs(u[i]), p) * ang / (s * p);
  }
  return 2.0 * h * h * acc;
}

std::vector<double> direct_mollify(const GridFunction& u, double epsilon) {
  const GridSpec& spec = u.spec();
  const int dim = spec.dim();
  const int n = spec.n();
  const double h = spec.h();
  const int K = static_cast<int>(std::floor(epsilon / h));
  struct Tap {
    int a, b;
    double w;
  };
  std::vector<Tap> taps;
  double total = 0.0;
  for (int a = -K; a <= K; ++a)
    for (int b = dim == 2 ? -K : 0; b <= (dim == 2 ? K : 0); ++b) {
      const double za = a * h / epsilon, zb = b * h / epsilon;
      const double z2 = za * za + zb * zb;
      if (!(z2 < 1.0)) continue;
      const double w = std::exp(-1.0 / (1.0 - z2));
      if (w == 0.0) continue;
      taps.push_back({a, b, w});
      total += w;
    }
  for (Tap& t : taps) t.w /= total;
  std::vector<double> out(u.size(), 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto idx = spec.unflatten(i);
    double acc = 0.0;
    for (const Tap& t : taps) {
      const int p = idx[0] + t.a;
      const int q = dim == 2 ? idx[1] + t.b : 0;
      if (p < 0 || p >= n || q < 0 || q >= (dim == 2 ? n : 1)) continue;
      acc += t.w * u[dim == 2 ? static_cast<std::size_t>(p) * n + q : p];
    }
    out[i] = acc;
  }
  return out;
}

double legendre_power(double p, double tau) {
  return (p - 1.0) * std::pow(tau / p, p / (p - 1.0));
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-13);
}

double scalar_power_modular(const GridFunction& u, double p) {
  const double hv = std::pow(u.spec().h(), u.spec().dim());
  double acc = 0.0;
  for (double v : u.values()) acc += std::pow(std::abs(v), p) * hv;
  return acc;
}

double Gen::log_uniform(double a, double b) {
  return std::exp(uniform(std::log(a), std::log(b)));
}

Point Gen::point(int dim, double lo, double hi) {
  Point p{};
  for (int k = 0; k < dim; ++k) p[k] = uniform(lo, hi);
  return p;
}

NFunction Gen::nfunction(int dim) {
  switch (integer(0, 3)) {
    case 0: return NFunction::power(uniform(1.2, 4.0), dim);
    case 1: {
      const double amp = uniform(0.0, 0.6);
      return NFunction::variable_exponent({uniform(1.7 + amp, 3.5), amp, uniform(0.2, 3.0)}, dim);
    }
    case 2: return NFunction::orlicz(uniform(1.2, 3.0), log_uniform(0.1, 10.0), dim);
    default: {
      const double amp = uniform(0.0, 0.5);
      return NFunction::product({uniform(1.6 + amp, 3.0), amp, uniform(0.2, 3.0)},
                                log_uniform(0.1, 10.0), dim);
    }
  }
}

GridFunction Gen::function(const GridSpec& spec) {
  const int dim = spec.dim();
  double room = spec.hi()[0] - spec.lo()[0];
  const double width = uniform(0.15, 0.3) * room;
  Point c{};
  for (int k = 0; k < dim; ++k)
    c[k] = uniform(spec.lo()[k] + width + spec.h(), spec.hi()[k] - width - spec.h());
  const double height = uniform(-3.0, 3.0);
  switch (integer(0, 2)) {
    case 0: return sample(ClosedForm::tent(c, width, height, dim), spec);
    case 1: return sample(ClosedForm::bump(c, width, height, dim), spec);
    default: {
      Point lo{}, hi{};
      for (int k = 0; k < dim; ++k) {
        lo[k] = c[k] - width;
        hi[k] = c[k] + width;
      }
      return sample(ClosedForm::windowed_constant(lo, hi, height, dim), spec);
    }
  }
}

std::vector<GridFunction> corpus() {
  const GridSpec g1(1, {-5.0}, {5.0}, 129);
  const GridSpec g2(2, {-2.0, -2.0}, {2.0, 2.0}, 25);
  return {
      sample(ClosedForm::tent({-2.0}, 1.0), g1),
      sample(ClosedForm::tent({0.5}, 2.0, -0.3), g1),
      sample(ClosedForm::bump({1.0}, 1.5, 4.0), g1),
      sample(ClosedForm::windowed_constant({-1.0}, {1.5}, 2.0), g1),
      sample(ClosedForm::bump({0.0, 0.0}, 1.0, 1.0, 2), g2),
      sample(ClosedForm::tent({0.25, -0.25}, 1.0, 0.7, 2), g2),
  };
}

}  // namespace musielak::testing
