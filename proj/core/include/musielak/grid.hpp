#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "musielak/geometry.hpp"

namespace musielak {

/// Profile of an axis-aligned hypograph {x_N < xi(x')}:
/// xi(x') = level + amplitude * sin(frequency * x'_1). For N = 1 xi is the
/// constant `level`.
struct HypographProfile {
  double level = 0.0;
  double amplitude = 0.0;
  double frequency = 1.0;

  double operator()(const Point& x, int dim) const;
};

class Domain {
 public:
  enum class Kind { Hypograph, Box, Ball, FullSpace };

  static Domain hypograph(int dim, HypographProfile profile = {});
  static Domain box(int dim, const Point& lo, const Point& hi);
  static Domain ball(int dim, const Point& center, double radius);
  static Domain full_space(int dim);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const HypographProfile& profile() const { return profile_; }
  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }
  const Point& center() const { return lo_; }
  double radius() const { return radius_; }

  /// Open-set membership; hypographs use the strict inequality x_N < xi(x').
  bool contains(const Point& x) const;

 private:
  Domain(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  int dim_;
  HypographProfile profile_{};
  Point lo_{};
  Point hi_{};
  double radius_ = 0.0;
};

std::string to_string(Domain::Kind kind);

/// Uniform Cartesian grid over a truncation box with equal spacing on every
/// axis. Flat node index is row-major with axis 0 slowest.
class GridSpec {
 public:
  GridSpec(int dim, const Point& lo, const Point& hi, int n_per_axis);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double h() const { return h_; }
  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }

  std::size_t node_count() const;
  std::size_t cell_count() const;

  Point node(std::size_t flat) const;
  Point node(const std::array<int, kMaxDim>& idx) const;
  std::array<int, kMaxDim> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<int, kMaxDim>& idx) const;
  bool on_boundary(std::size_t flat) const;

  /// Grid with every `stride`-th node along each axis (same box).
  GridSpec coarsened(int stride) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int dim_;
  Point lo_;
  Point hi_;
  int n_;
  double h_;
};

/// A closed-form function with an optional declared compact support box.
struct ClosedForm {
  std::string name;
  int dim = 1;
  std::function<double(const Point&)> eval;
  /// Axis-aligned box containing the support, when compactly supported.
  std::optional<std::pair<Point, Point>> support;

  static ClosedForm zero(int dim = 1);
  /// height * max(0, 1 - |x - center| / half_width).
  static ClosedForm tent(const Point& center, double half_width, double height = 1.0,
                         int dim = 1);
  /// height * exp(-1 / (1 - |x - center|^2 / radius^2)) inside the ball, 0 outside.
  static ClosedForm bump(const Point& center, double radius, double height = 1.0,
                         int dim = 1);
  /// value on the half-open box [lo, hi), 0 elsewhere.
  static ClosedForm windowed_constant(const Point& lo, const Point& hi, double value,
                                     int dim = 1);
};

/// Node samples of a function on a GridSpec.
class GridFunction {
 public:
  GridFunction(GridSpec spec, std::vector<double> values, bool zero_outside);
  static GridFunction zeros(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  bool zero_outside() const { return zero_outside_; }

  double max_abs() const;

  /// Sub-sampled copy (see GridSpec::coarsened).
  GridFunction coarsened(int stride) const;

  GridFunction operator-(const GridFunction& other) const;
  GridFunction operator+(const GridFunction& other) const;
  GridFunction operator*(const GridFunction& other) const;
  GridFunction scaled(double factor) const;

 private:
  GridSpec spec_;
  std::vector<double> values_;
  bool zero_outside_;
};

/// Outer approximation of a support: a union of closed grid cells, inflated by
/// a Minkowski margin r >= 0.
class Region {
 public:
  Region(GridSpec spec, std::vector<std::uint8_t> cells, double r);

  const GridSpec& spec() const { return spec_; }
  const std::vector<std::uint8_t>& cells() const { return cells_; }
  double r() const { return r_; }
  bool empty() const;
  std::size_t cell_count() const;

  /// Lower corner of cell `flat` in cell-index space (n-1 cells per axis).
  Point cell_lo(std::size_t flat) const;
  std::size_t cell_index(const std::array<int, kMaxDim>& idx) const;

  /// Distance from p to the union of cells (0 inside), ignoring r.
  double distance_to_cells(const Point& p) const;
  /// dist(p, cells) <= r + extra.
  bool contains(const Point& p, double extra = 0.0) const;

  /// Smallest axis box [lo, hi] covering the inflated region. Empty region
  /// yields lo > hi.
  std::pair<Point, Point> bounds() const;

  /// Outer-approximation containment: every cell of *this (inflated by its r)
  /// lies in `outer`, tested on the cell corners plus a 4-per-axis sub-lattice.
  bool subset_of(const Region& outer) const;
  /// Every point of the region lies in the open ball B_R(0).
  bool inside_ball(double R) const;

  /// Sample points used for containment tests (corners and sub-lattice of each
  /// cell, pushed outwards by r along the axes).
  std::vector<Point> probe_points() const;

 private:
  GridSpec spec_;
  std::vector<std::uint8_t> cells_;
  double r_;
};

GridFunction sample(const ClosedForm& expr, const GridSpec& spec);

/// Union of closed cells touching a node with |value| > threshold; r = 0.
Region support(const GridFunction& gf, double threshold = 0.0);

/// Every node outside `dom` has |value| <= tol.
bool vanishes_outside(const GridFunction& gf, const Domain& dom, double tol = 0.0);

/// Pointwise clamp to [-n, n].
GridFunction clamp(const GridFunction& gf, double n);

/// Throws DomainError unless the truncation box contains the support of u
/// inflated by `margin` (nodes within `margin` of the box edge must vanish).
void require_truncation_margin(const GridFunction& u, double margin);

}  // namespace musielak
