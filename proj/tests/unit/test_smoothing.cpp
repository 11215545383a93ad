#include <doctest.h>

#include <cmath>
#include <vector>

#include "musielak/error.hpp"
#include "musielak/smoothing.hpp"
#include "oracles.hpp"

using namespace musielak;
using musielak::testing::Gen;

namespace {

const GridSpec kLine(1, {-6.0}, {2.0}, 257);  // h = 1/32
const Domain kHalfLine = Domain::hypograph(1);

GridFunction tent_at(double c, const GridSpec& g = kLine) {
  return sample(ClosedForm::tent({c}, 1.0), g);
}

}  // namespace

TEST_CASE("translate") {
  const GridFunction u = tent_at(-2.0);
  const Domain everywhere = Domain::full_space(1);

  SUBCASE("zero shift is the identity") {
    CHECK(translate(u, {0.0}, everywhere).values() == u.values());
    CHECK(translate(u, {0.0}, kHalfLine).values() == u.values());
  }
  SUBCASE("shift by half moves the tent left") {
    const GridFunction v = translate(u, {0.5}, kHalfLine);
    CHECK(v.values() == tent_at(-2.5).values());
    const auto [lo, hi] = support(v).bounds();
    CHECK(lo[0] == doctest::Approx(-3.5));
    CHECK(hi[0] == doctest::Approx(-1.5));
  }
  SUBCASE("nodes outside the domain are zero") {
    const GridFunction ones(kLine, std::vector<double>(kLine.node_count(), 1.0), false);
    const GridFunction v = translate(ones, {0.25}, kHalfLine);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double x = kLine.node(i)[0];
      if (x >= 0.0 || x + 0.25 >= 0.0 || x + 0.25 > 2.0) {
        CHECK(v[i] == 0.0);
      } else {
        CHECK(v[i] == 1.0);
      }
    }
  }
  SUBCASE("misaligned shift") {
    CHECK_THROWS_AS(translate(u, {0.01}, kHalfLine), AlignmentError);
    CHECK_THROWS_AS(translate(u, {0.0}, Domain::full_space(2)), ParameterError);
  }
  SUBCASE("random shifts compose") {
    Gen gen(51);
    for (int trial = 0; trial < 30; ++trial) {
      const double a = gen.integer(-8, 8) * kLine.h();
      const double b = gen.integer(-8, 8) * kLine.h();
      const GridFunction w = gen.function(kLine);
      const GridFunction ab = translate(translate(w, {a}, everywhere), {b}, everywhere);
      const GridFunction direct = translate(w, {a + b}, everywhere);
      // Composition drops values that pass outside the box on the way.
      for (std::size_t i = 0; i < w.size(); ++i)
        if (ab[i] != 0.0) CHECK(ab[i] == direct[i]);
    }
  }
}

TEST_CASE("smooth step") {
  CHECK(smooth_step(-1.0) == 1.0);
  CHECK(smooth_step(0.0) == 1.0);
  CHECK(smooth_step(1.0) == 0.0);
  CHECK(smooth_step(5.0) == 0.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  double prev = 1.0;
  for (int k = 1; k < 1000; ++k) {
    const double t = k / 1000.0;
    const double v = smooth_step(t);
    CHECK(v <= prev);
    CHECK(v + smooth_step(1.0 - t) == doctest::Approx(1.0).epsilon(1e-14));
    prev = v;
  }
  // The profile e^{-1/(1-t)} / (e^{-1/(1-t)} + e^{-1/t}) has slope 2 at t = 1/2.
  CHECK(cutoff_slope_constant() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("cutoff functions") {
  const GridSpec g(1, {-8.0}, {8.0}, 1025);
  for (int j = 1; j <= 6; ++j) {
    const GridFunction t = cutoff(j, g);
    double slope = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double r = std::abs(g.node(i)[0]);
      if (r <= j) CHECK(t[i] == 1.0);
      if (r >= j + 1) CHECK(t[i] == 0.0);
      CHECK(t[i] >= 0.0);
      CHECK(t[i] <= 1.0);
      if (i > 0) slope = std::max(slope, std::abs(t[i] - t[i - 1]) / g.h());
    }
    // Discrete slope is j-independent and below the continuum bound.
    CHECK(slope <= cutoff_slope_constant() * (1.0 + 1e-9));
    CHECK(slope == doctest::Approx(cutoff_slope_constant()).epsilon(0.01));
  }
  CHECK_THROWS_AS(cutoff(8, g), DomainError);
  CHECK_THROWS_AS(cutoff(0, g), ParameterError);

  const GridSpec plane(2, {-3.0, -3.0}, {3.0, 3.0}, 61);
  const GridFunction t2 = cutoff(1, plane);
  for (std::size_t i = 0; i < t2.size(); ++i)
    CHECK(t2[i] == smooth_step(norm(plane.node(i), 2) - 1.0));
}

TEST_CASE("mollify") {
  SUBCASE("constant interior is preserved") {
    const GridFunction w = sample(ClosedForm::windowed_constant({-4.0}, {0.0}, 2.0), kLine);
    const GridFunction m = mollify(w, 0.25);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double x = kLine.node(i)[0];
      if (x > -3.7 && x < -0.3) CHECK(m[i] == doctest::Approx(2.0).epsilon(1e-14));
    }
  }
  SUBCASE("support grows by at most epsilon") {
    const GridFunction m = mollify(tent_at(-2.0), 0.5);
    const auto [lo, hi] = support(m).bounds();
    CHECK(lo[0] >= -3.5);
    CHECK(hi[0] <= -0.5);
    CHECK(m.zero_outside());
  }
  SUBCASE("matches direct summation") {
    Gen gen(53);
    for (int trial = 0; trial < 10; ++trial) {
      const GridFunction u = gen.function(kLine);
      const double eps = gen.uniform(2.0, 8.0) * kLine.h();
      try {
        const GridFunction m = mollify(u, eps);
        CHECK(m.values() == testing::direct_mollify(u, eps));
      } catch (const DomainError&) {
        // Random support too close to the box edge for this radius.
      }
    }
    const GridSpec plane(2, {-2.0, -2.0}, {2.0, 2.0}, 41);
    const GridFunction b = sample(ClosedForm::bump({0.2, -0.3}, 1.0, 1.0, 2), plane);
    CHECK(mollify(b, 0.3).values() == testing::direct_mollify(b, 0.3));
  }
  SUBCASE("mass is conserved") {
    const GridFunction u = tent_at(-2.0);
    const GridFunction m = mollify(u, 0.4);
    CHECK(testing::serial_sum(m.values()) ==
          doctest::Approx(testing::serial_sum(u.values())).epsilon(1e-12));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(mollify(tent_at(-2.0), 1.5 * kLine.h()), ResolutionError);
    CHECK_THROWS_AS(mollify(tent_at(-4.8), 0.5), DomainError);
  }
}

TEST_CASE("inflate") {
  const Region r = support(tent_at(-2.0));
  const Region a = inflate(r, 0.5);
  CHECK(a.r() == 0.5);
  CHECK(a.cells() == r.cells());
  CHECK(inflate(a, 0.25).r() == 0.75);
  CHECK(r.subset_of(a));
  CHECK(a.contains({-3.4}));
  CHECK_FALSE(a.contains({-3.6}));
  CHECK_THROWS_AS(inflate(r, -1.0), ParameterError);
}

TEST_CASE("hypograph margin") {
  const Region r = support(tent_at(-2.0));
  const Domain shifted = Domain::hypograph(1, {0.5, 0.0, 1.0});
  CHECK(hypograph_margin(r, 10.0, shifted) == doctest::Approx(1.5).epsilon(1e-3));
  CHECK(hypograph_margin(r, 10.0, shifted) < 1.5);
  CHECK(hypograph_margin(r, 1.0, shifted) == 1.0);

  const Region touching = support(tent_at(-0.5));
  CHECK_THROWS_AS(hypograph_margin(touching, 10.0, kHalfLine), PreconditionError);
  const Region edge = support(sample(ClosedForm::windowed_constant({-1.0}, {0.0}, 1.0), kLine));
  CHECK(hypograph_margin(edge, 10.0, kHalfLine) == doctest::Approx(0.0).epsilon(1e-12));

  const Region empty = support(GridFunction::zeros(kLine));
  CHECK(hypograph_margin(empty, 3.0, kHalfLine) == 3.0);
  CHECK_THROWS_AS(hypograph_margin(r, 1.0, Domain::full_space(1)), ParameterError);

  const GridSpec plane(2, {-3.0, -3.0}, {3.0, 3.0}, 61);
  const Region blob = support(sample(ClosedForm::bump({0.0, -1.5}, 0.5, 1.0, 2), plane));
  const double m = hypograph_margin(blob, 10.0, Domain::hypograph(2));
  CHECK(m == doctest::Approx(1.0).epsilon(0.15));
  CHECK(hypograph_margin(inflate(blob, 0.5), 10.0, Domain::hypograph(2)) ==
        doctest::Approx(m - 0.5).epsilon(1e-6));
}
