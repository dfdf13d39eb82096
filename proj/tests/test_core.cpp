#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tatrev/core.hpp"
#include "tatrev/phantom.hpp"
#include "test_helpers.hpp"

using namespace tatrev;
using tatrev::testing::random_state;

namespace {

const Grid2D grid65 = Grid2D::make(65);

ScalarField unit_speed(const Grid2D& g) { return ScalarField::constant(g, 1.0); }

// ∫∫ |∇φ_{1,0}|² over [-1,1]² by a fine midpoint rule on the analytic
// gradient, independent of the difference stencils.
double phi10_gradient_integral_oracle(int samples) {
  const double h = 2.0 / samples;
  double sum = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = -1 + (i + 0.5) * h;
    const double d = -std::numbers::pi / 2 * std::sin(std::numbers::pi * (x + 1) / 2);
    sum += d * d * h;
  }
  return sum * 2.0;  // y-extent of the square
}

}  // namespace

TEST_CASE("grid geometry") {
  const Grid2D g = Grid2D::make(257);
  CHECK(g.dx == 2.0 / 257);
  CHECK(g.dt == 0.5 * g.dx);
  CHECK(g.coord(0) == doctest::Approx(-1 + g.dx / 2));
  CHECK(g.coord(128) == doctest::Approx(0.0));
  CHECK(g.boundary_count() == 4 * 257 - 4);
  CHECK(g.steps_for(5.0) == 1285);
  CHECK_THROWS_AS(g.steps_for(1.6), ConfigError);
  const Grid2D s = g.snapped_to(1.6);
  CHECK(s.dt <= g.dt);
  CHECK(s.steps_for(1.6) == 412);
  CHECK_THROWS_AS(Grid2D::make(2), ConfigError);
}

TEST_CASE("energy of the zero state is zero") {
  CHECK(energy(StatePair::zero(grid65), unit_speed(grid65)) == 0.0);
  CHECK(seminorm(StatePair::zero(grid65), unit_speed(grid65)) == 0.0);
  CHECK(full_norm(StatePair::zero(grid65), unit_speed(grid65)) == 0.0);
}

TEST_CASE("energy of a linear ramp equals the area") {
  for (int n : {17, 65, 257}) {
    const Grid2D g = Grid2D::make(n);
    const StatePair s(ScalarField::from_function(g, [](double x, double) { return x; }), ScalarField(g));
    CHECK(std::abs(energy(s, unit_speed(g)) - 4.0) < 1e-10);
    CHECK(std::abs(seminorm(s, unit_speed(g)) - 2.0) < 1e-10);
  }
}

TEST_CASE("energy quadrature converges at second order") {
  const double exact = phi10_gradient_integral_oracle(4097);
  CHECK(exact == doctest::Approx(std::numbers::pi * std::numbers::pi / 2).epsilon(1e-6));

  std::vector<double> errors;
  for (int n : {65, 129, 257}) {
    const Grid2D g = Grid2D::make(n);
    const StatePair s(ScalarField::from_function(g, [](double x, double) { return std::cos(std::numbers::pi * (x + 1) / 2); }),
                      ScalarField(g));
    errors.push_back(std::abs(energy(s, unit_speed(g)) - exact));
  }
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double ratio = errors[i - 1] / errors[i];
    CAPTURE(ratio);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
  CHECK(errors.back() / exact < 1e-4);
}

TEST_CASE("kinetic term divides by the sound speed") {
  const StatePair s(ScalarField(grid65), ScalarField::constant(grid65, 2.0));
  CHECK(energy(s, unit_speed(grid65)) == doctest::Approx(16.0));
  CHECK(energy(s, ScalarField::constant(grid65, 2.0)) == doctest::Approx(4.0));
}

TEST_CASE("full norm of a constant") {
  const StatePair s(ScalarField::constant(grid65, 1.0), ScalarField(grid65));
  CHECK(std::abs(full_norm(s, unit_speed(grid65)) - 2.0) < 1e-12);
}

TEST_CASE("norm identities over random states") {
  const ScalarField c = unit_speed(grid65);
  for (int i = 0; i < 100; ++i) {
    const StatePair s = random_state(grid65, i);
    const double semi = seminorm(s, c);
    const double full = full_norm(s, c);
    CHECK(semi <= full);
    const double lhs = full * full;
    const double rhs = semi * semi + l2_norm_squared(s.first);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
  }
}

TEST_CASE("energy argument checks") {
  const Grid2D other = Grid2D::make(33);
  CHECK_THROWS_AS(energy(StatePair::zero(grid65), unit_speed(other)), GridMismatchError);
  ScalarField c = unit_speed(grid65);
  c(3, 4) = 0.0;
  CHECK_THROWS_AS(energy(StatePair::zero(grid65), c), ConfigError);
}

TEST_CASE("boundary mean") {
  CHECK(boundary_mean(ScalarField::constant(grid65, 3.0)) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(std::abs(boundary_mean(ScalarField::from_function(grid65, [](double x, double) { return x; }))) < 1e-15);

  SUBCASE("matches a side-by-side midpoint sum") {
    const Grid2D g = Grid2D::make(257);
    ScalarField h = render_phantom(six_inclusion_phantom(), g);
    h += ScalarField::from_function(g, [](double x, double y) { return 0.3 * x * x + 0.1 * y + 0.05 * x * y; });
    double oracle = 0;
    for (int i = 0; i < g.n; ++i) {
      oracle += h(i, 0) * g.dx;        // bottom
      oracle += h(g.n - 1, i) * g.dx;  // right
      oracle += h(i, g.n - 1) * g.dx;  // top
      oracle += h(0, i) * g.dx;        // left
    }
    oracle /= 8.0;
    CHECK(std::abs(boundary_mean(h) - oracle) < 1e-12);
  }
}

TEST_CASE("projectors") {
  const ScalarField c = unit_speed(grid65);

  SUBCASE("states already in H0 are fixed") {
    StatePair s = random_state(grid65, 7);
    s.first.values() -= boundary_mean(s.first);
    const StatePair p = project_H0(s);
    CHECK((p.first.values() - s.first.values()).abs().maxCoeff() < 1e-15);
    CHECK((p.second.values() == s.second.values()).all());
  }

  SUBCASE("constant shift") {
    const ScalarField u1 = tatrev::testing::random_smooth_field(grid65, 3);
    const StatePair p0 = project_H0(StatePair(ScalarField::constant(grid65, 5.0), u1));
    CHECK(p0.first.values().abs().maxCoeff() < 1e-14);
    CHECK((p0.second.values() == u1.values()).all());
    const StatePair p1 = project_H1(StatePair(ScalarField::constant(grid65, 5.0), u1));
    CHECK(p1.first.values().abs().maxCoeff() < 1e-14);
    CHECK((p1.second.values() == 0.0).all());
  }

  SUBCASE("H1 fixes (h0, 0) with zero boundary mean") {
    StatePair s(tatrev::testing::random_smooth_field(grid65, 11), ScalarField(grid65));
    s.first.values() -= boundary_mean(s.first);
    const StatePair p = project_H1(s);
    CHECK((p.first.values() - s.first.values()).abs().maxCoeff() < 1e-15);
  }

  SUBCASE("idempotence, zero mean and seminorm non-increase") {
    for (int i = 0; i < 100; ++i) {
      const StatePair s = random_state(grid65, 100 + i);
      for (Subspace sub : {Subspace::H0, Subspace::H1}) {
        const StatePair once = project(s, sub);
        const StatePair twice = project(once, sub);
        CHECK((twice.first.values() - once.first.values()).abs().maxCoeff() <= 1e-15);
        CHECK((twice.second.values() == once.second.values()).all());
        const double scale = std::max(1.0, s.first.values().abs().maxCoeff());
        CHECK(std::abs(boundary_mean(once.first)) <= 1e-12 * scale);
        CHECK(seminorm(once, c) <= seminorm(s, c) * (1 + 1e-14));
      }
    }
  }
}

TEST_CASE("relative L2 error") {
  const ScalarField f = ScalarField::constant(grid65, 2.0);
  CHECK(relative_l2_error(ScalarField::constant(grid65, 2.2), f) == doctest::Approx(0.1));
  CHECK_THROWS_AS(relative_l2_error(f, ScalarField(grid65)), Error);
}

TEST_CASE("scalar templating: single precision fields") {
  using FloatField = BasicField<float>;
  const FloatField u = FloatField::from_function(grid65, [](double x, double) { return float(x); });
  const BasicStatePair<float> s(u, FloatField(grid65));
  CHECK(energy(s, FloatField::constant(grid65, 1.0f)) == doctest::Approx(4.0f).epsilon(1e-5));
}
