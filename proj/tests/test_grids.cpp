#include <doctest.h>

#include "qslice/grids.hpp"
#include "qslice/norms.hpp"
#include "qslice/random_fields.hpp"

using namespace qslice;

TEST_CASE("sphere rule basics") {
  const auto rule = build_sphere_rule<double>(16, 32);
  CHECK(rule.size() == 16 * 32);
  CHECK(std::abs(rule.weights.sum() - 1.0) < 1e-14);
  CHECK(rule.exact_degree == 31);

  // antipodal closure with equal weights
  for (Index m = 0; m < rule.size(); ++m) {
    const Index ma = rule.antipode(m);
    CHECK(rule.weights[m] == rule.weights[ma]);
    CHECK(std::abs(rule.node(m).x + rule.node(ma).x) < 1e-15);
    CHECK(std::abs(rule.node(m).z + rule.node(ma).z) < 1e-15);
  }
  CHECK_THROWS_AS(build_sphere_rule<double>(1, 32), std::invalid_argument);
  CHECK_THROWS_AS(build_sphere_rule<double>(8, 15), std::invalid_argument);
}

TEST_CASE("sphere rule integrates polynomials exactly") {
  const auto rule = build_sphere_rule<double>(16, 32);
  auto integrate = [&](auto&& f) {
    CompensatedSum<double> acc;
    for (Index m = 0; m < rule.size(); ++m) acc.add(rule.weights[m] * f(rule.node(m)));
    return acc.value();
  };
  CHECK(std::abs(integrate([](auto) { return 1.0; }) - 1.0) < 1e-14);
  // linear terms vanish by symmetry
  CHECK(std::abs(integrate([](auto J) { return J.x; })) < 1e-13);
  CHECK(std::abs(integrate([](auto J) { return J.y; })) < 1e-13);
  CHECK(std::abs(integrate([](auto J) { return J.z; })) < 1e-13);
  // second moments: 1/3 each, cross terms 0
  CHECK(std::abs(integrate([](auto J) { return J.x * J.x; }) - 1.0 / 3) < 1e-13);
  CHECK(std::abs(integrate([](auto J) { return J.z * J.z; }) - 1.0 / 3) < 1e-13);
  CHECK(std::abs(integrate([](auto J) { return J.x * J.y; })) < 1e-13);
  // quartics: x^4 -> 1/5, x^2 y^2 -> 1/15
  CHECK(std::abs(integrate([](auto J) { return J.x * J.x * J.x * J.x; }) - 0.2) < 1e-13);
  CHECK(std::abs(integrate([](auto J) { return J.x * J.x * J.y * J.y; }) - 1.0 / 15) < 1e-13);
  // a Legendre polynomial within the exactness band integrates to zero
  auto legendre20 = [](double u) {
    double p0 = 1, p1 = u;
    for (int l = 2; l <= 20; ++l) {
      const double p = ((2 * l - 1) * u * p1 - (l - 1) * p0) / l;
      p0 = p1;
      p1 = p;
    }
    return p1;
  };
  CHECK(std::abs(integrate([&](auto J) { return legendre20(J.z); })) < 1e-12);
}

TEST_CASE("integrate_sphere spec values") {
  const auto rule = build_sphere_rule<double>(32, 64);
  const Quaterniond q0{0.3, -0.4, 0.5, 0.7};
  const auto c = integrate_sphere([&](const ImaginaryUnitd&) { return q0; }, rule);
  CHECK((c - q0).norm() < 1e-15);

  const auto mean_axis =
      integrate_sphere([](const ImaginaryUnitd& J) { return J.as_quaternion(); }, rule);
  CHECK(mean_axis.norm() < 1e-14);

  const auto first_sq = integrate_sphere(
      [](const ImaginaryUnitd& J) { return Quaterniond{J.x * J.x, 0, 0, 0}; }, rule);
  CHECK(std::abs(first_sq.w - 1.0 / 3) < 1e-10);

  // |1 - iJ|^2 = 2 + 2<i, J>, sphere mean 2
  const Quaterniond qi{0, 1, 0, 0};
  const auto sq = integrate_sphere(
      [&](const ImaginaryUnitd& J) {
        const double v = (Quaterniond::one() - qi * J.as_quaternion()).squared_norm();
        return Quaterniond{v, 0, 0, 0};
      },
      rule);
  CHECK(std::abs(sq.w - 2.0) < 1e-10);
}

TEST_CASE("moment 4/3 with the product rule at n_polar 64") {
  const auto rule = build_sphere_rule<double>(64, 128);
  const double v = sphere_moment_product_rule(1.0, rule, ImaginaryUnitd(1, 0, 0));
  CHECK(std::abs(v - 4.0 / 3) < 1e-6);
}

TEST_CASE("product-rule moment estimates converge monotonically") {
  const ImaginaryUnitd I(1, 0, 0);
  double prev = 1e300;
  for (int n : {16, 32, 64}) {
    const auto rule = build_sphere_rule<double>(n, 2 * n);
    const double err = std::abs(sphere_moment_product_rule(1.0, rule, I) - 4.0 / 3);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("circle grid") {
  const auto circle = build_circle_grid<double>(32);
  CHECK(circle.angle(0) == 0.0);
  CHECK(circle.reflect(0) == 0);
  CHECK(circle.reflect(5) == 27);
  CHECK_THROWS_AS(build_circle_grid<double>(2), std::invalid_argument);
  CHECK_THROWS_AS(build_circle_grid<double>(7), std::invalid_argument);

  // (1/2pi) int e^{int} dt: 1 at n=0, 0 for 0 < |n| < N/2
  for (int n = 0; n < 16; ++n) {
    CompensatedSum<double> re, im;
    for (Index k = 0; k < 32; ++k) {
      re.add(std::cos(n * circle.angle(k)) / 32);
      im.add(std::sin(n * circle.angle(k)) / 32);
    }
    CHECK(std::abs(re.value() - (n == 0 ? 1.0 : 0.0)) < 1e-14);
    CHECK(std::abs(im.value()) < 1e-14);
  }
  CompensatedSum<double> cos2;
  for (Index k = 0; k < 32; ++k) {
    const double c = std::cos(circle.angle(k));
    cos2.add(c * c / 32);
  }
  CHECK(std::abs(cos2.value() - 0.5) < 1e-14);

  CHECK(circle.locate(circle.angle(7)) == 7);
  CHECK_THROWS_AS(circle.locate(0.1), std::invalid_argument);
}

TEST_CASE("integrate_boundary") {
  auto grid = make_boundary_grid<double>(12, 24, 16);
  const Quaterniond q0{1, -2, 0.5, 0.25};
  auto phi = sample_function<double>(grid, [&](const ImaginaryUnitd&, double) { return q0; });
  CHECK((integrate_boundary(phi) - q0).norm() < 1e-14);

  auto cosphi =
      sample_function<double>(grid, [](const ImaginaryUnitd&, double t) {
        return Quaterniond{std::cos(t), 0, 0, 0};
      });
  CHECK(integrate_boundary(cosphi).norm() < 1e-15);

  auto cos2phi =
      sample_function<double>(grid, [](const ImaginaryUnitd&, double t) {
        const double c = std::cos(t);
        return Quaterniond{c * c, 0, 0, 0};
      });
  CHECK(std::abs(integrate_boundary(cos2phi).w - 0.5) < 1e-12);

  // right-H-linearity
  auto phi2 = random_well_defined(grid, 99);
  const Quaterniond c{0.2, -1.1, 0.4, 0.9};
  auto scaled = phi2;
  scaled.values = phi2.values.right_multiplied(c);
  CHECK((integrate_boundary(scaled) - integrate_boundary(phi2) * c).norm() < 1e-13);
}

TEST_CASE("validate_well_defined") {
  auto grid = make_boundary_grid<double>(10, 20, 16);

  // built from coordinates of q = e^{Jt}: exactly well defined
  auto good = sample_function<double>(grid, [](const ImaginaryUnitd& J, double t) {
    const Quaterniond q = exp_unit(J, t);
    return Quaterniond{q.x * q.y, q.w, q.z, q.w * q.x};
  });
  CHECK(validate_well_defined(good) == 0.0);

  // axis field J ignores t: defect |J - (-J)| = 2
  auto axis_field = sample_function<double>(
      grid, [](const ImaginaryUnitd& J, double) { return J.as_quaternion(); });
  CHECK(std::abs(validate_well_defined(axis_field) - 2.0) < 1e-12);

  // J sgn(sin t): well defined (sgn(0) = 0 at the real points)
  auto signed_axis = sample_function<double>(grid, [](const ImaginaryUnitd& J, double t) {
    const double s = std::sin(t);
    const double sgn = s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0);
    return J.as_quaternion() * sgn;
  });
  CHECK(validate_well_defined(signed_axis) < 1e-12);
}

TEST_CASE("random well-defined generator is well defined and band limited") {
  auto grid = make_boundary_grid<double>(8, 16, 16);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    auto phi = random_well_defined(grid, seed);
    CHECK(validate_well_defined(phi) < 1e-13);
  }
}
