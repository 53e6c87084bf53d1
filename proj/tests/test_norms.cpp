#include <doctest.h>

#include "qslice/norms.hpp"
#include "qslice/random_fields.hpp"

using namespace qslice;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("lp norms") {
  auto grid = make_boundary_grid<double>(10, 20, 32);
  const Quaterniond q0{1, 2, -2, 0.5};
  const auto constant =
      sample_function<double>(grid, [&](const ImaginaryUnitd&, double) { return q0; });
  for (double p : {1.0, 2.0, 3.5, 7.0, kInf})
    CHECK(std::abs(lp_norm(constant, p) - q0.norm()) < 1e-12);

  const auto cosf = sample_function<double>(grid, [](const ImaginaryUnitd&, double t) {
    return Quaterniond{std::cos(t), 0, 0, 0};
  });
  CHECK(std::abs(lp_norm(cosf, 2.0) - std::sqrt(0.5)) < 1e-13);

  // smooth positive function: p = 64 is within 5% of the sup norm
  const auto smooth = sample_function<double>(grid, [](const ImaginaryUnitd& J, double t) {
    return Quaterniond{2 + std::cos(t) + 0.5 * J.z * std::sin(t), 0, 0, 0};
  });
  const double sup = lp_norm(smooth, kInf);
  CHECK(std::abs(lp_norm(smooth, 64.0) - sup) < 0.05 * sup);

  CHECK_THROWS_AS((void)lp_norm(constant, 0.5), std::invalid_argument);
}

TEST_CASE("inner product") {
  auto grid = make_boundary_grid<double>(10, 20, 32);
  const auto one =
      sample_function<double>(grid, [](const ImaginaryUnitd&, double) { return Quaterniond::one(); });
  CHECK((inner_product(one, one) - Quaterniond::one()).norm() < 1e-13);

  // unit mode e^{It}: <f, f> = 1
  const auto mode = sample_function<double>(
      grid, [](const ImaginaryUnitd& J, double t) { return exp_unit(J, t); });
  const Quaterniond self = inner_product(mode, mode);
  CHECK((self - Quaterniond::one()).norm() < 1e-13);

  // right-linearity: <f j, g> = <f, g> j
  const auto f = random_well_defined(grid, 201);
  const auto g = random_well_defined(grid, 202);
  const Quaterniond qj{0, 0, 1, 0};
  auto fj = f;
  fj.values = f.values.right_multiplied(qj);
  CHECK((inner_product(fj, g) - inner_product(f, g) * qj).norm() < 1e-12);

  // <f, f> is real and equals the squared 2-norm
  const Quaterniond ff = inner_product(f, f);
  CHECK(ff.imag().norm() < 1e-12);
  const double n2 = lp_norm(f, 2.0);
  CHECK(std::abs(ff.w - n2 * n2) < 1e-11 * (1 + n2 * n2));

  auto small = make_boundary_grid<double>(6, 12, 8);
  const auto h = random_well_defined(small, 203);
  CHECK_THROWS_AS((void)inner_product(f, h), std::invalid_argument);
}

TEST_CASE("sphere moment closed form and quadrature") {
  CHECK(std::abs(sphere_moment(1.0) - 4.0 / 3) < 1e-15);
  CHECK(std::abs(sphere_moment(0.0) - 1.0) < 1e-15);
  CHECK(std::abs(sphere_moment(2.0) - 2.0) < 1e-15);

  auto rng = seeded_engine(211);
  for (double q : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 10; ++i) {
      const auto I = random_imaginary_unit<double>(rng);
      const double v = sphere_moment_quadrature(q, I, 48);
      CHECK(std::abs(v - sphere_moment(q)) < 1e-8);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi - lo < 1e-10);
  }
}

TEST_CASE("upper bound constant") {
  CHECK(std::abs(upper_bound_constant(kInf) - 4.0 / 3) < 1e-15);
  CHECK(std::abs(upper_bound_constant(2.0) - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(upper_bound_constant(4.0) - 1.363463240) < 1e-9);
  CHECK(std::abs(upper_bound_constant(1.0) - 4.0 / 3) < 1e-15);
  CHECK_THROWS_AS((void)upper_bound_constant(0.5), std::invalid_argument);

  // equals the conjugate moment^{1/q}, the Holder mechanism
  for (double p : {2.0, 2.5, 3.0, 4.0, 8.0}) {
    const double q = p / (p - 1);
    CHECK(std::abs(upper_bound_constant(p) - std::pow(sphere_moment(q), 1 / q)) < 1e-12);
    CHECK(std::abs(upper_bound_constant(q) - upper_bound_constant(p)) < 1e-12);
  }

  // continuity by sampling
  double prev = upper_bound_constant(2.0);
  for (double p = 2.05; p < 40.0; p *= 1.3) {
    const double v = upper_bound_constant(p);
    CHECK(std::abs(v - prev) < 0.2);
    prev = v;
  }
}

TEST_CASE("extremal function") {
  auto grid = make_boundary_grid<double>(16, 32, 32);
  const Index i0 = grid->sphere.nearest_node(ImaginaryUnitd(1, 0, 0));
  const auto I0 = grid->sphere.node(i0);
  const auto phistar = extremal_function(I0, grid);

  // unit modulus at every node, genuinely well defined on the boundary
  const ArrayXX<double> mod = phistar.values.modulus();
  CHECK(std::abs(mod.maxCoeff() - 1.0) < 1e-13);
  CHECK(std::abs(mod.minCoeff() - 1.0) < 1e-13);
  CHECK(validate_well_defined(phistar) < 1e-13);
}

TEST_CASE("projection of the extremal function attains 4/3 on its slice") {
  // evaluated at (I0, t) for t in (0, pi) the projection is the moment
  // integral of |1 - I0 J|; needs a finer rule for the 1e-6 tolerance
  auto grid = make_boundary_grid<double>(96, 192, 8);
  const Index i0 = grid->sphere.nearest_node(ImaginaryUnitd(1, 0, 0));
  const auto I0 = grid->sphere.node(i0);
  const auto phistar = extremal_function(I0, grid);
  const auto f = project_boundary(phistar);
  const Quaterniond v = f.evaluate(I0, 1);  // t = 2 pi / 8, inside (0, pi)
  CHECK(std::abs(v.w - 4.0 / 3) < 1e-6);
  CHECK(v.imag().norm() < 1e-6);
}

TEST_CASE("ratio") {
  auto grid = make_boundary_grid<double>(16, 32, 32);

  // slice functions are fixed points: ratio 1
  const auto f = random_slice_function(grid->circle, 221, 6);
  const auto slice = evaluate_on_grid(f, grid);
  CHECK(std::abs(ratio(slice, 2.0) - 1.0) < 1e-11);
  CHECK(std::abs(ratio(slice, 4.0) - 1.0) < 1e-11);

  // zero sphere moments kill the projection: phi = J_1 J_2 sin t
  const auto nullphi = sample_function<double>(grid, [](const ImaginaryUnitd& J, double t) {
    return Quaterniond{J.x * J.y * std::sin(t), 0, 0, 0};
  });
  CHECK(ratio(nullphi, 2.0) < 1e-12);

  // extremal function at p = infinity on the default-size grid
  auto big = make_boundary_grid<double>(48, 96, 64);
  const Index i0 = big->sphere.nearest_node(ImaginaryUnitd(1, 0, 0));
  const auto phistar = extremal_function(big->sphere.node(i0), big);
  CHECK(std::abs(ratio(phistar, kInf) - 4.0 / 3) < 1e-5);

  const auto zero =
      sample_function<double>(grid, [](const ImaginaryUnitd&, double) { return Quaterniond::zero(); });
  CHECK_THROWS_AS((void)ratio(zero, 2.0), std::invalid_argument);
}
