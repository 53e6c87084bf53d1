#include <doctest.h>

#include "qslice/random_fields.hpp"
#include "qslice/slice.hpp"

using namespace qslice;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("ext_representation of e^{it} on the slice of i") {
  const auto circle = build_circle_grid<double>(32);
  const ImaginaryUnitd i_axis(1, 0, 0);
  QuaternionSeries<double> samples(32);
  for (Index k = 0; k < 32; ++k) samples.set(k, exp_unit(i_axis, circle.angle(k)));

  const auto f = ext_representation(samples, i_axis, circle);
  for (Index k = 0; k < 32; ++k) {
    const double t = circle.angle(k);
    CHECK((f.a(k) - Quaterniond{std::cos(t), 0, 0, 0}).norm() < 1e-15);
    CHECK((f.b(k) - Quaterniond{std::sin(t), 0, 0, 0}).norm() < 1e-15);
  }
  // evaluation at another axis gives e^{Jt}
  const ImaginaryUnitd j_axis(0, 1, 0);
  for (Index k = 0; k < 32; ++k)
    CHECK((f.evaluate(j_axis, k) - exp_unit(j_axis, circle.angle(k))).norm() < 1e-15);
}

TEST_CASE("ext_representation of a constant") {
  const auto circle = build_circle_grid<double>(16);
  const Quaterniond q0{0.3, 1, -2, 0.5};
  QuaternionSeries<double> samples(16);
  for (Index k = 0; k < 16; ++k) samples.set(k, q0);
  const auto f = ext_representation(samples, ImaginaryUnitd(0, 0, 1), circle);
  for (Index k = 0; k < 16; ++k) {
    CHECK((f.a(k) - q0).norm() < 1e-15);
    CHECK(f.b(k).norm() < 1e-15);
  }
}

TEST_CASE("ext_representation of e^{it} j from the slice of i") {
  // f_i(t) = e^{it} j = cos t j + sin t k; the representation pair is
  // a = cos t j, b = sin t j, and on the slice of j the value is cos t j - sin t.
  const auto circle = build_circle_grid<double>(32);
  const ImaginaryUnitd i_axis(1, 0, 0), j_axis(0, 1, 0);
  const Quaterniond qj{0, 0, 1, 0};
  QuaternionSeries<double> samples(32);
  for (Index k = 0; k < 32; ++k)
    samples.set(k, exp_unit(i_axis, circle.angle(k)) * qj);

  const auto f = ext_representation(samples, i_axis, circle);
  for (Index k = 0; k < 32; ++k) {
    const double t = circle.angle(k);
    CHECK((f.a(k) - qj * std::cos(t)).norm() < 1e-15);
    CHECK((f.b(k) - qj * std::sin(t)).norm() < 1e-15);
    const Quaterniond expect = qj * std::cos(t) - Quaterniond::one() * std::sin(t);
    CHECK((f.evaluate(j_axis, k) - expect).norm() < 1e-15);
  }
}

TEST_CASE("restriction to the source slice is the identity") {
  const auto circle = build_circle_grid<double>(64);
  auto rng = seeded_engine(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto I = random_imaginary_unit<double>(rng);
    QuaternionSeries<double> samples(64);
    for (Index k = 0; k < 64; ++k) samples.set(k, random_quaternion<double>(rng));
    const auto f = ext_representation(samples, I, circle);
    for (Index k = 0; k < 64; ++k)
      CHECK((f.evaluate(I, k) - samples(k)).norm() < 1e-14);
    // the pair is well defined under the double cover by construction
    CHECK(slice_well_defined_defect(f) < 1e-13);
  }
}

TEST_CASE("slice_defect vanishes exactly on slice functions") {
  auto grid = make_boundary_grid<double>(10, 20, 32);
  const auto f = random_slice_function(grid->circle, 77, 6);
  const auto phi = evaluate_on_grid(f, grid);
  CHECK(slice_defect(phi) < 1e-12);
  CHECK(slice_defect(phi, grid->node_count()) < 1e-12);  // full pair scan
}

TEST_CASE("slice_defect detects a non-slice function") {
  auto grid = make_boundary_grid<double>(10, 20, 32);
  // (Im q)_1 = J_1 sin t is not affine in J with the slice structure
  auto phi = sample_function<double>(grid, [](const ImaginaryUnitd& J, double t) {
    return Quaterniond{J.x * std::sin(t), 0, 0, 0};
  });
  CHECK(slice_defect(phi) > 0.3);
}

TEST_CASE("slice_defect accepts J sgn(sin t)") {
  auto grid = make_boundary_grid<double>(10, 20, 32);
  auto phi = sample_function<double>(grid, [](const ImaginaryUnitd& J, double t) {
    const double s = std::sin(t);
    const double sgn = s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0);
    return J.as_quaternion() * sgn;
  });
  CHECK(slice_defect(phi) < 1e-12);
}

TEST_CASE("evaluate_on_grid matches pointwise evaluation") {
  auto grid = make_boundary_grid<double>(6, 12, 16);
  const auto f = random_slice_function(grid->circle, 5, 4);
  const auto phi = evaluate_on_grid(f, grid);
  for (Index m = 0; m < grid->node_count(); m += 7)
    for (Index k = 0; k < 16; ++k) {
      const Quaterniond direct = f.evaluate(grid->sphere.node(m), k);
      CHECK((phi.values(m, k) - direct).norm() < 1e-15);
    }
}

TEST_CASE("slice function well-definedness parities") {
  const auto circle = build_circle_grid<double>(32);
  const auto f = random_slice_function(circle, 31, 5);
  for (Index k = 0; k < 32; ++k) {
    const Index kr = circle.reflect(k);
    CHECK((f.a(kr) - f.a(k)).norm() < 1e-12);
    CHECK((f.b(kr) + f.b(k)).norm() < 1e-12);
  }
  (void)kPi;
}
