#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <memory>
#include <stdexcept>
#include <vector>

#include "qslice/quaternion.hpp"
#include "qslice/summation.hpp"

namespace qslice {

template <typename Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using ArrayXX = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Eigen::Index;

namespace detail {

/// Gauss-Legendre nodes/weights on [-1,1] by Golub-Welsch, symmetrized so
/// that u[i] == -u[n-1-i] and w[i] == w[n-1-i] exactly.
template <typename Scalar>
void gauss_legendre(int n, ArrayX<Scalar>& u, ArrayX<Scalar>& w) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat J = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const Scalar b = Scalar(k) / std::sqrt(Scalar(4) * k * k - 1);
    J(k - 1, k) = b;
    J(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  u = es.eigenvalues().array();  // ascending
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    const Scalar v0 = es.eigenvectors()(0, i);
    w[i] = Scalar(2) * v0 * v0;
  }
  for (int i = 0; i < n / 2; ++i) {
    const int jm = n - 1 - i;
    const Scalar ui = (u[i] - u[jm]) / 2;
    u[i] = ui;
    u[jm] = -ui;
    const Scalar wi = (w[i] + w[jm]) / 2;
    w[i] = wi;
    w[jm] = wi;
  }
  if (n % 2 == 1) u[n / 2] = 0;
}

}  // namespace detail

/// Quadrature rule for the normalized measure sigma on the sphere of
/// imaginary units: Gauss-Legendre in cos(polar) x uniform azimuth.
/// Node set is closed under J -> -J with equal weights.
template <typename Scalar>
struct SphereRule {
  int n_polar{0};
  int n_azimuth{0};
  ArrayX<Scalar> polar_u;     // ascending GL nodes in cos(polar), size n_polar
  ArrayX<Scalar> polar_w;     // GL weights (sum 2), symmetric
  std::vector<ImaginaryUnit<Scalar>> nodes;  // m = i_polar * n_azimuth + j_az
  ArrayX<Scalar> weights;     // sum 1
  int exact_degree{0};        // spherical-polynomial exactness

  Index size() const { return static_cast<Index>(nodes.size()); }

  Index antipode(Index m) const {
    const Index i = m / n_azimuth, j = m % n_azimuth;
    return (n_polar - 1 - i) * n_azimuth + (j + n_azimuth / 2) % n_azimuth;
  }

  ImaginaryUnit<Scalar> node(Index m) const { return nodes[static_cast<size_t>(m)]; }

  /// Node index closest to the given direction.
  Index nearest_node(const ImaginaryUnit<Scalar>& dir) const {
    Index best = 0;
    Scalar best_dot = -2;
    for (Index m = 0; m < size(); ++m) {
      const Scalar d = dot(nodes[static_cast<size_t>(m)], dir);
      if (d > best_dot) { best_dot = d; best = m; }
    }
    return best;
  }
};

template <typename Scalar>
SphereRule<Scalar> build_sphere_rule(int n_polar, int n_azimuth) {
  if (n_polar < 2) throw std::invalid_argument("build_sphere_rule: n_polar >= 2 required");
  if (n_azimuth < 2 || n_azimuth % 2 != 0)
    throw std::invalid_argument("build_sphere_rule: n_azimuth >= 2 even required");

  SphereRule<Scalar> rule;
  rule.n_polar = n_polar;
  rule.n_azimuth = n_azimuth;
  detail::gauss_legendre<Scalar>(n_polar, rule.polar_u, rule.polar_w);
  rule.exact_degree = std::min(2 * n_polar - 1, n_azimuth - 1);

  const Scalar two_pi = Scalar(2) * Scalar(3.14159265358979323846264338327950288);
  rule.nodes.reserve(static_cast<size_t>(n_polar) * n_azimuth);
  rule.weights.resize(Index(n_polar) * n_azimuth);
  for (int i = 0; i < n_polar; ++i) {
    const Scalar u = rule.polar_u[i];
    const Scalar s = std::sqrt(std::max<Scalar>(0, 1 - u * u));
    for (int j = 0; j < n_azimuth; ++j) {
      const Scalar phi = two_pi * Scalar(j) / Scalar(n_azimuth);
      ImaginaryUnit<Scalar> J;
      J.x = s * std::cos(phi);
      J.y = s * std::sin(phi);
      J.z = u;
      rule.nodes.push_back(J);
      // sigma normalized to total mass 1: (w_GL / 2) * (1 / n_azimuth)
      rule.weights[Index(i) * n_azimuth + j] = rule.polar_w[i] / 2 / Scalar(n_azimuth);
    }
  }

  // antipodal closure must hold exactly for the double-cover pairing
  for (Index m = 0; m < rule.size(); ++m) {
    const auto a = rule.nodes[static_cast<size_t>(m)];
    const auto b = rule.nodes[static_cast<size_t>(rule.antipode(m))];
    if (std::abs(a.x + b.x) + std::abs(a.y + b.y) + std::abs(a.z + b.z) > Scalar(1e-14))
      throw std::logic_error("build_sphere_rule: antipode map broken");
  }
  return rule;
}

/// Uniform grid t_k = 2 pi k / N on the circle, weight 1/N each
/// (trapezoid rule); closed under t -> 2 pi - t.
template <typename Scalar>
struct CircleGrid {
  int count{0};

  Scalar angle(Index k) const {
    const Scalar two_pi = Scalar(2) * Scalar(3.14159265358979323846264338327950288);
    return two_pi * Scalar(k) / Scalar(count);
  }
  Index reflect(Index k) const { return (count - k) % count; }

  /// Index of the grid node matching t (within tol); throws otherwise.
  Index locate(Scalar t, Scalar tol = Scalar(1e-9)) const {
    const Scalar two_pi = Scalar(2) * Scalar(3.14159265358979323846264338327950288);
    Scalar s = std::fmod(t, two_pi);
    if (s < 0) s += two_pi;
    const Index k = static_cast<Index>(std::lround(s / two_pi * count)) % count;
    if (std::abs(s - angle(k)) > tol && std::abs(s - angle(k) - two_pi) > tol &&
        std::abs(s - angle(k) + two_pi) > tol)
      throw std::invalid_argument("CircleGrid::locate: t is not a grid node");
    return k;
  }
};

template <typename Scalar>
CircleGrid<Scalar> build_circle_grid(int n_t) {
  if (n_t < 4 || n_t % 2 != 0)
    throw std::invalid_argument("build_circle_grid: N_t >= 4 even required");
  return CircleGrid<Scalar>{n_t};
}

/// Product rule realizing the normalized measure dSigma = dsigma(I) dt/(2pi).
template <typename Scalar>
struct BoundaryGrid {
  SphereRule<Scalar> sphere;
  CircleGrid<Scalar> circle;

  Index node_count() const { return sphere.size(); }
  Index angle_count() const { return circle.count; }
};

template <typename Scalar>
std::shared_ptr<const BoundaryGrid<Scalar>> make_boundary_grid(int n_polar, int n_azimuth,
                                                               int n_t) {
  auto g = std::make_shared<BoundaryGrid<Scalar>>();
  g->sphere = build_sphere_rule<Scalar>(n_polar, n_azimuth);
  g->circle = build_circle_grid<Scalar>(n_t);
  return g;
}

/// Dense quaternion-valued samples on sphere-node x circle-node indices,
/// stored as four scalar channels (rows: sphere node, cols: circle node).
template <typename Scalar>
struct QuaternionField {
  ArrayXX<Scalar> w, x, y, z;

  QuaternionField() = default;
  QuaternionField(Index rows, Index cols) { set_zero(rows, cols); }

  Index rows() const { return w.rows(); }
  Index cols() const { return w.cols(); }

  void set_zero(Index rows, Index cols) {
    w = ArrayXX<Scalar>::Zero(rows, cols);
    x = ArrayXX<Scalar>::Zero(rows, cols);
    y = ArrayXX<Scalar>::Zero(rows, cols);
    z = ArrayXX<Scalar>::Zero(rows, cols);
  }

  Quaternion<Scalar> operator()(Index i, Index j) const {
    return {w(i, j), x(i, j), y(i, j), z(i, j)};
  }
  void set(Index i, Index j, const Quaternion<Scalar>& q) {
    w(i, j) = q.w; x(i, j) = q.x; y(i, j) = q.y; z(i, j) = q.z;
  }

  ArrayXX<Scalar> squared_modulus() const { return w * w + x * x + y * y + z * z; }
  ArrayXX<Scalar> modulus() const { return squared_modulus().sqrt(); }

  QuaternionField& operator+=(const QuaternionField& o) {
    w += o.w; x += o.x; y += o.y; z += o.z; return *this;
  }
  QuaternionField& operator-=(const QuaternionField& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z; return *this;
  }
  QuaternionField& operator*=(Scalar s) {
    w *= s; x *= s; y *= s; z *= s; return *this;
  }

  /// Pointwise scale by a scalar array of matching shape.
  void scale_pointwise(const ArrayXX<Scalar>& s) { w *= s; x *= s; y *= s; z *= s; }

  /// Right-multiply every sample by a constant quaternion.
  QuaternionField right_multiplied(const Quaternion<Scalar>& c) const {
    QuaternionField r;
    r.w = w * c.w - x * c.x - y * c.y - z * c.z;
    r.x = w * c.x + x * c.w + y * c.z - z * c.y;
    r.y = w * c.y - x * c.z + y * c.w + z * c.x;
    r.z = w * c.z + x * c.y - y * c.x + z * c.w;
    return r;
  }
};

/// Quaternion samples along the circle only (four channels over t-nodes).
template <typename Scalar>
struct QuaternionSeries {
  ArrayX<Scalar> w, x, y, z;

  QuaternionSeries() = default;
  explicit QuaternionSeries(Index n) { set_zero(n); }

  Index size() const { return w.size(); }
  void set_zero(Index n) {
    w = ArrayX<Scalar>::Zero(n);
    x = ArrayX<Scalar>::Zero(n);
    y = ArrayX<Scalar>::Zero(n);
    z = ArrayX<Scalar>::Zero(n);
  }
  Quaternion<Scalar> operator()(Index k) const { return {w[k], x[k], y[k], z[k]}; }
  void set(Index k, const Quaternion<Scalar>& q) {
    w[k] = q.w; x[k] = q.x; y[k] = q.y; z[k] = q.z;
  }
  ArrayX<Scalar> modulus() const { return (w * w + x * x + y * y + z * z).sqrt(); }

  QuaternionSeries& operator-=(const QuaternionSeries& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z; return *this;
  }
};

/// Discrete stand-in for phi in L^p(boundary): values on the full product
/// grid S x [0, 2pi). The double cover is handled by an explicit validator,
/// not an implicit identification.
template <typename Scalar>
struct SampledFunction {
  std::shared_ptr<const BoundaryGrid<Scalar>> grid;
  QuaternionField<Scalar> values;

  SampledFunction() = default;
  explicit SampledFunction(std::shared_ptr<const BoundaryGrid<Scalar>> g)
      : grid(std::move(g)),
        values(grid->node_count(), grid->angle_count()) {}

  Index node_count() const { return grid->node_count(); }
  Index angle_count() const { return grid->angle_count(); }
};

using SampledFunctiond = SampledFunction<double>;

/// Fill a sampled function from a callable (axis, t) -> Quaternion.
template <typename Scalar, typename F>
SampledFunction<Scalar> sample_function(std::shared_ptr<const BoundaryGrid<Scalar>> grid,
                                        F&& f) {
  SampledFunction<Scalar> out(grid);
  for (Index k = 0; k < out.angle_count(); ++k) {
    const Scalar t = grid->circle.angle(k);
    for (Index m = 0; m < out.node_count(); ++m)
      out.values.set(m, k, f(grid->sphere.node(m), t));
  }
  return out;
}

/// sum_m w_m f(J_m) with compensated fixed-order reduction.
template <typename Scalar, typename F>
Quaternion<Scalar> integrate_sphere(F&& f, const SphereRule<Scalar>& rule) {
  CompensatedQuaternionSum<Scalar> acc;
  for (Index m = 0; m < rule.size(); ++m) {
    Quaternion<Scalar> v = f(rule.node(m));
    acc.add(v * rule.weights[m]);
  }
  return acc.value();
}

/// Integral against dSigma over the product grid (compensated, fixed order:
/// circle-major, sphere-minor).
template <typename Scalar>
Quaternion<Scalar> integrate_boundary(const SampledFunction<Scalar>& phi) {
  const auto& wq = phi.grid->sphere.weights;
  const Scalar inv_nt = Scalar(1) / Scalar(phi.angle_count());
  CompensatedQuaternionSum<Scalar> acc;
  for (Index k = 0; k < phi.angle_count(); ++k)
    for (Index m = 0; m < phi.node_count(); ++m) {
      const Scalar w = wq[m] * inv_nt;
      acc.add(phi.values(m, k) * w);
    }
  return acc.value();
}

/// Max over paired indices of |phi(J, t) - phi(-J, 2pi - t)|: the defect of
/// well-definedness under the double cover. Zero for genuine functions on
/// the boundary of B.
template <typename Scalar>
Scalar validate_well_defined(const SampledFunction<Scalar>& phi) {
  const auto& sphere = phi.grid->sphere;
  const auto& circle = phi.grid->circle;
  Scalar defect = 0;
  for (Index k = 0; k < phi.angle_count(); ++k) {
    const Index kr = circle.reflect(k);
    for (Index m = 0; m < phi.node_count(); ++m) {
      const Index ma = sphere.antipode(m);
      const Scalar d = (phi.values(m, k) - phi.values(ma, kr)).norm();
      if (d > defect) defect = d;
    }
  }
  return defect;
}

template <typename Scalar>
bool is_well_defined(const SampledFunction<Scalar>& phi, Scalar tol) {
  return validate_well_defined(phi) <= tol;
}

}  // namespace qslice
