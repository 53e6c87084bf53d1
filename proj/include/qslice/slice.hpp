#pragma once

#include <algorithm>
#include <vector>

#include "qslice/grids.hpp"
#include "qslice/quaternion.hpp"

namespace qslice {

/// Function on the boundary of B that is affine in the sphere variable:
/// f(e^{Jt}) = a(t) + J b(t). Stored as circle samples of (a, b).
template <typename Scalar>
struct SliceFunction {
  CircleGrid<Scalar> circle;
  QuaternionSeries<Scalar> a, b;

  SliceFunction() = default;
  explicit SliceFunction(const CircleGrid<Scalar>& c)
      : circle(c), a(c.count), b(c.count) {}

  Quaternion<Scalar> evaluate(const ImaginaryUnit<Scalar>& axis, Index k) const {
    return a(k) + axis.as_quaternion() * b(k);
  }
};

using SliceFunctiond = SliceFunction<double>;

/// Extension of samples given on one slice to a slice function on the whole
/// boundary: a(t) = [f(e^{It}) + f(e^{-It})]/2, b(t) = (I/2)[f(e^{-It}) - f(e^{It})].
/// Restriction back to slice I reproduces the input exactly.
template <typename Scalar>
SliceFunction<Scalar> ext_representation(const QuaternionSeries<Scalar>& samples,
                                         const ImaginaryUnit<Scalar>& axis,
                                         const CircleGrid<Scalar>& circle) {
  if (samples.size() != circle.count)
    throw std::invalid_argument("ext_representation: sample count != circle grid");
  SliceFunction<Scalar> f(circle);
  const Quaternion<Scalar> I = axis.as_quaternion();
  for (Index k = 0; k < circle.count; ++k) {
    const Quaternion<Scalar> fp = samples(k);
    const Quaternion<Scalar> fm = samples(circle.reflect(k));
    f.a.set(k, (fp + fm) * Scalar(0.5));
    f.b.set(k, I * (fm - fp) * Scalar(0.5));
  }
  return f;
}

/// Samples of phi along the slice of sphere node m (row extraction).
template <typename Scalar>
QuaternionSeries<Scalar> restrict_to_slice(const SampledFunction<Scalar>& phi, Index m) {
  QuaternionSeries<Scalar> s(phi.angle_count());
  s.w = phi.values.w.row(m).transpose();
  s.x = phi.values.x.row(m).transpose();
  s.y = phi.values.y.row(m).transpose();
  s.z = phi.values.z.row(m).transpose();
  return s;
}

/// Evaluate f(e^{Jt}) = a(t) + J b(t) on every node of the product grid.
template <typename Scalar>
void evaluate_on_grid(const SliceFunction<Scalar>& f,
                      const std::shared_ptr<const BoundaryGrid<Scalar>>& grid,
                      SampledFunction<Scalar>& out) {
  const auto& sphere = grid->sphere;
  if (f.circle.count != grid->circle.count)
    throw std::invalid_argument("evaluate_on_grid: circle grid mismatch");
  const Index M = sphere.size(), N = grid->circle.count;
  out.grid = grid;
  if (out.values.rows() != M || out.values.cols() != N) out.values.set_zero(M, N);

  ArrayX<Scalar> ax(M), ay(M), az(M);
  for (Index m = 0; m < M; ++m) {
    const ImaginaryUnit<Scalar> J = sphere.node(m);
    ax[m] = J.x; ay[m] = J.y; az[m] = J.z;
  }

  // J b: w' = -(Jx bx + Jy by + Jz bz), x' = Jx bw + Jy bz - Jz by, (cyclic)
  for (Index k = 0; k < N; ++k) {
    const Quaternion<Scalar> a = f.a(k), b = f.b(k);
    out.values.w.col(k) = a.w - (b.x * ax + b.y * ay + b.z * az);
    out.values.x.col(k) = a.x + (b.w * ax + b.z * ay - b.y * az);
    out.values.y.col(k) = a.y + (b.w * ay + b.x * az - b.z * ax);
    out.values.z.col(k) = a.z + (b.w * az + b.y * ax - b.x * ay);
  }
}

template <typename Scalar>
SampledFunction<Scalar> evaluate_on_grid(const SliceFunction<Scalar>& f,
                                         const std::shared_ptr<const BoundaryGrid<Scalar>>& grid) {
  SampledFunction<Scalar> out(grid);
  evaluate_on_grid(f, grid, out);
  return out;
}

/// Well-definedness defect of the (a, b) pair under the double cover:
/// max of |a(2pi-t) - a(t)| and |b(2pi-t) + b(t)|.
template <typename Scalar>
Scalar slice_well_defined_defect(const SliceFunction<Scalar>& f) {
  Scalar d = 0;
  for (Index k = 0; k < f.circle.count; ++k) {
    const Index kr = f.circle.reflect(k);
    d = std::max(d, (f.a(kr) - f.a(k)).norm());
    d = std::max(d, (f.b(kr) + f.b(k)).norm());
  }
  return d;
}

/// Deviation of phi from slice form: max over reference slices I, nodes J
/// and angles t of |phi(e^{Jt}) - a_I(t) - J b_I(t)|, with (a_I, b_I) the
/// representation-formula pair read off slice I. Zero iff phi is slice.
///
/// All node pairs (I, J) are scanned when the rule has at most max_refs
/// nodes; otherwise the reference slices are an evenly strided subset
/// (the defect through any single reference bounds the full pair scan
/// within a factor 3, so the subset loses nothing at test tolerances).
template <typename Scalar>
Scalar slice_defect(const SampledFunction<Scalar>& phi, Index max_refs = 16) {
  const Index M = phi.node_count();
  const Index step = std::max<Index>(1, M / std::max<Index>(1, max_refs));
  Scalar defect = 0;
  SampledFunction<Scalar> eval;
  for (Index ref = 0; ref < M; ref += step) {
    const auto samples = restrict_to_slice(phi, ref);
    const auto f = ext_representation(samples, phi.grid->sphere.node(ref), phi.grid->circle);
    evaluate_on_grid(f, phi.grid, eval);
    eval.values -= phi.values;
    defect = std::max(defect, std::sqrt(eval.values.squared_modulus().maxCoeff()));
  }
  return defect;
}

}  // namespace qslice
