#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qslice/grids.hpp"
#include "qslice/projection.hpp"
#include "qslice/slice.hpp"

namespace qslice {

/// Quadrature L^p norm against dSigma; p = infinity returns the grid max
/// of the quaternion modulus.
template <typename Scalar>
Scalar lp_norm(const SampledFunction<Scalar>& phi, Scalar p) {
  if (std::isinf(p)) return std::sqrt(phi.values.squared_modulus().maxCoeff());
  if (!(p >= Scalar(1))) throw std::invalid_argument("lp_norm: p >= 1 required");
  const ArrayXX<Scalar> mod2 = phi.values.squared_modulus();
  const auto& w = phi.grid->sphere.weights;
  const Scalar inv_n = Scalar(1) / Scalar(phi.angle_count());
  CompensatedSum<Scalar> acc;
  if (p == Scalar(2)) {
    for (Index k = 0; k < mod2.cols(); ++k)
      acc.add((mod2.col(k) * w).sum() * inv_n);
    return std::sqrt(acc.value());
  }
  const ArrayXX<Scalar> modp = mod2.pow(p / 2);
  for (Index k = 0; k < modp.cols(); ++k)
    acc.add((modp.col(k) * w).sum() * inv_n);
  return std::pow(acc.value(), Scalar(1) / p);
}

/// Quaternion-valued pairing <f, g> = integral conj(g) f dSigma
/// (right-H-linear in f, conjugate-right-linear in g; <f,f> = ||f||_2^2).
template <typename Scalar>
Quaternion<Scalar> inner_product(const SampledFunction<Scalar>& f,
                                 const SampledFunction<Scalar>& g) {
  if (f.node_count() != g.node_count() || f.angle_count() != g.angle_count())
    throw std::invalid_argument("inner_product: grid mismatch");
  const auto& a = g.values;  // conjugated factor
  const auto& b = f.values;
  const auto& w = f.grid->sphere.weights;
  const Scalar inv_n = Scalar(1) / Scalar(f.angle_count());
  CompensatedQuaternionSum<Scalar> acc;
  for (Index k = 0; k < f.angle_count(); ++k) {
    // conj(g) f, column at a time
    const Quaternion<Scalar> col{
        ((a.w.col(k) * b.w.col(k) + a.x.col(k) * b.x.col(k) + a.y.col(k) * b.y.col(k) +
          a.z.col(k) * b.z.col(k)) * w).sum(),
        ((a.w.col(k) * b.x.col(k) - a.x.col(k) * b.w.col(k) - a.y.col(k) * b.z.col(k) +
          a.z.col(k) * b.y.col(k)) * w).sum(),
        ((a.w.col(k) * b.y.col(k) + a.x.col(k) * b.z.col(k) - a.y.col(k) * b.w.col(k) -
          a.z.col(k) * b.x.col(k)) * w).sum(),
        ((a.w.col(k) * b.z.col(k) - a.x.col(k) * b.y.col(k) + a.y.col(k) * b.x.col(k) -
          a.z.col(k) * b.w.col(k)) * w).sum()};
    acc.add(col * inv_n);
  }
  return acc.value();
}

/// Closed form of the moment integral over the sphere of imaginary units:
/// integral |1 - IJ|^q dsigma(J) = 2^{q+1} / (q + 2), independent of I.
template <typename Scalar>
Scalar sphere_moment(Scalar q_exp) {
  if (q_exp < Scalar(0)) throw std::invalid_argument("sphere_moment: q >= 0 required");
  return std::pow(Scalar(2), q_exp + 1) / (q_exp + 2);
}

namespace detail {
/// Deterministic orthonormal frame (e1, e2, I).
template <typename Scalar>
void frame_of(const ImaginaryUnit<Scalar>& I, ImaginaryUnit<Scalar>& e1,
              ImaginaryUnit<Scalar>& e2) {
  const bool use_x = std::abs(I.x) <= std::abs(I.y) && std::abs(I.x) <= std::abs(I.z);
  const bool use_y = !use_x && std::abs(I.y) <= std::abs(I.z);
  Scalar hx = use_x ? 1 : 0, hy = use_y ? 1 : 0, hz = (!use_x && !use_y) ? 1 : 0;
  // h - (h.I) I, normalized
  const Scalar d = hx * I.x + hy * I.y + hz * I.z;
  e1 = ImaginaryUnit<Scalar>(hx - d * I.x, hy - d * I.y, hz - d * I.z);
  e2 = ImaginaryUnit<Scalar>(I.y * e1.z - I.z * e1.y, I.z * e1.x - I.x * e1.z,
                             I.x * e1.y - I.y * e1.x);
}
}  // namespace detail

/// Numeric counterpart of sphere_moment: Gauss-Legendre quadrature of the
/// moment integral written in spherical coordinates aligned with I, in the
/// half-angle variable v = sin(theta/2) where |1 - IJ| = 2v and the measure
/// reduces to 2 v dv (azimuth integrates out by symmetry of the kernel).
/// The integrand is evaluated through actual quaternion algebra, so the
/// result depends on I only via rounding.
template <typename Scalar>
Scalar sphere_moment_quadrature(Scalar q_exp, const ImaginaryUnit<Scalar>& I, int n_points) {
  if (q_exp < Scalar(0)) throw std::invalid_argument("sphere_moment_quadrature: q >= 0");
  ArrayX<Scalar> u, w;
  detail::gauss_legendre<Scalar>(n_points, u, w);
  ImaginaryUnit<Scalar> e1, e2;
  detail::frame_of(I, e1, e2);
  const Quaternion<Scalar> Iq = I.as_quaternion();
  CompensatedSum<Scalar> acc;
  for (int i = 0; i < n_points; ++i) {
    const Scalar v = (u[i] + 1) / 2;          // v = sin(theta/2) in (0,1)
    const Scalar theta = 2 * std::asin(std::min<Scalar>(v, 1));
    // polar angle measured from -I, where |1 - IJ| has its conical zero
    const Scalar c = -std::cos(theta), s = std::sin(theta);
    const Quaternion<Scalar> J{0, c * I.x + s * e1.x, c * I.y + s * e1.y, c * I.z + s * e1.z};
    const Scalar kernel = (Quaternion<Scalar>::one() - Iq * J).norm();
    acc.add((w[i] / 2) * std::pow(kernel, q_exp) * 2 * v);
  }
  return acc.value();
}

/// Generic-frame estimate of the same moment with the product sphere rule;
/// converges to the closed form as the rule is refined (the integrand has a
/// conical point at J = -I, so this route is slower than the aligned one).
template <typename Scalar>
Scalar sphere_moment_product_rule(Scalar q_exp, const SphereRule<Scalar>& rule,
                                  const ImaginaryUnit<Scalar>& I) {
  const Quaternion<Scalar> Iq = I.as_quaternion();
  CompensatedSum<Scalar> acc;
  for (Index m = 0; m < rule.size(); ++m) {
    const Scalar kernel = (Quaternion<Scalar>::one() - Iq * rule.node(m).as_quaternion()).norm();
    acc.add(rule.weights[m] * std::pow(kernel, q_exp));
  }
  return acc.value();
}

/// Holder bound on the projection norm, 2 ((2p-2)/(3p-2))^{(p-1)/p} for
/// p >= 2; values in [1,2) are defined through the conjugate exponent.
template <typename Scalar>
Scalar upper_bound_constant(Scalar p) {
  if (!(p >= Scalar(1))) throw std::invalid_argument("upper_bound_constant: p >= 1 required");
  if (std::isinf(p)) return Scalar(4) / 3;
  if (p < Scalar(2)) {
    if (p == Scalar(1)) return Scalar(4) / 3;  // conjugate of infinity
    return upper_bound_constant(p / (p - 1));
  }
  return 2 * std::pow((2 * p - 2) / (3 * p - 2), (p - 1) / p);
}

/// The norming function for the L^infinity bound:
/// phi*(e^{Js}) = |1 - I0 Jc| (1 - I0 Jc)^{-1} with Jc the canonical axis
/// of the boundary point, so phi* is a genuine function on the boundary.
/// Unit modulus everywhere; the removable singularity at Jc = -I0 gets the
/// (weightless) value 1.
template <typename Scalar>
SampledFunction<Scalar> extremal_function(const ImaginaryUnit<Scalar>& I0,
                                          std::shared_ptr<const BoundaryGrid<Scalar>> grid) {
  const Quaternion<Scalar> I0q = I0.as_quaternion();
  return sample_function<Scalar>(std::move(grid), [&](const ImaginaryUnit<Scalar>& J, Scalar t) {
    const ImaginaryUnit<Scalar> Jc = canonical_axis(J, t);
    const Quaternion<Scalar> u = Quaternion<Scalar>::one() - I0q * Jc.as_quaternion();
    const Scalar n = u.norm();
    if (n < Scalar(kZeroDivisorEps)) return Quaternion<Scalar>::one();
    return u.conj() / n;  // |u| u^{-1}
  });
}

/// ||Pi phi||_p / ||phi||_p with the boundary-route projection evaluated on
/// the input grid. Any returned value is a valid lower bound on the
/// operator norm.
template <typename Scalar>
Scalar ratio(const SampledFunction<Scalar>& phi, Scalar p) {
  const Scalar denom = lp_norm(phi, p);
  if (!(denom > Scalar(0))) throw std::invalid_argument("ratio: zero input");
  const SampledFunction<Scalar> proj = evaluate_on_grid(project_boundary(phi), phi.grid);
  return lp_norm(proj, p) / denom;
}

}  // namespace qslice
