#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qslice/fourier.hpp"
#include "qslice/grids.hpp"
#include "qslice/interpolation.hpp"
#include "qslice/poisson.hpp"
#include "qslice/random_fields.hpp"
#include "qslice/slice.hpp"

namespace qslice {

/// Imaginary mean and imaginary first moment of phi on each copy of the
/// sphere inside the boundary:
///   m0(t) = integral of phi(e^{Jt}) dsigma(J)
///   m1(t) = integral of J phi(e^{Jt}) dsigma(J)
template <typename Scalar>
struct SphereMoments {
  QuaternionSeries<Scalar> m0, m1;
};

template <typename Scalar>
SphereMoments<Scalar> sphere_moments(const SampledFunction<Scalar>& phi) {
  const auto& sphere = phi.grid->sphere;
  const Index M = phi.node_count(), N = phi.angle_count();
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vec w = sphere.weights.matrix();
  Vec wx(M), wy(M), wz(M);
  for (Index m = 0; m < M; ++m) {
    const ImaginaryUnit<Scalar> J = sphere.node(m);
    wx[m] = w[m] * J.x; wy[m] = w[m] * J.y; wz[m] = w[m] * J.z;
  }

  const auto& v = phi.values;
  SphereMoments<Scalar> mom{QuaternionSeries<Scalar>(N), QuaternionSeries<Scalar>(N)};
  mom.m0.w = (v.w.matrix().transpose() * w).array();
  mom.m0.x = (v.x.matrix().transpose() * w).array();
  mom.m0.y = (v.y.matrix().transpose() * w).array();
  mom.m0.z = (v.z.matrix().transpose() * w).array();
  // J phi: w' = -(Jx x + Jy y + Jz z), x' = Jx w + Jy z - Jz y, (cyclic)
  mom.m1.w = -(v.x.matrix().transpose() * wx + v.y.matrix().transpose() * wy +
               v.z.matrix().transpose() * wz).array();
  mom.m1.x = (v.w.matrix().transpose() * wx + v.z.matrix().transpose() * wy -
              v.y.matrix().transpose() * wz).array();
  mom.m1.y = (v.w.matrix().transpose() * wy + v.x.matrix().transpose() * wz -
              v.z.matrix().transpose() * wx).array();
  mom.m1.z = (v.w.matrix().transpose() * wz + v.y.matrix().transpose() * wx -
              v.x.matrix().transpose() * wy).array();
  return mom;
}

/// Projection onto slice functions through the boundary integral
/// Pi phi(e^{tI}) = integral (1 - IJ) phi(e^{Jt}) dsigma(J):
/// returns the slice pair a = m0, b = -m1, so a + I b matches the integral.
template <typename Scalar>
SliceFunction<Scalar> project_boundary(const SampledFunction<Scalar>& phi) {
  SphereMoments<Scalar> mom = sphere_moments(phi);
  SliceFunction<Scalar> f(phi.grid->circle);
  f.a = std::move(mom.m0);
  f.b.w = -mom.m1.w; f.b.x = -mom.m1.x; f.b.y = -mom.m1.y; f.b.z = -mom.m1.z;
  return f;
}

/// Projection through per-slice Fourier coefficients averaged over the
/// sphere rule: projected coefficient c(n) = integral a_n(I) dsigma(I).
template <typename Scalar>
SliceFunction<Scalar> project_fourier(const SampledFunction<Scalar>& phi) {
  const Index M = phi.node_count();
  const int N = static_cast<int>(phi.angle_count());
  std::vector<CompensatedQuaternionSum<Scalar>> acc(static_cast<size_t>(N));
  QuaternionSeries<Scalar> row(N);
  for (Index m = 0; m < M; ++m) {
    row.w = phi.values.w.row(m).transpose();
    row.x = phi.values.x.row(m).transpose();
    row.y = phi.values.y.row(m).transpose();
    row.z = phi.values.z.row(m).transpose();
    const FourierTable<Scalar> table = fourier_coeffs_slice(row, phi.grid->sphere.node(m));
    const Scalar w = phi.grid->sphere.weights[m];
    for (int n = -N / 2; n < N / 2; ++n)
      acc[static_cast<size_t>(table.storage_index(n))].add(table.coefficient(n) * w);
  }
  FourierTable<Scalar> mean(N);
  for (Index i = 0; i < N; ++i) mean.coeff.set(i, acc[static_cast<size_t>(i)].value());
  return slice_from_coefficients(mean, phi.grid->circle);
}

/// Slice Poisson kernel K(re^{It}, e^{Js}) in closed form:
///   (1/2)[P_r(t+s) + P_r(t-s)] + (IJ/2)[P_r(t+s) - P_r(t-s)].
template <typename Scalar>
Quaternion<Scalar> slice_kernel(Scalar r, const ImaginaryUnit<Scalar>& I, Scalar t,
                                const ImaginaryUnit<Scalar>& J, Scalar s) {
  const Scalar pp = poisson_kernel(r, t + s);
  const Scalar pm = poisson_kernel(r, t - s);
  const Quaternion<Scalar> IJ = I.as_quaternion() * J.as_quaternion();
  return Quaternion<Scalar>{(pp + pm) / 2, 0, 0, 0} + IJ * ((pp - pm) / 2);
}

/// Same kernel with the bilateral series truncated to |n| <= band, which is
/// what a product-grid quadrature can resolve without aliasing.
template <typename Scalar>
Quaternion<Scalar> slice_kernel_banded(Scalar r, const ImaginaryUnit<Scalar>& I, Scalar t,
                                       const ImaginaryUnit<Scalar>& J, Scalar s, int band) {
  const Scalar pp = poisson_kernel_banded(r, t + s, band);
  const Scalar pm = poisson_kernel_banded(r, t - s, band);
  const Quaternion<Scalar> IJ = I.as_quaternion() * J.as_quaternion();
  return Quaternion<Scalar>{(pp + pm) / 2, 0, 0, 0} + IJ * ((pp - pm) / 2);
}

/// Interior extension of the projection by kernel quadrature over the
/// product grid: integral of K(re^{It}, e^{Js}) phi(e^{Js}) dSigma, kernel
/// multiplying phi on the left. The kernel band is capped at N/2 - 1 so the
/// quadrature sees no aliased Poisson tail.
template <typename Scalar>
Quaternion<Scalar> project_interior(const SampledFunction<Scalar>& phi, Scalar r,
                                    const ImaginaryUnit<Scalar>& I, Scalar t) {
  detail::require_radius(r);
  const auto& sphere = phi.grid->sphere;
  const Index M = phi.node_count(), N = phi.angle_count();
  const int band = static_cast<int>(N) / 2 - 1;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vec w = sphere.weights.matrix();
  Vec wx(M), wy(M), wz(M);
  for (Index m = 0; m < M; ++m) {
    const ImaginaryUnit<Scalar> J = sphere.node(m);
    wx[m] = w[m] * J.x; wy[m] = w[m] * J.y; wz[m] = w[m] * J.z;
  }
  const Quaternion<Scalar> Iq = I.as_quaternion();
  const auto& v = phi.values;
  const Scalar inv_n = Scalar(1) / Scalar(N);

  CompensatedQuaternionSum<Scalar> acc;
  for (Index k = 0; k < N; ++k) {
    const Scalar s = phi.grid->circle.angle(k);
    const Scalar pp = poisson_kernel_banded(r, t + s, band);
    const Scalar pm = poisson_kernel_banded(r, t - s, band);
    const Scalar c0 = (pp + pm) / 2 * inv_n;
    const Scalar c1 = (pp - pm) / 2 * inv_n;
    // sum_J w K phi = c0 sum w phi + c1 I (sum w J phi), column by column
    const Quaternion<Scalar> s0{v.w.col(k).matrix().dot(w), v.x.col(k).matrix().dot(w),
                                v.y.col(k).matrix().dot(w), v.z.col(k).matrix().dot(w)};
    const Quaternion<Scalar> s1{
        -(v.x.col(k).matrix().dot(wx) + v.y.col(k).matrix().dot(wy) + v.z.col(k).matrix().dot(wz)),
        v.w.col(k).matrix().dot(wx) + v.z.col(k).matrix().dot(wy) - v.y.col(k).matrix().dot(wz),
        v.w.col(k).matrix().dot(wy) + v.x.col(k).matrix().dot(wz) - v.z.col(k).matrix().dot(wx),
        v.w.col(k).matrix().dot(wz) + v.y.col(k).matrix().dot(wx) - v.x.col(k).matrix().dot(wy)};
    acc.add(s0 * c0 + Iq * s1 * c1);
  }
  return acc.value();
}

/// Pi phi(re^{It}) = A(r,t) + I B(r,t): half-sum / half-difference Poisson
/// averages of the imaginary mean and first moment.
template <typename Scalar>
std::pair<Quaternion<Scalar>, Quaternion<Scalar>> corollary_ab(const SampledFunction<Scalar>& phi,
                                                               Scalar r, Scalar t) {
  detail::require_radius(r);
  const Index N = phi.angle_count();
  const int band = static_cast<int>(N) / 2 - 1;
  const SphereMoments<Scalar> mom = sphere_moments(phi);
  const Scalar inv_n = Scalar(1) / Scalar(N);
  CompensatedQuaternionSum<Scalar> A, B;
  for (Index k = 0; k < N; ++k) {
    const Scalar s = phi.grid->circle.angle(k);
    const Scalar pp = poisson_kernel_banded(r, t + s, band);
    const Scalar pm = poisson_kernel_banded(r, t - s, band);
    A.add(mom.m0(k) * ((pp + pm) / 2 * inv_n));
    B.add(mom.m1(k) * ((pp - pm) / 2 * inv_n));
  }
  return {A.value(), B.value()};
}

/// Both sides of the cancellation identity at a fixed circle angle:
///   lhs = integral over S of |Pi phi(e^{It})|^2 dsigma(I)
///   rhs = |integral phi dsigma|^2 + |integral I phi dsigma|^2.
template <typename Scalar>
std::pair<Scalar, Scalar> energy_identity(const SampledFunction<Scalar>& phi, Scalar t) {
  const Index k = phi.grid->circle.locate(t);
  const SphereMoments<Scalar> mom = sphere_moments(phi);
  const Quaternion<Scalar> a = mom.m0(k);
  const Quaternion<Scalar> b = -mom.m1(k);
  const auto& sphere = phi.grid->sphere;
  CompensatedSum<Scalar> lhs;
  for (Index m = 0; m < sphere.size(); ++m) {
    const Quaternion<Scalar> v = a + sphere.node(m).as_quaternion() * b;
    lhs.add(sphere.weights[m] * v.squared_norm());
  }
  const Scalar rhs = mom.m0(k).squared_norm() + mom.m1(k).squared_norm();
  return {lhs.value(), rhs};
}

/// Projection onto functions depending on t alone; by rotation invariance
/// of sigma it reduces to the sphere mean t -> integral phi(e^{Jt}) dsigma(J).
template <typename Scalar>
QuaternionSeries<Scalar> project_sphere_mean(const SampledFunction<Scalar>& phi) {
  return sphere_moments(phi).m0;
}

/// Sampled function whose value at every (J, t) is the sphere mean at t.
template <typename Scalar>
SampledFunction<Scalar> project_sphere_mean_field(const SampledFunction<Scalar>& phi) {
  const QuaternionSeries<Scalar> mean = project_sphere_mean(phi);
  SampledFunction<Scalar> out(phi.grid);
  out.values.w.rowwise() = mean.w.transpose();
  out.values.x.rowwise() = mean.x.transpose();
  out.values.y.rowwise() = mean.y.transpose();
  out.values.z.rowwise() = mean.z.transpose();
  return out;
}

/// Fourier truncation per slice: keep coefficients n >= 0, zero n < 0.
/// Idempotent; commutes with right multiplication by constants.
template <typename Scalar>
SampledFunction<Scalar> truncate_nonneg(const SampledFunction<Scalar>& phi) {
  const Index M = phi.node_count();
  const int N = static_cast<int>(phi.angle_count());
  SampledFunction<Scalar> out(phi.grid);
  QuaternionSeries<Scalar> row(N);
  for (Index m = 0; m < M; ++m) {
    row.w = phi.values.w.row(m).transpose();
    row.x = phi.values.x.row(m).transpose();
    row.y = phi.values.y.row(m).transpose();
    row.z = phi.values.z.row(m).transpose();
    const ImaginaryUnit<Scalar> axis = phi.grid->sphere.node(m);
    FourierTable<Scalar> table = fourier_coeffs_slice(row, axis);
    for (int n = -N / 2; n < 0; ++n)
      table.set_coefficient(n, Quaternion<Scalar>::zero());
    const QuaternionSeries<Scalar> rebuilt = reconstruct_on_slice(table, axis);
    out.values.w.row(m) = rebuilt.w.transpose();
    out.values.x.row(m) = rebuilt.x.transpose();
    out.values.y.row(m) = rebuilt.y.transpose();
    out.values.z.row(m) = rebuilt.z.transpose();
  }
  return out;
}

/// Result of the rotation-covariant Monte Carlo projector.
template <typename Scalar>
struct CovariantResult {
  SampledFunction<Scalar> values;
  Scalar standard_error{0};  // rms per-point MC standard error of the mean
};

/// Haar average Pi' phi(e^{It}) = integral R^{-1} phi(e^{R(I)t}) dh(R),
/// sampled with uniform unit quaternions u acting by R_u(K) = u K u* on
/// axes and R_u^{-1} v = u* v u on values. Seeded and reproducible; sample
/// streams are indexed by a fixed per-sample counter.
template <typename Scalar>
CovariantResult<Scalar> project_covariant_detailed(const SampledFunction<Scalar>& phi,
                                                   int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("project_covariant: n_samples < 1");
  const Index M = phi.node_count(), N = phi.angle_count();
  const SphereInterpolator<Scalar> interp(phi.grid->sphere);

  QuaternionField<Scalar> sum(M, N);
  ArrayXX<Scalar> sumsq = ArrayXX<Scalar>::Zero(M, N);
  QuaternionSeries<Scalar> series(N), transformed(N);

  for (int sample = 0; sample < n_samples; ++sample) {
    auto rng = seeded_engine(seed, static_cast<std::uint64_t>(sample) + 1);
    const Quaternion<Scalar> u = random_unit_quaternion<Scalar>(rng);
    const Quaternion<Scalar> uc = u.conj();
    for (Index m = 0; m < M; ++m) {
      const Quaternion<Scalar> K = phi.grid->sphere.node(m).as_quaternion();
      const Quaternion<Scalar> rk = u * K * uc;
      const ImaginaryUnit<Scalar> axis(rk.x, rk.y, rk.z);
      interp.interpolate_series(phi, axis, series);
      for (Index k = 0; k < N; ++k) {
        const Quaternion<Scalar> val = uc * series(k) * u;
        sum.w(m, k) += val.w; sum.x(m, k) += val.x;
        sum.y(m, k) += val.y; sum.z(m, k) += val.z;
        sumsq(m, k) += val.squared_norm();
      }
    }
  }

  CovariantResult<Scalar> out;
  out.values = SampledFunction<Scalar>(phi.grid);
  const Scalar inv = Scalar(1) / Scalar(n_samples);
  out.values.values.w = sum.w * inv;
  out.values.values.x = sum.x * inv;
  out.values.values.y = sum.y * inv;
  out.values.values.z = sum.z * inv;
  if (n_samples > 1) {
    // pointwise variance of the four components combined, then rms SE
    ArrayXX<Scalar> var =
        (sumsq * inv - out.values.values.squared_modulus()) * (Scalar(n_samples) / Scalar(n_samples - 1));
    out.standard_error = std::sqrt(std::max<Scalar>(0, var.mean() * inv));
  }
  return out;
}

template <typename Scalar>
SampledFunction<Scalar> project_covariant(const SampledFunction<Scalar>& phi, int n_samples,
                                          std::uint64_t seed) {
  return project_covariant_detailed(phi, n_samples, seed).values;
}

/// RMS failure of phi(e^{R(I)t}) = R phi(e^{It}) over sampled rotations;
/// max over probes of the per-probe rms.
template <typename Scalar>
Scalar covariance_defect(const SampledFunction<Scalar>& phi, int n_probes, std::uint64_t seed) {
  const Index M = phi.node_count(), N = phi.angle_count();
  const SphereInterpolator<Scalar> interp(phi.grid->sphere);
  QuaternionSeries<Scalar> series(N);
  Scalar worst = 0;
  for (int probe = 0; probe < n_probes; ++probe) {
    auto rng = seeded_engine(seed, static_cast<std::uint64_t>(probe) + 0x7777);
    const Quaternion<Scalar> u = random_unit_quaternion<Scalar>(rng);
    const Quaternion<Scalar> uc = u.conj();
    CompensatedSum<Scalar> sq;
    for (Index m = 0; m < M; ++m) {
      const Quaternion<Scalar> K = phi.grid->sphere.node(m).as_quaternion();
      const Quaternion<Scalar> rk = u * K * uc;
      const ImaginaryUnit<Scalar> axis(rk.x, rk.y, rk.z);
      interp.interpolate_series(phi, axis, series);
      for (Index k = 0; k < N; ++k) {
        const Quaternion<Scalar> rhs = u * phi.values(m, k) * uc;
        sq.add((series(k) - rhs).squared_norm());
      }
    }
    worst = std::max(worst, std::sqrt(sq.value() / Scalar(M * N)));
  }
  return worst;
}

}  // namespace qslice
