#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "qslice/fourier.hpp"
#include "qslice/grids.hpp"
#include "qslice/slice.hpp"

namespace qslice {

inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{seed, stream, std::uint64_t(0x9e3779b97f4a7c15ULL)};
  return std::mt19937_64(seq);
}

template <typename Scalar>
Quaternion<Scalar> random_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<Scalar> gauss(0, 1);
  return {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
}

template <typename Scalar>
Quaternion<Scalar> random_unit_quaternion(std::mt19937_64& rng) {
  for (;;) {
    const Quaternion<Scalar> q = random_quaternion<Scalar>(rng);
    const Scalar n = q.norm();
    if (n > Scalar(1e-6)) return q / n;
  }
}

template <typename Scalar>
ImaginaryUnit<Scalar> random_imaginary_unit(std::mt19937_64& rng) {
  for (;;) {
    std::normal_distribution<Scalar> gauss(0, 1);
    const Scalar x = gauss(rng), y = gauss(rng), z = gauss(rng);
    if (x * x + y * y + z * z > Scalar(1e-12)) return ImaginaryUnit<Scalar>(x, y, z);
  }
}

/// Random test function that is automatically well defined on the boundary:
/// a polynomial of fixed total degree in the four real coordinates of
/// q = e^{Jt}, with seeded quaternion coefficients on the right.
/// Smooth and band-limited (trig degree <= degree, sphere degree <= degree).
template <typename Scalar>
SampledFunction<Scalar> random_well_defined(std::shared_ptr<const BoundaryGrid<Scalar>> grid,
                                            std::uint64_t seed, int degree = 3) {
  auto rng = seeded_engine(seed);
  const Index M = grid->node_count(), N = grid->angle_count();

  // coordinate fields of q = cos t + J sin t
  std::array<ArrayXX<Scalar>, 4> coord;
  for (auto& c : coord) c.resize(M, N);
  ArrayX<Scalar> jx(M), jy(M), jz(M);
  for (Index m = 0; m < M; ++m) {
    const ImaginaryUnit<Scalar> J = grid->sphere.node(m);
    jx[m] = J.x; jy[m] = J.y; jz[m] = J.z;
  }
  for (Index k = 0; k < N; ++k) {
    const Scalar t = grid->circle.angle(k);
    const Scalar c = std::cos(t), s = std::sin(t);
    coord[0].col(k).setConstant(c);
    coord[1].col(k) = jx * s;
    coord[2].col(k) = jy * s;
    coord[3].col(k) = jz * s;
  }

  SampledFunction<Scalar> out(grid);
  ArrayXX<Scalar> mono(M, N);
  // monomials of total degree 0..degree, lexicographic in the index multiset
  std::vector<int> combo;
  auto emit = [&]() {
    mono.setOnes();
    for (int c : combo) mono *= coord[static_cast<size_t>(c)];
    const Quaternion<Scalar> coef = random_quaternion<Scalar>(rng);
    out.values.w += mono * coef.w;
    out.values.x += mono * coef.x;
    out.values.y += mono * coef.y;
    out.values.z += mono * coef.z;
  };
  for (int d = 0; d <= degree; ++d) {
    combo.assign(static_cast<size_t>(d), 0);
    for (;;) {
      emit();
      if (d == 0) break;
      int i = d - 1;
      while (i >= 0 && combo[static_cast<size_t>(i)] == 3) --i;
      if (i < 0) break;
      const int v = combo[static_cast<size_t>(i)] + 1;
      for (int j = i; j < d; ++j) combo[static_cast<size_t>(j)] = v;
    }
  }
  return out;
}

/// Random slice function with coefficients supported on |n| <= band,
/// mildly decaying so the sup norm stays comparable to the coefficients.
template <typename Scalar>
SliceFunction<Scalar> random_slice_function(const CircleGrid<Scalar>& circle,
                                            std::uint64_t seed, int band) {
  if (band >= circle.count / 2)
    throw std::invalid_argument("random_slice_function: band exceeds grid");
  auto rng = seeded_engine(seed, 1);
  FourierTable<Scalar> table(circle.count);
  for (int n = -band; n <= band; ++n) {
    const Scalar decay = Scalar(1) / Scalar(1 + std::abs(n));
    table.set_coefficient(n, random_quaternion<Scalar>(rng) * decay);
  }
  return slice_from_coefficients(table, circle);
}

}  // namespace qslice
