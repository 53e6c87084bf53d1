#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qslice/fourier.hpp"
#include "qslice/slice.hpp"

namespace qslice {

namespace detail {
template <typename Scalar>
void require_radius(Scalar r) {
  if (!(r >= Scalar(0) && r < Scalar(1)))
    throw std::domain_error("Poisson kernel requires 0 <= r < 1");
}
}  // namespace detail

/// P_r(t) = (1 - r^2) / (1 - 2 r cos t + r^2) = sum_n r^{|n|} e^{int}.
/// Slice-independent; strictly positive.
template <typename Scalar>
Scalar poisson_kernel(Scalar r, Scalar t) {
  detail::require_radius(r);
  return (1 - r * r) / (1 - 2 * r * std::cos(t) + r * r);
}

/// Partial sum sum_{|n| <= band} r^{|n|} e^{int} in closed form
/// (geometric tail removed; matches the grid's representable band).
template <typename Scalar>
Scalar poisson_kernel_banded(Scalar r, Scalar t, int band) {
  detail::require_radius(r);
  if (band < 0) throw std::invalid_argument("poisson_kernel_banded: band < 0");
  if (r == Scalar(0) || band == 0) return 1;
  const std::complex<Scalar> zeta = std::polar(r, t);
  const std::complex<Scalar> head =
      zeta * (Scalar(1) - std::pow(zeta, band)) / (Scalar(1) - zeta);
  return 1 + 2 * head.real();
}

/// Truncated bilateral power series of a slice function at r e^{It}:
/// f(r e^{It}) = sum_{n} r^{|n|} e^{Int} c(n), summed Horner-style in r.
template <typename Scalar>
Quaternion<Scalar> poisson_extend(const FourierTable<Scalar>& table, Scalar r,
                                  const ImaginaryUnit<Scalar>& axis, Scalar t) {
  detail::require_radius(r);
  const int half = table.count / 2;

  // Horner in r over levels T_n = e^{Int} c(n) + e^{-Int} c(-n); the -N/2
  // bin has no positive twin.
  Quaternion<Scalar> acc = Quaternion<Scalar>::zero();
  for (int n = half; n >= 1; --n) {
    Quaternion<Scalar> T = exp_unit(axis, -Scalar(n) * t) * table.coefficient(-n);
    if (n < half) T += exp_unit(axis, Scalar(n) * t) * table.coefficient(n);
    acc = T + acc * r;
  }
  return table.coefficient(0) + acc * r;
}

template <typename Scalar>
Quaternion<Scalar> poisson_extend(const SliceFunction<Scalar>& f, Scalar r,
                                  const ImaginaryUnit<Scalar>& axis, Scalar t) {
  return poisson_extend(slice_coefficients(f), r, axis, t);
}

}  // namespace qslice
