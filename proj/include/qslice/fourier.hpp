#pragma once

#include <complex>
#include <unsupported/Eigen/FFT>

#include "qslice/grids.hpp"
#include "qslice/slice.hpp"

namespace qslice {

/// Bilateral Fourier coefficients over one circle: indices n in [-N/2, N/2).
/// Coefficients multiply on the right of the exponential,
/// f(e^{It}) = sum_n e^{Int} c(n).
template <typename Scalar>
struct FourierTable {
  int count{0};  // N, even
  QuaternionSeries<Scalar> coeff;  // storage index n + N/2

  FourierTable() = default;
  explicit FourierTable(int n) : count(n), coeff(n) {}

  int band() const { return count / 2; }
  Index storage_index(int n) const { return Index(n + count / 2); }
  Quaternion<Scalar> coefficient(int n) const { return coeff(storage_index(n)); }
  void set_coefficient(int n, const Quaternion<Scalar>& c) { coeff.set(storage_index(n), c); }
};

using FourierTabled = FourierTable<double>;

namespace detail {

template <typename Scalar>
using ComplexVec = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  static thread_local Eigen::FFT<Scalar> fft;  // caches plans per length
  return fft;
}

/// Forward DFT of a real channel: X(m) = sum_k v_k e^{-2 pi i m k / N}.
template <typename Scalar>
ComplexVec<Scalar> channel_fft(const ArrayX<Scalar>& v) {
  ComplexVec<Scalar> in(v.size()), out(v.size());
  for (Index k = 0; k < v.size(); ++k) in[k] = std::complex<Scalar>(v[k], 0);
  fft_engine<Scalar>().fwd(out, in);
  return out;
}

/// Inverse direction without 1/N scaling: y_k = sum_m X(m) e^{+2 pi i m k / N}.
template <typename Scalar>
ComplexVec<Scalar> channel_ifft_unscaled(const ComplexVec<Scalar>& spectrum) {
  ComplexVec<Scalar> out(spectrum.size());
  fft_engine<Scalar>().inv(out, spectrum);
  return out * Scalar(spectrum.size());
}

inline Index dft_bin(int n, int count) { return Index(((n % count) + count) % count); }

}  // namespace detail

/// Coefficients of circle samples on the slice of I:
/// c(n) = (1/N) sum_k e^{-n I t_k} phi(t_k)  (exponential on the left).
/// Computed with four real FFTs: c(n) = C(n) - I S(n), where C and S are the
/// cosine and sine sums of the four scalar channels.
template <typename Scalar>
FourierTable<Scalar> fourier_coeffs_slice(const QuaternionSeries<Scalar>& samples,
                                          const ImaginaryUnit<Scalar>& axis) {
  const int N = static_cast<int>(samples.size());
  FourierTable<Scalar> table(N);
  const auto Fw = detail::channel_fft(samples.w);
  const auto Fx = detail::channel_fft(samples.x);
  const auto Fy = detail::channel_fft(samples.y);
  const auto Fz = detail::channel_fft(samples.z);
  const Quaternion<Scalar> I = axis.as_quaternion();
  const Scalar inv_n = Scalar(1) / Scalar(N);
  for (int n = -N / 2; n < N / 2; ++n) {
    const Index m = detail::dft_bin(n, N);
    const Quaternion<Scalar> C{Fw[m].real(), Fx[m].real(), Fy[m].real(), Fz[m].real()};
    const Quaternion<Scalar> S{-Fw[m].imag(), -Fx[m].imag(), -Fy[m].imag(), -Fz[m].imag()};
    table.set_coefficient(n, (C - I * S) * inv_n);
  }
  return table;
}

/// f(t_k) = sum_n e^{I n t_k} c(n) on the slice of I.
template <typename Scalar>
QuaternionSeries<Scalar> reconstruct_on_slice(const FourierTable<Scalar>& table,
                                              const ImaginaryUnit<Scalar>& axis) {
  const int N = table.count;
  detail::ComplexVec<Scalar> sw(N), sx(N), sy(N), sz(N);
  for (int n = -N / 2; n < N / 2; ++n) {
    const Index m = detail::dft_bin(n, N);
    const Quaternion<Scalar> c = table.coefficient(n);
    sw[m] = std::complex<Scalar>(c.w, 0);
    sx[m] = std::complex<Scalar>(c.x, 0);
    sy[m] = std::complex<Scalar>(c.y, 0);
    sz[m] = std::complex<Scalar>(c.z, 0);
  }
  const auto yw = detail::channel_ifft_unscaled(sw);
  const auto yx = detail::channel_ifft_unscaled(sx);
  const auto yy = detail::channel_ifft_unscaled(sy);
  const auto yz = detail::channel_ifft_unscaled(sz);
  // sum e^{int} c_n = A(t) + i B(t) per channel; value = A + I B
  QuaternionSeries<Scalar> out(N);
  const Quaternion<Scalar> I = axis.as_quaternion();
  for (Index k = 0; k < N; ++k) {
    const Quaternion<Scalar> A{yw[k].real(), yx[k].real(), yy[k].real(), yz[k].real()};
    const Quaternion<Scalar> B{yw[k].imag(), yx[k].imag(), yy[k].imag(), yz[k].imag()};
    out.set(k, A + I * B);
  }
  return out;
}

/// Axis-free coefficients of a slice function, using the parity of (a, b):
/// c(n) = (1/N) sum_k [cos(n t_k) a_k + sin(n t_k) b_k].
template <typename Scalar>
FourierTable<Scalar> slice_coefficients(const SliceFunction<Scalar>& f) {
  const int N = f.circle.count;
  FourierTable<Scalar> table(N);
  const auto Aw = detail::channel_fft(f.a.w);
  const auto Ax = detail::channel_fft(f.a.x);
  const auto Ay = detail::channel_fft(f.a.y);
  const auto Az = detail::channel_fft(f.a.z);
  const auto Bw = detail::channel_fft(f.b.w);
  const auto Bx = detail::channel_fft(f.b.x);
  const auto By = detail::channel_fft(f.b.y);
  const auto Bz = detail::channel_fft(f.b.z);
  const Scalar inv_n = Scalar(1) / Scalar(N);
  for (int n = -N / 2; n < N / 2; ++n) {
    const Index m = detail::dft_bin(n, N);
    // sum cos(nt) a = Re A(m); sum sin(nt) b = -Im B(m)
    Quaternion<Scalar> c{Aw[m].real() - Bw[m].imag(), Ax[m].real() - Bx[m].imag(),
                         Ay[m].real() - By[m].imag(), Az[m].real() - Bz[m].imag()};
    table.set_coefficient(n, c * inv_n);
  }
  return table;
}

/// Rebuild circle samples of (a, b) from axis-free coefficients:
/// a(t) = sum_n cos(nt) c(n), b(t) = sum_n sin(nt) c(n).
template <typename Scalar>
SliceFunction<Scalar> slice_from_coefficients(const FourierTable<Scalar>& table,
                                              const CircleGrid<Scalar>& circle) {
  if (table.count != circle.count)
    throw std::invalid_argument("slice_from_coefficients: grid mismatch");
  const int N = table.count;
  detail::ComplexVec<Scalar> sw(N), sx(N), sy(N), sz(N);
  for (int n = -N / 2; n < N / 2; ++n) {
    const Index m = detail::dft_bin(n, N);
    const Quaternion<Scalar> c = table.coefficient(n);
    sw[m] = std::complex<Scalar>(c.w, 0);
    sx[m] = std::complex<Scalar>(c.x, 0);
    sy[m] = std::complex<Scalar>(c.y, 0);
    sz[m] = std::complex<Scalar>(c.z, 0);
  }
  const auto yw = detail::channel_ifft_unscaled(sw);
  const auto yx = detail::channel_ifft_unscaled(sx);
  const auto yy = detail::channel_ifft_unscaled(sy);
  const auto yz = detail::channel_ifft_unscaled(sz);
  SliceFunction<Scalar> f(circle);
  for (Index k = 0; k < N; ++k) {
    f.a.set(k, {yw[k].real(), yx[k].real(), yy[k].real(), yz[k].real()});
    f.b.set(k, {yw[k].imag(), yx[k].imag(), yy[k].imag(), yz[k].imag()});
  }
  return f;
}

}  // namespace qslice
