#pragma once

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <ostream>
#include <stdexcept>

namespace qslice {

/// Modulus below which a quaternion is treated as a zero divisor by inverse().
/// Far above quadrature noise, far below any |1-IJ| sample off the pole set.
inline constexpr double kZeroDivisorEps = 1e-12;

/// Element of the real algebra H = R + Ri + Rj + Rk.
template <typename Scalar>
struct Quaternion {
  Scalar w{0}, x{0}, y{0}, z{0};

  constexpr Quaternion() = default;
  constexpr Quaternion(Scalar w_, Scalar x_, Scalar y_, Scalar z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion zero() { return {}; }
  static constexpr Quaternion one() { return {Scalar(1), 0, 0, 0}; }

  constexpr Scalar squared_norm() const { return w * w + x * x + y * y + z * z; }
  Scalar norm() const { return std::sqrt(squared_norm()); }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr Scalar real() const { return w; }
  constexpr Quaternion imag() const { return {0, x, y, z}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z; return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z; return *this;
  }
  constexpr Quaternion& operator*=(Scalar s) {
    w *= s; x *= s; y *= s; z *= s; return *this;
  }
  constexpr Quaternion& operator/=(Scalar s) {
    w /= s; x /= s; y /= s; z /= s; return *this;
  }
};

using Quaterniond = Quaternion<double>;

template <typename S>
constexpr Quaternion<S> operator+(Quaternion<S> a, const Quaternion<S>& b) { return a += b; }
template <typename S>
constexpr Quaternion<S> operator-(Quaternion<S> a, const Quaternion<S>& b) { return a -= b; }
template <typename S>
constexpr Quaternion<S> operator-(const Quaternion<S>& a) { return {-a.w, -a.x, -a.y, -a.z}; }
template <typename S>
constexpr Quaternion<S> operator*(Quaternion<S> a, S s) { return a *= s; }
template <typename S>
constexpr Quaternion<S> operator*(S s, Quaternion<S> a) { return a *= s; }
template <typename S>
constexpr Quaternion<S> operator/(Quaternion<S> a, S s) { return a /= s; }

/// Hamilton product; non-commutative (ij = k = -ji).
template <typename S>
constexpr Quaternion<S> operator*(const Quaternion<S>& a, const Quaternion<S>& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

template <typename S>
constexpr Quaternion<S> conj(const Quaternion<S>& a) { return a.conj(); }

/// Euclidean pairing of the four components: Re(conj(a) b).
template <typename S>
constexpr S dot(const Quaternion<S>& a, const Quaternion<S>& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// a^{-1} = conj(a)/|a|^2. Throws on (near) zero divisors.
template <typename S>
Quaternion<S> inverse(const Quaternion<S>& a, S eps = S(kZeroDivisorEps)) {
  const S n2 = a.squared_norm();
  if (n2 < eps * eps)
    throw std::domain_error("quaternion inverse: modulus below zero-divisor epsilon");
  return a.conj() / n2;
}

template <typename S>
bool approx_equal(const Quaternion<S>& a, const Quaternion<S>& b, S tol) {
  return (a - b).norm() <= tol;
}

/// Point of the sphere S = {q : q^2 = -1} of imaginary units, I = xi + yj + zk.
template <typename Scalar>
struct ImaginaryUnit {
  Scalar x{1}, y{0}, z{0};

  constexpr ImaginaryUnit() = default;

  /// Normalizes the given direction; rejects the zero vector.
  ImaginaryUnit(Scalar x_, Scalar y_, Scalar z_) {
    const Scalar n = std::sqrt(x_ * x_ + y_ * y_ + z_ * z_);
    if (!(n > Scalar(0)))
      throw std::invalid_argument("ImaginaryUnit: zero direction");
    x = x_ / n; y = y_ / n; z = z_ / n;
  }

  constexpr Quaternion<Scalar> as_quaternion() const { return {0, x, y, z}; }
  constexpr ImaginaryUnit operator-() const {
    ImaginaryUnit r; r.x = -x; r.y = -y; r.z = -z; return r;
  }
};

using ImaginaryUnitd = ImaginaryUnit<double>;

template <typename S>
constexpr S dot(const ImaginaryUnit<S>& a, const ImaginaryUnit<S>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

/// e^{It} = cos t + I sin t; always unit modulus.
template <typename S>
Quaternion<S> exp_unit(const ImaginaryUnit<S>& axis, S t) {
  const S c = std::cos(t), s = std::sin(t);
  return {c, axis.x * s, axis.y * s, axis.z * s};
}

/// Deterministic sign convention for an axis representing a real boundary
/// point (sin t = 0), where the axis is otherwise arbitrary: flip so the
/// last nonzero of (z, y, x) is positive.
template <typename S>
ImaginaryUnit<S> canonical_sign(const ImaginaryUnit<S>& a) {
  const bool flip = (a.z < 0) || (a.z == 0 && (a.y < 0 || (a.y == 0 && a.x < 0)));
  return flip ? -a : a;
}

/// Boundary point q = e^{It} of the unit ball in H.
/// (I, t) and (-I, 2pi - t) name the same point (double cover).
template <typename Scalar>
struct BoundaryPoint {
  ImaginaryUnit<Scalar> axis;
  Scalar angle{0};                 // radians in [0, 2pi)
  bool axis_arbitrary{false};      // true at real points q = +-1

  Quaternion<Scalar> point() const { return exp_unit(axis, angle); }
};

using BoundaryPointd = BoundaryPoint<double>;

/// Canonical representative: t = arccos(Re q) in [0, pi], I = Im(q)/|Im(q)|.
/// Real points carry the canonical-sign axis and are flagged.
template <typename S>
BoundaryPoint<S> canonical_boundary_point(const Quaternion<S>& q, S eps = S(kZeroDivisorEps)) {
  const S n = q.norm();
  if (std::abs(n - S(1)) > S(1e-9))
    throw std::invalid_argument("canonical_boundary_point: |q| != 1");
  BoundaryPoint<S> bp;
  const S c = std::clamp(q.w / n, S(-1), S(1));
  bp.angle = std::acos(c);
  const S im = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  if (im < eps) {
    bp.axis = canonical_sign(ImaginaryUnit<S>(1, 0, 0));
    bp.axis_arbitrary = true;
  } else {
    bp.axis = ImaginaryUnit<S>(q.x, q.y, q.z);
  }
  return bp;
}

/// Canonical axis of the grid pair (J, t): J itself for t in (0, pi),
/// -J for t in (pi, 2pi), fixed-sign convention at sin t = 0.
template <typename S>
ImaginaryUnit<S> canonical_axis(const ImaginaryUnit<S>& axis, S t) {
  constexpr S pi = S(3.14159265358979323846264338327950288);
  if (t > S(0) && t < pi) return axis;
  if (t > pi) return -axis;
  return canonical_sign(axis);
}

template <typename S>
std::ostream& operator<<(std::ostream& os, const Quaternion<S>& q) {
  return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

}  // namespace qslice
