#pragma once

#include <Eigen/Core>

#include "qslice/quaternion.hpp"

namespace qslice {

/// Neumaier compensated accumulator. Fixed insertion order gives
/// bit-reproducible reductions regardless of vector length.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar v) {
    const Scalar t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_{0}, comp_{0};
};

/// Compensated sum of an Eigen expression, evaluated in index order.
template <typename Derived>
typename Derived::Scalar compensated_total(const Eigen::DenseBase<Derived>& v) {
  CompensatedSum<typename Derived::Scalar> acc;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc.add(v.derived()(i));
  return acc.value();
}

template <typename Scalar>
class CompensatedQuaternionSum {
 public:
  void add(const Quaternion<Scalar>& q) {
    w_.add(q.w); x_.add(q.x); y_.add(q.y); z_.add(q.z);
  }
  Quaternion<Scalar> value() const {
    return {w_.value(), x_.value(), y_.value(), z_.value()};
  }

 private:
  CompensatedSum<Scalar> w_, x_, y_, z_;
};

}  // namespace qslice
