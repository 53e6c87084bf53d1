#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qslice/grids.hpp"

namespace qslice {

/// Bilinear interpolation of a sampled function in (polar angle, azimuth)
/// on the sphere-rule lattice, for evaluation at off-grid axes. Azimuth
/// wraps; polar clamps to the extreme Gauss-Legendre rings (the rule has
/// no nodes at the poles). Used by the rotation-averaging projector.
template <typename Scalar>
class SphereInterpolator {
 public:
  explicit SphereInterpolator(const SphereRule<Scalar>& rule) : rule_(&rule) {
    const int np = rule.n_polar;
    theta_.resize(static_cast<size_t>(np));
    // polar_u ascending => theta descending; store ascending with row map
    for (int i = 0; i < np; ++i)
      theta_[static_cast<size_t>(i)] = std::acos(std::clamp<Scalar>(rule.polar_u[np - 1 - i], -1, 1));
  }

  struct Stencil {
    Index row[4];
    Scalar weight[4];
  };

  Stencil stencil(const ImaginaryUnit<Scalar>& dir) const {
    const auto& rule = *rule_;
    const int np = rule.n_polar, na = rule.n_azimuth;
    const Scalar two_pi = Scalar(2) * Scalar(3.14159265358979323846264338327950288);

    const Scalar theta = std::acos(std::clamp<Scalar>(dir.z, -1, 1));
    Scalar phi = std::atan2(dir.y, dir.x);
    if (phi < 0) phi += two_pi;

    // polar cell (clamped)
    int i1 = static_cast<int>(std::upper_bound(theta_.begin(), theta_.end(), theta) -
                              theta_.begin());
    int i0 = i1 - 1;
    Scalar wt;
    if (i0 < 0) {
      i0 = 0; i1 = 0; wt = 0;
    } else if (i1 >= np) {
      i0 = np - 1; i1 = np - 1; wt = 0;
    } else {
      wt = (theta - theta_[static_cast<size_t>(i0)]) /
           (theta_[static_cast<size_t>(i1)] - theta_[static_cast<size_t>(i0)]);
    }

    const Scalar ha = two_pi / Scalar(na);
    int j0 = static_cast<int>(std::floor(phi / ha));
    if (j0 >= na) j0 = na - 1;
    const int j1 = (j0 + 1) % na;
    const Scalar wa = phi / ha - Scalar(j0);

    // theta index i maps to polar row np-1-i
    const auto row = [&](int i, int j) { return Index(np - 1 - i) * na + j; };
    Stencil s;
    s.row[0] = row(i0, j0); s.weight[0] = (1 - wt) * (1 - wa);
    s.row[1] = row(i0, j1); s.weight[1] = (1 - wt) * wa;
    s.row[2] = row(i1, j0); s.weight[2] = wt * (1 - wa);
    s.row[3] = row(i1, j1); s.weight[3] = wt * wa;
    return s;
  }

  /// Values of phi along the whole circle at the off-grid axis `dir`.
  void interpolate_series(const SampledFunction<Scalar>& phi, const ImaginaryUnit<Scalar>& dir,
                          QuaternionSeries<Scalar>& out) const {
    const Stencil s = stencil(dir);
    const auto& v = phi.values;
    out.w = s.weight[0] * v.w.row(s.row[0]).transpose() + s.weight[1] * v.w.row(s.row[1]).transpose() +
            s.weight[2] * v.w.row(s.row[2]).transpose() + s.weight[3] * v.w.row(s.row[3]).transpose();
    out.x = s.weight[0] * v.x.row(s.row[0]).transpose() + s.weight[1] * v.x.row(s.row[1]).transpose() +
            s.weight[2] * v.x.row(s.row[2]).transpose() + s.weight[3] * v.x.row(s.row[3]).transpose();
    out.y = s.weight[0] * v.y.row(s.row[0]).transpose() + s.weight[1] * v.y.row(s.row[1]).transpose() +
            s.weight[2] * v.y.row(s.row[2]).transpose() + s.weight[3] * v.y.row(s.row[3]).transpose();
    out.z = s.weight[0] * v.z.row(s.row[0]).transpose() + s.weight[1] * v.z.row(s.row[1]).transpose() +
            s.weight[2] * v.z.row(s.row[2]).transpose() + s.weight[3] * v.z.row(s.row[3]).transpose();
  }

 private:
  const SphereRule<Scalar>* rule_;
  std::vector<Scalar> theta_;  // ascending
};

}  // namespace qslice
