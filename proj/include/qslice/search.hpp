#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qslice/norms.hpp"
#include "qslice/projection.hpp"
#include "qslice/random_fields.hpp"

namespace qslice {

/// Pointwise duality map psi -> psi |psi|^{p-2} (quaternion modulus), with
/// 0 -> 0. Pairs L^p with its conjugate exponent.
template <typename Scalar>
void duality_map_inplace(SampledFunction<Scalar>& phi, Scalar p) {
  const Scalar e = p - 2;
  if (e == Scalar(0)) return;
  const ArrayXX<Scalar> mod = phi.values.modulus();
  ArrayXX<Scalar> factor =
      (mod > Scalar(0)).select(mod.pow(e), ArrayXX<Scalar>::Zero(mod.rows(), mod.cols()));
  phi.values.scale_pointwise(factor);
}

/// Certified lower-bound record for ||Pi||_{p,p}.
template <typename Scalar>
struct NormReport {
  Scalar p{2};
  Scalar q{2};                   // conjugate exponent
  Scalar upper_bound{0};         // Holder bound (valid for p >= 2; duality below)
  Scalar lower_bound{0};         // best certified ratio found
  SampledFunction<Scalar> witness;
  std::vector<Scalar> iterations;  // running best ratio, monotone nondecreasing
};

using NormReportd = NormReport<double>;

/// Nonlinear power iteration for lower bounds on ||Pi||_{p,p}, p in (1, inf):
/// from a seeded random well-defined start, repeat
///   u = Pi phi;  v = Pi(u |u|^{p-2});  phi = v |v|^{q-2}, renormalized,
/// recording the best ratio ||Pi phi||_p / ||phi||_p across iterations and
/// restarts. Every iterate is a mathematically valid lower bound; no
/// global-optimality claim is made.
template <typename Scalar>
NormReport<Scalar> norm_lower_bound_search(std::shared_ptr<const BoundaryGrid<Scalar>> grid,
                                           Scalar p, int restarts, int iters,
                                           std::uint64_t seed) {
  if (!(p > Scalar(1)) || std::isinf(p))
    throw std::invalid_argument("norm_lower_bound_search: requires finite p > 1");
  if (restarts < 1 || iters < 1)
    throw std::invalid_argument("norm_lower_bound_search: restarts/iters >= 1");
  const Scalar q = p / (p - 1);

  NormReport<Scalar> report;
  report.p = p;
  report.q = q;
  report.upper_bound = upper_bound_constant(p);
  report.lower_bound = 0;

  SampledFunction<Scalar> u, v;
  for (int restart = 0; restart < restarts; ++restart) {
    SampledFunction<Scalar> phi;
    Scalar norm_phi = 0;
    std::uint64_t resample = 0;
    do {  // degenerate starts (Pi phi = 0) are resampled
      phi = random_well_defined(grid, seed + 7919 * std::uint64_t(restart) + resample);
      norm_phi = lp_norm(phi, p);
      if (resample++ > 64)
        throw std::runtime_error("norm_lower_bound_search: cannot find nondegenerate start");
    } while (!(norm_phi > Scalar(0)) ||
             !(lp_norm(evaluate_on_grid(project_boundary(phi), grid), p) > Scalar(0)));

    for (int it = 0; it < iters; ++it) {
      evaluate_on_grid(project_boundary(phi), grid, u);
      const Scalar r = lp_norm(u, p) / lp_norm(phi, p);
      if (r > report.lower_bound) {
        report.lower_bound = r;
        report.witness = phi;
      }
      report.iterations.push_back(report.lower_bound);

      duality_map_inplace(u, p);
      evaluate_on_grid(project_boundary(u), grid, v);
      duality_map_inplace(v, q);
      const Scalar n = lp_norm(v, p);
      if (!(n > Scalar(0))) break;  // iteration collapsed; keep best so far
      v.values *= Scalar(1) / n;
      std::swap(phi, v);
    }
  }
  return report;
}

/// |lower_p - lower_q| for reports at conjugate exponents: a diagnostic of
/// optimizer convergence (the norms themselves are equal by duality).
template <typename Scalar>
Scalar duality_gap(Scalar p, const NormReport<Scalar>& report_p,
                   const NormReport<Scalar>& report_q) {
  if (!(p > Scalar(1)) || std::isinf(p))
    throw std::invalid_argument("duality_gap: requires finite p > 1 (endpoints go through "
                                "the extremal function and duality)");
  if (std::abs(report_p.p - p) > Scalar(1e-12))
    throw std::invalid_argument("duality_gap: report_p is not at exponent p");
  if (std::abs(Scalar(1) / report_q.p + Scalar(1) / p - Scalar(1)) > Scalar(1e-9))
    throw std::invalid_argument("duality_gap: exponents not conjugate");
  return std::abs(report_p.lower_bound - report_q.lower_bound);
}

}  // namespace qslice
