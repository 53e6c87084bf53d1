#include "qslice/verification.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "qslice/norms.hpp"
#include "qslice/projection.hpp"
#include "qslice/random_fields.hpp"
#include "qslice/search.hpp"

namespace qslice {

namespace {

constexpr double kFourThirds = 4.0 / 3.0;

class SuiteBuilder {
 public:
  explicit SuiteBuilder(const io::RunConfig& config)
      : config_(config), grid_(config.make_grid()) {}

  VerificationReport run() {
    criterion1_sphere_constant();
    criterion2_moment_family();
    run_searches();
    criterion3_endpoints();
    criterion4_operator_laws();
    criterion5_route_agreement();
    criterion6_energy_identity();
    criterion7_duality();
    criterion8_open_problem();
    criterion9_illdefined_detector();
    return report_;
  }

 private:
  void add(const std::string& name, int criterion, CheckRow::Cmp mode, double expected,
           double computed, double tol) {
    if (auto it = config_.tol_overrides.find(name); it != config_.tol_overrides.end())
      tol = it->second;
    CheckRow row{name, criterion, mode, expected, computed, tol, false};
    switch (mode) {
      case CheckRow::Cmp::AbsDiff:
        row.pass = std::abs(computed - expected) <= tol;
        break;
      case CheckRow::Cmp::LessEqual:
        row.pass = computed <= expected + tol;
        break;
      case CheckRow::Cmp::GreaterEqual:
        row.pass = computed >= expected + tol;
        break;
    }
    report_.rows.push_back(std::move(row));
  }

  SampledFunctiond random_phi(std::uint64_t stream) const {
    auto phi = random_well_defined(grid_, config_.seed * 1000003 + stream);
    const double n = lp_norm(phi, 2.0);
    phi.values *= 1.0 / n;
    return phi;
  }

  // 1. The sphere constant 4/3: aligned-coordinates quadrature vs the
  //    closed form, its independence of the imaginary unit, and the
  //    generic-frame product-rule estimate.
  void criterion1_sphere_constant() {
    auto rng = seeded_engine(config_.seed, 101);
    double worst = kFourThirds, lo = 1e300, hi = -1e300;
    for (int i = 0; i < 10; ++i) {
      const auto I = random_imaginary_unit<double>(rng);
      const double v = sphere_moment_quadrature(1.0, I, config_.n_polar);
      if (std::abs(v - kFourThirds) > std::abs(worst - kFourThirds)) worst = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    add("sphere_constant_quadrature", 1, CheckRow::Cmp::AbsDiff, kFourThirds, worst, 1e-6);
    add("sphere_constant_axis_spread", 1, CheckRow::Cmp::LessEqual, 0, hi - lo, 1e-10);
    const double prod =
        sphere_moment_product_rule(1.0, grid_->sphere, ImaginaryUnitd(1, 0, 0));
    add("sphere_constant_product_rule", 1, CheckRow::Cmp::AbsDiff, kFourThirds, prod, 1e-5);
  }

  // 2. Moment family |1-IJ|^q and the Holder bound built from it.
  void criterion2_moment_family() {
    const ImaginaryUnitd I(1, 0, 0);
    double max_err = 0;
    for (double q : {0.5, 1.0, 2.0, 3.0, 5.0})
      max_err = std::max(
          max_err, std::abs(sphere_moment_quadrature(q, I, config_.n_polar) - sphere_moment(q)));
    add("moment_family_max_error", 2, CheckRow::Cmp::LessEqual, 0, max_err, 1e-8);

    double max_gap = 0;
    for (double p : {2.0, 2.5, 3.0, 4.0, 8.0}) {
      const double q = p / (p - 1);
      max_gap = std::max(
          max_gap, std::abs(upper_bound_constant(p) - std::pow(sphere_moment(q), 1.0 / q)));
    }
    add("holder_bound_vs_moment", 2, CheckRow::Cmp::LessEqual, 0, max_gap, 1e-12);
  }

  void run_searches() {
    rep2_ = norm_lower_bound_search(grid_, 2.0, 2, 6, config_.seed);
    rep3_ = norm_lower_bound_search(grid_, 3.0, 2, 16, config_.seed);
    rep32_ = norm_lower_bound_search(grid_, 1.5, 2, 16, config_.seed);
    rep4_ = norm_lower_bound_search(grid_, 4.0, 2, 16, config_.seed);
    rep43_ = norm_lower_bound_search(grid_, 4.0 / 3.0, 2, 16, config_.seed);
  }

  // 3. Endpoint norms: the extremal function at p = infinity and the
  //    search at p = 2.
  void criterion3_endpoints() {
    const Index i0 = grid_->sphere.nearest_node(ImaginaryUnitd(1, 0, 0));
    const auto phistar = extremal_function(grid_->sphere.node(i0), grid_);
    add("extremal_ratio_inf", 3, CheckRow::Cmp::AbsDiff, kFourThirds,
        ratio(phistar, std::numeric_limits<double>::infinity()), 1e-5);
    add("search_p2_lower_bound", 3, CheckRow::Cmp::AbsDiff, 1.0, rep2_.lower_bound, 1e-6);
  }

  // 4. Projection operator laws on 50 seeded random well-defined functions.
  void criterion4_operator_laws() {
    double idem = 0, selfadj = 0, fixed = 0, defect = 0, ratio_cap = 0;
    SampledFunctiond proj, proj2, psi_proj;
    for (int i = 0; i < 50; ++i) {
      const auto phi = random_phi(10 + 2 * std::uint64_t(i));
      const auto psi = random_phi(11 + 2 * std::uint64_t(i));

      evaluate_on_grid(project_boundary(phi), grid_, proj);
      evaluate_on_grid(project_boundary(proj), grid_, proj2);
      proj2.values -= proj.values;
      idem = std::max(idem, lp_norm(proj2, 2.0));

      evaluate_on_grid(project_boundary(psi), grid_, psi_proj);
      const Quaterniond lhs = inner_product(proj, psi);
      const Quaterniond rhs = inner_product(phi, psi_proj);
      selfadj = std::max(selfadj, (lhs - rhs).norm());

      ratio_cap = std::max(ratio_cap, ratio(phi, 2.0));
      defect = std::max(defect, slice_defect(proj, 12));

      const auto slice = random_slice_function(grid_->circle, config_.seed * 977 + i, 8);
      const auto f = evaluate_on_grid(slice, grid_);
      evaluate_on_grid(project_boundary(f), grid_, proj);
      proj.values -= f.values;
      fixed = std::max(fixed, lp_norm(proj, 2.0) / lp_norm(f, 2.0));
    }
    add("idempotence_l2_max", 4, CheckRow::Cmp::LessEqual, 0, idem, 1e-11);
    add("self_adjoint_pairing_max", 4, CheckRow::Cmp::LessEqual, 0, selfadj, 1e-10);
    add("slice_fixed_point_max", 4, CheckRow::Cmp::LessEqual, 0, fixed, 1e-11);
    add("output_slice_defect_max", 4, CheckRow::Cmp::LessEqual, 0, defect, 1e-11);
    add("contraction_p2_ratio_cap", 3, CheckRow::Cmp::LessEqual, 1.0, ratio_cap, 1e-9);
  }

  // 5. Route agreement: coefficient averaging vs boundary integral vs
  //    interior kernel quadrature.
  void criterion5_route_agreement() {
    double rel = 0, interior = 0;
    SampledFunctiond pb, pf;
    for (int i = 0; i < 6; ++i) {
      const auto phi = random_phi(300 + std::uint64_t(i));
      evaluate_on_grid(project_boundary(phi), grid_, pb);
      evaluate_on_grid(project_fourier(phi), grid_, pf);
      pf.values -= pb.values;
      rel = std::max(rel, lp_norm(pf, 2.0) / lp_norm(phi, 2.0));
    }
    const double r = 0.99;
    for (int i = 0; i < 3; ++i) {
      const auto phi = random_phi(400 + std::uint64_t(i));
      const auto f = project_boundary(phi);
      const auto table = slice_coefficients(f);
      const double sup = lp_norm(phi, std::numeric_limits<double>::infinity());
      for (Index mi : {Index(0), grid_->sphere.size() / 3, 2 * grid_->sphere.size() / 3}) {
        const auto I = grid_->sphere.node(mi);
        for (double t : {0.37, grid_->circle.angle(grid_->circle.count / 3), 5.0}) {
          const Quaterniond a = project_interior(phi, r, I, t);
          const Quaterniond b = poisson_extend(table, r, I, t);
          interior = std::max(interior, (a - b).norm() / sup);
        }
      }
    }
    add("route_fourier_vs_boundary_rel", 5, CheckRow::Cmp::LessEqual, 0, rel, 1e-10);
    add("interior_vs_extension_rel", 5, CheckRow::Cmp::LessEqual, 0, interior, 1e-8);
  }

  // 6. Cancellation (energy) identity at fixed angles.
  void criterion6_energy_identity() {
    double max_gap = 0;
    for (int i = 0; i < 20; ++i) {
      const auto phi = random_phi(600 + std::uint64_t(i));
      for (int j = 0; j < 8; ++j) {
        const Index k = (grid_->circle.count * j) / 8 + 1;
        const auto [lhs, rhs] = energy_identity(phi, grid_->circle.angle(k));
        max_gap = std::max(max_gap, std::abs(lhs - rhs));
      }
    }
    add("energy_identity_max_gap", 6, CheckRow::Cmp::LessEqual, 0, max_gap, 1e-10);
  }

  // 7. Duality diagnostics for the optimizer.
  void criterion7_duality() {
    add("duality_gap_p3_vs_p1.5", 7, CheckRow::Cmp::LessEqual, 0,
        duality_gap(3.0, rep3_, rep32_), 2e-2);
    add("duality_gap_p4_vs_p4/3", 7, CheckRow::Cmp::LessEqual, 0,
        duality_gap(4.0, rep4_, rep43_), 2e-2);
    double excess = -1e300;
    for (const auto* rep : {&rep2_, &rep3_, &rep4_})
      excess = std::max(excess, rep->lower_bound - rep->upper_bound);
    add("search_below_holder_bound", 7, CheckRow::Cmp::LessEqual, 0, excess, 5e-6);
  }

  // 8. The open problem at p = 4: a certified nontrivial lower bound.
  void criterion8_open_problem() {
    add("p4_lower_bound_above_1", 8, CheckRow::Cmp::GreaterEqual, 1.0, rep4_.lower_bound,
        1e-6);
    add("p4_lower_bound_cap", 8, CheckRow::Cmp::LessEqual, 1.363462, rep4_.lower_bound, 0);
    add("p4_witness_certified", 8, CheckRow::Cmp::LessEqual, 0,
        std::abs(ratio(rep4_.witness, 4.0) - rep4_.lower_bound), 1e-12);
  }

  // 9. Ill-defined-input detector: the axis field J.
  void criterion9_illdefined_detector() {
    const auto axis_field = sample_function<double>(
        grid_, [](const ImaginaryUnitd& J, double) { return J.as_quaternion(); });
    add("illdefined_defect", 9, CheckRow::Cmp::AbsDiff, 2.0,
        validate_well_defined(axis_field), 1e-12);

    const auto pf = evaluate_on_grid(project_fourier(axis_field), grid_);
    add("illdefined_fourier_zero", 9, CheckRow::Cmp::LessEqual, 0, lp_norm(pf, 2.0), 1e-12);

    const auto f = project_boundary(axis_field);
    double dev = 0;
    for (Index k = 0; k < f.circle.count; ++k) {
      dev = std::max(dev, f.a(k).norm());
      dev = std::max(dev, (f.b(k) - Quaterniond::one()).norm());
    }
    add("illdefined_boundary_axis_identity", 9, CheckRow::Cmp::LessEqual, 0, dev, 1e-12);
  }

  io::RunConfig config_;
  std::shared_ptr<const BoundaryGrid<double>> grid_;
  VerificationReport report_;
  NormReportd rep2_, rep3_, rep32_, rep4_, rep43_;
};

}  // namespace

bool VerificationReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

bool VerificationReport::criterion_pass(int criterion) const {
  bool any = false;
  for (const auto& row : rows)
    if (row.criterion == criterion) {
      if (!row.pass) return false;
      any = true;
    }
  return any;
}

VerificationReport run_verification(const io::RunConfig& config) {
  return SuiteBuilder(config).run();
}

void print_verification_table(std::ostream& os, const VerificationReport& report) {
  os << std::left << std::setw(36) << "check" << std::setw(16) << "expected" << std::setw(16)
     << "computed" << std::setw(12) << "tolerance" << "status\n";
  for (const auto& row : report.rows) {
    const char* rel = row.mode == CheckRow::Cmp::AbsDiff
                          ? ""
                          : (row.mode == CheckRow::Cmp::LessEqual ? "<= " : ">= ");
    os << std::left << std::setw(36) << row.name << std::setw(16)
       << (rel + io::sig9(row.expected)) << std::setw(16) << io::sig9(row.computed)
       << std::setw(12) << io::sig9(row.tolerance) << (row.pass ? "PASS" : "FAIL") << '\n';
  }
}

nlohmann::json verification_json(const VerificationReport& report,
                                 const io::RunConfig& config) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    const char* mode = row.mode == CheckRow::Cmp::AbsDiff
                           ? "abs_diff"
                           : (row.mode == CheckRow::Cmp::LessEqual ? "le" : "ge");
    rows.push_back({{"name", row.name},
                    {"criterion", row.criterion},
                    {"mode", mode},
                    {"expected", row.expected},
                    {"computed", row.computed},
                    {"tolerance", row.tolerance},
                    {"pass", row.pass}});
  }
  return {{"config", io::config_json(config)},
          {"checks", std::move(rows)},
          {"all_pass", report.all_pass()}};
}

}  // namespace qslice
