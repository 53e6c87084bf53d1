// qslice: project quaternion-valued boundary functions onto slice
// functions, verify the projection-norm constants, and search for
// operator-norm lower bounds.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qslice/io.hpp"
#include "qslice/norms.hpp"
#include "qslice/projection.hpp"
#include "qslice/search.hpp"
#include "qslice/verification.hpp"

namespace {

using namespace qslice;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

io::RunConfig parse_config(const std::vector<std::string>& tol_specs, int n_polar,
                           int n_azimuth, int n_t, std::uint64_t seed) {
  io::RunConfig config;
  config.n_polar = n_polar;
  config.n_azimuth = n_azimuth;
  config.n_t = n_t;
  config.seed = seed;
  for (const auto& spec : tol_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--tol", "expected <name>=<value>");
    config.tol_overrides[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
  }
  return config;
}

int cmd_verify(const io::RunConfig& config, bool as_json, const std::string& out_path) {
  const VerificationReport report = run_verification(config);
  if (as_json) {
    const nlohmann::json j = verification_json(report, config);
    if (out_path.empty()) {
      std::cout << j.dump(2) << '\n';
    } else {
      std::ofstream out(out_path);
      out << j.dump(2) << '\n';
    }
  } else {
    print_verification_table(std::cout, report);
    std::cout << (report.all_pass() ? "all checks passed" : "CHECK FAILURES") << '\n';
  }
  return report.all_pass() ? kExitOk : kExitCheckFailure;
}

int cmd_project(const io::RunConfig& config, const std::string& input,
                const std::string& route, double r, const std::string& output, bool force,
                const std::string& summary_path) {
  const SampledFunctiond phi = io::read_sampled(input);
  const double defect = validate_well_defined(phi);
  const double well_defined_tol = [&] {
    auto it = config.tol_overrides.find("well_defined");
    return it != config.tol_overrides.end() ? it->second : 1e-9;
  }();
  if (defect > well_defined_tol && !force) {
    // locate one offending antipodal pair for the error report
    const auto& g = *phi.grid;
    for (Index k = 0; k < phi.angle_count(); ++k)
      for (Index m = 0; m < phi.node_count(); ++m) {
        const Index ma = g.sphere.antipode(m), kr = g.circle.reflect(k);
        if ((phi.values(m, k) - phi.values(ma, kr)).norm() == defect) {
          std::cerr << "error: input is not well defined on the boundary: defect "
                    << io::sig9(defect) << " > " << io::sig9(well_defined_tol)
                    << "\n  witness pair: (node " << m << ", t_idx " << k << ") vs (node "
                    << ma << ", t_idx " << kr << ")\n  pass --force to project anyway\n";
          return kExitCheckFailure;
        }
      }
    std::cerr << "error: input is not well defined (defect " << io::sig9(defect) << ")\n";
    return kExitCheckFailure;
  }

  nlohmann::json summary;
  summary["config"] = io::config_json(config);
  summary["input"] = input;
  summary["route"] = route;
  summary["well_defined_defect"] = defect;
  summary["slice_defect_before"] = slice_defect(phi);
  summary["l2_norm_input"] = lp_norm(phi, 2.0);

  if (route == "interior") {
    // interior samples at the input grid axes/angles for radius r
    SampledFunctiond out(phi.grid);
    for (Index m = 0; m < phi.node_count(); ++m) {
      const auto I = phi.grid->sphere.node(m);
      for (Index k = 0; k < phi.angle_count(); ++k)
        out.values.set(m, k, project_interior(phi, r, I, phi.grid->circle.angle(k)));
    }
    io::write_sampled(output, out);
    summary["radius"] = r;
    summary["l2_norm_output"] = lp_norm(out, 2.0);
    summary["slice_defect_after"] = slice_defect(out);
  } else {
    const SliceFunctiond f = route == "fourier" ? project_fourier(phi) : project_boundary(phi);
    io::write_slice_csv(output, f);
    const SampledFunctiond evald = evaluate_on_grid(f, phi.grid);
    summary["l2_norm_output"] = lp_norm(evald, 2.0);
    summary["slice_defect_after"] = slice_defect(evald);
  }
  summary["output"] = output;

  if (!summary_path.empty()) {
    std::ofstream out(summary_path);
    out << summary.dump(2) << '\n';
  }
  std::cout << "projected (" << route << "): slice defect " << io::sig9(summary["slice_defect_before"].get<double>())
            << " -> " << io::sig9(summary["slice_defect_after"].get<double>()) << ", L2 "
            << io::sig9(summary["l2_norm_input"].get<double>()) << " -> "
            << io::sig9(summary["l2_norm_output"].get<double>()) << '\n';
  return kExitOk;
}

int cmd_norm(const io::RunConfig& config, const std::string& p_text, const std::string& mode,
             int restarts, int iters, const std::string& output) {
  const bool is_inf = p_text == "inf" || p_text == "infinity";
  const double p = is_inf ? std::numeric_limits<double>::infinity() : std::stod(p_text);
  if (!(p >= 1))
    throw CLI::ValidationError("norm", "p must be >= 1 or the literal `inf`");

  nlohmann::json j;
  j["config"] = io::config_json(config);
  j["p"] = is_inf ? nlohmann::json("inf") : nlohmann::json(p);

  if (mode == "bound") {
    const double bound = upper_bound_constant(p);
    j["mode"] = "bound";
    j["upper_bound"] = bound;
    std::cout << "||Pi||_{p,p} <= " << io::sig9(bound) << "  (p = " << p_text << ")\n";
  } else if (mode == "extremal") {
    const auto grid = config.make_grid();
    const Index i0 = grid->sphere.nearest_node(ImaginaryUnitd(1, 0, 0));
    const auto phistar = extremal_function(grid->sphere.node(i0), grid);
    const double lower = ratio(phistar, std::numeric_limits<double>::infinity());
    j["mode"] = "extremal";
    j["lower_bound_inf"] = lower;
    j["upper_bound_inf"] = upper_bound_constant(std::numeric_limits<double>::infinity());
    std::cout << "extremal-function ratio at p = inf: " << io::sig9(lower)
              << "  (expected 4/3 = " << io::sig9(4.0 / 3.0) << ")\n";
  } else {  // search
    if (is_inf || p == 1.0) {
      std::cerr << "error: the iterative search excludes p in {1, inf}; use `--mode "
                   "extremal` for p = inf or duality (Theorem equality of conjugate "
                   "exponents) for p = 1\n";
      return kExitUsage;
    }
    const auto grid = config.make_grid();
    const NormReportd report = norm_lower_bound_search(grid, p, restarts, iters, config.seed);
    std::string witness_file;
    if (!output.empty()) {
      witness_file = output + ".witness.csv";
      io::write_sampled_csv(witness_file, report.witness);
    }
    j = io::norm_report_json(report, witness_file, config);
    std::cout << "p = " << io::sig9(p) << ": certified lower bound " << io::sig9(report.lower_bound)
              << ", Holder upper bound " << io::sig9(report.upper_bound) << '\n';
  }

  if (!output.empty()) {
    std::ofstream out(output);
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_kernel_eval(double r, const std::string& i_spec, double t, const std::string& j_spec,
                    double s) {
  auto parse_axis = [](const std::string& text) {
    double x, y, z;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &x, &y, &z) != 3)
      throw CLI::ValidationError("kernel-eval", "axis must be x,y,z");
    return ImaginaryUnitd(x, y, z);
  };
  const Quaterniond K = slice_kernel(r, parse_axis(i_spec), t, parse_axis(j_spec), s);
  std::cout << io::sig9(K.w) << ' ' << io::sig9(K.x) << ' ' << io::sig9(K.y) << ' '
            << io::sig9(K.z) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthogonal projection onto quaternionic slice functions"};
  app.require_subcommand(1);

  int n_polar = 48, n_azimuth = 96, n_t = 256;
  std::uint64_t seed = 1;
  std::vector<std::string> tol_specs;
  app.add_option("--n-polar", n_polar, "polar Gauss-Legendre points on the sphere rule");
  app.add_option("--n-azimuth", n_azimuth, "uniform azimuth points (even)");
  app.add_option("--nt", n_t, "circle grid size (even)");
  app.add_option("--seed", seed, "seed for all randomized pieces");
  app.add_option("--tol", tol_specs, "tolerance override <name>=<value>")->take_all();

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  bool as_json = false;
  std::string verify_out;
  verify->add_flag("--json", as_json, "emit a machine-readable report");
  verify->add_option("-o,--out", verify_out, "write the JSON report to a file");

  auto* project = app.add_subcommand("project", "project a sampled function file");
  std::string input, output = "projected.csv", route = "boundary", summary_path;
  double radius = 0.5;
  bool force = false;
  project->add_option("input", input, "sampled-function file (.csv or .json)")->required();
  project->add_option("-o,--out", output, "output file");
  project->add_option("--route", route, "fourier | boundary | interior")
      ->check(CLI::IsMember({"fourier", "boundary", "interior"}));
  project->add_option("--r", radius, "interior radius in [0,1) for --route interior");
  project->add_flag("--force", force, "project even if the input fails well-definedness");
  project->add_option("--summary", summary_path, "write a JSON summary to a file");

  auto* norm = app.add_subcommand("norm", "bounds and searches for ||Pi||_{p,p}");
  std::string p_text, mode = "bound", norm_out;
  int restarts = 3, iters = 20;
  norm->add_option("p", p_text, "exponent p >= 1 or `inf`")->required();
  norm->add_option("--mode", mode, "bound | search | extremal")
      ->check(CLI::IsMember({"bound", "search", "extremal"}));
  norm->add_option("--restarts", restarts, "search restarts");
  norm->add_option("--iters", iters, "iterations per restart");
  norm->add_option("-o,--out", norm_out, "write the NormReport JSON to a file");

  auto* kernel = app.add_subcommand("kernel-eval", "evaluate the slice kernel K(re^{It}, e^{Js})");
  double kr = 0, kt = 0, ks = 0;
  std::string ki, kj;
  kernel->add_option("r", kr, "radius in [0,1)")->required();
  kernel->add_option("I", ki, "left axis x,y,z")->required();
  kernel->add_option("t", kt, "left angle")->required();
  kernel->add_option("J", kj, "right axis x,y,z")->required();
  kernel->add_option("s", ks, "right angle")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help/error text
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    const io::RunConfig config = parse_config(tol_specs, n_polar, n_azimuth, n_t, seed);
    if (verify->parsed()) return cmd_verify(config, as_json, verify_out);
    if (project->parsed())
      return cmd_project(config, input, route, radius, output, force, summary_path);
    if (norm->parsed()) return cmd_norm(config, p_text, mode, restarts, iters, norm_out);
    if (kernel->parsed()) return cmd_kernel_eval(kr, ki, kt, kj, ks);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
