#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "qslice/grids.hpp"
#include "qslice/search.hpp"
#include "qslice/slice.hpp"

namespace qslice::io {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr const char* kRuleName = "gauss_legendre_product";

/// Grid sizes and seed shared by the CLI and the verification suite; echoed
/// into every output artifact.
struct RunConfig {
  int n_polar = 48;
  int n_azimuth = 96;
  int n_t = 256;
  std::uint64_t seed = 1;
  std::map<std::string, double> tol_overrides;
  std::string output_path;

  std::shared_ptr<const BoundaryGrid<double>> make_grid() const {
    return make_boundary_grid<double>(n_polar, n_azimuth, n_t);
  }
};

nlohmann::json config_json(const RunConfig& config);

/// 9-significant-digit formatting for console output.
std::string sig9(double v);

struct GridSpec {
  int n_polar = 0, n_azimuth = 0, n_t = 0;
};
GridSpec spec_of(const BoundaryGrid<double>& grid);

/// Sampled-function files. CSV columns: polar_idx,azimuth_idx,t_idx,w,x,y,z
/// with a leading `# grid: {...}` line so files are self-describing; the
/// JSON form carries the same rows as an array.
void write_sampled_csv(const std::filesystem::path& path, const SampledFunctiond& phi);
SampledFunctiond read_sampled_csv(const std::filesystem::path& path);
void write_sampled_json(const std::filesystem::path& path, const SampledFunctiond& phi);
SampledFunctiond read_sampled_json(const std::filesystem::path& path);

/// Dispatch on extension (.csv / .json).
SampledFunctiond read_sampled(const std::filesystem::path& path);
void write_sampled(const std::filesystem::path& path, const SampledFunctiond& phi);

/// Slice-function CSV: t_idx,a_w,a_x,a_y,a_z,b_w,b_x,b_y,b_z.
void write_slice_csv(const std::filesystem::path& path, const SliceFunctiond& f);
SliceFunctiond read_slice_csv(const std::filesystem::path& path);

/// NormReport JSON: {p, q, upper_bound, lower_bound, iterations, witness_file}.
nlohmann::json norm_report_json(const NormReportd& report, const std::string& witness_file,
                                const RunConfig& config);

}  // namespace qslice::io
