#include "qslice/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qslice::io {

namespace {

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json grid_json(const BoundaryGrid<double>& grid) {
  return {{"rule", kRuleName},
          {"n_polar", grid.sphere.n_polar},
          {"n_azimuth", grid.sphere.n_azimuth},
          {"n_t", grid.circle.count}};
}

GridSpec parse_grid_json(const nlohmann::json& j) {
  if (j.value("rule", std::string()) != kRuleName)
    throw std::runtime_error("unsupported grid rule in file");
  GridSpec spec;
  spec.n_polar = j.at("n_polar").get<int>();
  spec.n_azimuth = j.at("n_azimuth").get<int>();
  spec.n_t = j.at("n_t").get<int>();
  return spec;
}

std::shared_ptr<const BoundaryGrid<double>> grid_from_spec(const GridSpec& spec) {
  return make_boundary_grid<double>(spec.n_polar, spec.n_azimuth, spec.n_t);
}

}  // namespace

std::string sig9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

GridSpec spec_of(const BoundaryGrid<double>& grid) {
  return {grid.sphere.n_polar, grid.sphere.n_azimuth, grid.circle.count};
}

nlohmann::json config_json(const RunConfig& config) {
  nlohmann::json tols = nlohmann::json::object();
  for (const auto& [name, value] : config.tol_overrides) tols[name] = value;
  return {{"version", kLibraryVersion},
          {"n_polar", config.n_polar},
          {"n_azimuth", config.n_azimuth},
          {"n_t", config.n_t},
          {"seed", config.seed},
          {"tol_overrides", tols}};
}

void write_sampled_csv(const std::filesystem::path& path, const SampledFunctiond& phi) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "# grid: " << grid_json(*phi.grid).dump() << "\n";
  out << "polar_idx,azimuth_idx,t_idx,w,x,y,z\n";
  const int na = phi.grid->sphere.n_azimuth;
  for (Index m = 0; m < phi.node_count(); ++m)
    for (Index k = 0; k < phi.angle_count(); ++k) {
      const Quaterniond q = phi.values(m, k);
      out << m / na << ',' << m % na << ',' << k << ',' << full_precision(q.w) << ','
          << full_precision(q.x) << ',' << full_precision(q.y) << ',' << full_precision(q.z)
          << '\n';
    }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

SampledFunctiond read_sampled_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# grid: ", 0) != 0)
    throw std::runtime_error("missing `# grid:` header line: " + path.string());
  const GridSpec spec = parse_grid_json(nlohmann::json::parse(line.substr(8)));
  auto grid = grid_from_spec(spec);
  if (!std::getline(in, line) || line != "polar_idx,azimuth_idx,t_idx,w,x,y,z")
    throw std::runtime_error("bad CSV header: " + path.string());

  SampledFunctiond phi(grid);
  ArrayXX<double> seen = ArrayXX<double>::Zero(phi.node_count(), phi.angle_count());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    long ip, ia, it;
    double w, x, y, z;
    if (std::sscanf(line.c_str(), "%ld,%ld,%ld,%lf,%lf,%lf,%lf", &ip, &ia, &it, &w, &x, &y,
                    &z) != 7)
      throw std::runtime_error("bad CSV row: " + line);
    if (ip < 0 || ip >= spec.n_polar || ia < 0 || ia >= spec.n_azimuth || it < 0 ||
        it >= spec.n_t)
      throw std::runtime_error("CSV index out of range: " + line);
    const Index m = Index(ip) * spec.n_azimuth + Index(ia);
    phi.values.set(m, Index(it), {w, x, y, z});
    seen(m, Index(it)) = 1;
  }
  if (seen.minCoeff() < 1) throw std::runtime_error("CSV is missing grid samples");
  return phi;
}

void write_sampled_json(const std::filesystem::path& path, const SampledFunctiond& phi) {
  nlohmann::json rows = nlohmann::json::array();
  const int na = phi.grid->sphere.n_azimuth;
  for (Index m = 0; m < phi.node_count(); ++m)
    for (Index k = 0; k < phi.angle_count(); ++k) {
      const Quaterniond q = phi.values(m, k);
      rows.push_back({m / na, m % na, k, q.w, q.x, q.y, q.z});
    }
  nlohmann::json j = {{"format", "qslice.sampled_function"},
                      {"grid", grid_json(*phi.grid)},
                      {"values", std::move(rows)}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << j.dump() << '\n';
}

SampledFunctiond read_sampled_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  nlohmann::json j;
  in >> j;
  const GridSpec spec = parse_grid_json(j.at("grid"));
  auto grid = grid_from_spec(spec);
  SampledFunctiond phi(grid);
  ArrayXX<double> seen = ArrayXX<double>::Zero(phi.node_count(), phi.angle_count());
  for (const auto& row : j.at("values")) {
    const long ip = row.at(0).get<long>(), ia = row.at(1).get<long>(), it = row.at(2).get<long>();
    if (ip < 0 || ip >= spec.n_polar || ia < 0 || ia >= spec.n_azimuth || it < 0 ||
        it >= spec.n_t)
      throw std::runtime_error("JSON index out of range");
    const Index m = Index(ip) * spec.n_azimuth + Index(ia);
    phi.values.set(m, Index(it),
                   {row.at(3).get<double>(), row.at(4).get<double>(), row.at(5).get<double>(),
                    row.at(6).get<double>()});
    seen(m, Index(it)) = 1;
  }
  if (seen.minCoeff() < 1) throw std::runtime_error("JSON is missing grid samples");
  return phi;
}

SampledFunctiond read_sampled(const std::filesystem::path& path) {
  if (path.extension() == ".json") return read_sampled_json(path);
  return read_sampled_csv(path);
}

void write_sampled(const std::filesystem::path& path, const SampledFunctiond& phi) {
  if (path.extension() == ".json")
    write_sampled_json(path, phi);
  else
    write_sampled_csv(path, phi);
}

void write_slice_csv(const std::filesystem::path& path, const SliceFunctiond& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "# grid: " << nlohmann::json{{"n_t", f.circle.count}}.dump() << "\n";
  out << "t_idx,a_w,a_x,a_y,a_z,b_w,b_x,b_y,b_z\n";
  for (Index k = 0; k < f.circle.count; ++k) {
    const Quaterniond a = f.a(k), b = f.b(k);
    out << k << ',' << full_precision(a.w) << ',' << full_precision(a.x) << ','
        << full_precision(a.y) << ',' << full_precision(a.z) << ',' << full_precision(b.w)
        << ',' << full_precision(b.x) << ',' << full_precision(b.y) << ','
        << full_precision(b.z) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

SliceFunctiond read_slice_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# grid: ", 0) != 0)
    throw std::runtime_error("missing `# grid:` header line: " + path.string());
  const int n_t = nlohmann::json::parse(line.substr(8)).at("n_t").get<int>();
  if (!std::getline(in, line) || line != "t_idx,a_w,a_x,a_y,a_z,b_w,b_x,b_y,b_z")
    throw std::runtime_error("bad CSV header: " + path.string());
  SliceFunctiond f(build_circle_grid<double>(n_t));
  ArrayX<double> seen = ArrayX<double>::Zero(n_t);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    long it;
    double aw, ax, ay, az, bw, bx, by, bz;
    if (std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &it, &aw, &ax, &ay,
                    &az, &bw, &bx, &by, &bz) != 9)
      throw std::runtime_error("bad CSV row: " + line);
    if (it < 0 || it >= n_t) throw std::runtime_error("CSV index out of range: " + line);
    f.a.set(Index(it), {aw, ax, ay, az});
    f.b.set(Index(it), {bw, bx, by, bz});
    seen[Index(it)] = 1;
  }
  if (seen.minCoeff() < 1) throw std::runtime_error("CSV is missing circle samples");
  return f;
}

nlohmann::json norm_report_json(const NormReportd& report, const std::string& witness_file,
                                const RunConfig& config) {
  return {{"p", report.p},
          {"q", report.q},
          {"upper_bound", report.upper_bound},
          {"lower_bound", report.lower_bound},
          {"iterations", report.iterations},
          {"witness_file", witness_file},
          {"config", config_json(config)}};
}

}  // namespace qslice::io
