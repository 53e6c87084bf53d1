#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qslice/io.hpp"
#include "qslice/random_fields.hpp"

using namespace qslice;

namespace {
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("qslice_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};
}  // namespace

TEST_CASE("sampled function CSV round trip") {
  TempDir tmp;
  auto grid = make_boundary_grid<double>(4, 8, 8);
  const auto phi = random_well_defined(grid, 301);
  const auto file = tmp.path / "phi.csv";
  io::write_sampled_csv(file, phi);
  const auto back = io::read_sampled(file);
  CHECK(back.node_count() == phi.node_count());
  CHECK(back.angle_count() == phi.angle_count());
  double worst = 0;
  for (Index m = 0; m < phi.node_count(); ++m)
    for (Index k = 0; k < phi.angle_count(); ++k)
      worst = std::max(worst, (back.values(m, k) - phi.values(m, k)).norm());
  CHECK(worst == 0.0);  // full-precision serialization
}

TEST_CASE("sampled function JSON round trip") {
  TempDir tmp;
  auto grid = make_boundary_grid<double>(4, 8, 8);
  const auto phi = random_well_defined(grid, 302);
  const auto file = tmp.path / "phi.json";
  io::write_sampled(file, phi);
  const auto back = io::read_sampled(file);
  double worst = 0;
  for (Index m = 0; m < phi.node_count(); ++m)
    for (Index k = 0; k < phi.angle_count(); ++k)
      worst = std::max(worst, (back.values(m, k) - phi.values(m, k)).norm());
  CHECK(worst == 0.0);
}

TEST_CASE("slice function CSV round trip") {
  TempDir tmp;
  const auto circle = build_circle_grid<double>(16);
  const auto f = random_slice_function(circle, 303, 5);
  const auto file = tmp.path / "slice.csv";
  io::write_slice_csv(file, f);
  const auto back = io::read_slice_csv(file);
  CHECK(back.circle.count == 16);
  double worst = 0;
  for (Index k = 0; k < 16; ++k) {
    worst = std::max(worst, (back.a(k) - f.a(k)).norm());
    worst = std::max(worst, (back.b(k) - f.b(k)).norm());
  }
  CHECK(worst == 0.0);
}

TEST_CASE("malformed files are rejected") {
  TempDir tmp;
  const auto file = tmp.path / "bad.csv";
  {
    std::ofstream out(file);
    out << "polar_idx,azimuth_idx,t_idx,w,x,y,z\n0,0,0,1,0,0,0\n";  // no grid line
  }
  CHECK_THROWS_AS((void)io::read_sampled(file), std::runtime_error);

  const auto missing = tmp.path / "missing.csv";
  {
    std::ofstream out(missing);
    out << "# grid: {\"rule\":\"gauss_legendre_product\",\"n_polar\":4,\"n_azimuth\":8,"
           "\"n_t\":8}\n";
    out << "polar_idx,azimuth_idx,t_idx,w,x,y,z\n0,0,0,1,0,0,0\n";  // only one sample
  }
  CHECK_THROWS_AS((void)io::read_sampled(missing), std::runtime_error);
  CHECK_THROWS_AS((void)io::read_sampled(tmp.path / "nonexistent.csv"), std::runtime_error);
}

TEST_CASE("norm report JSON carries the config echo") {
  io::RunConfig config;
  config.n_polar = 8;
  config.n_azimuth = 16;
  config.n_t = 16;
  config.seed = 55;
  auto grid = config.make_grid();
  const auto report = norm_lower_bound_search(grid, 2.0, 1, 3, config.seed);
  const auto j = io::norm_report_json(report, "witness.csv", config);
  CHECK(j.at("p").get<double>() == 2.0);
  CHECK(j.at("q").get<double>() == 2.0);
  CHECK(j.at("witness_file").get<std::string>() == "witness.csv");
  CHECK(j.at("config").at("seed").get<std::uint64_t>() == 55);
  CHECK(j.at("config").at("n_polar").get<int>() == 8);
  CHECK(j.at("config").at("version").get<std::string>() == io::kLibraryVersion);
  CHECK(j.at("iterations").size() == 3);
}

TEST_CASE("sig9 formatting") {
  CHECK(io::sig9(4.0 / 3.0) == "1.33333333");
  CHECK(io::sig9(1.0) == "1");
}
