#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "willmore/generators.hpp"
#include "willmore/io.hpp"

using namespace willmore;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("willmore_test_" + name);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("field files round trip exactly") {
  const TorusGrid g(ModuliPoint::make(0.2, 1.3, 0.5), 8, 12);
  const ScalarField u = generators::random_trig_metric(g, 3, 0.4, 3).u();
  const auto path = temp_file("field.json");
  io::write_field_file(path, u);
  const ScalarField v = io::read_field_file(path);
  CHECK(v.grid() == g);
  CHECK(std::equal(u.samples().begin(), u.samples().end(), v.samples().begin()));
  std::filesystem::remove(path);
}

TEST_CASE("immersion files round trip") {
  const auto path = temp_file("immersion.json");
  io::write_immersion_file(path, RevolutionTorus{3.0, 1.0});
  const ImmersedTorus t = io::read_immersion_file(path);
  REQUIRE(std::holds_alternative<RevolutionTorus>(t));
  CHECK(std::get<RevolutionTorus>(t).R == 3.0);

  const ConformalGridImmersion c = clifford_torus(8);
  io::write_immersion_file(path, c);
  const ImmersedTorus t2 = io::read_immersion_file(path);
  REQUIRE(std::holds_alternative<ConformalGridImmersion>(t2));
  const auto& c2 = std::get<ConformalGridImmersion>(t2);
  CHECK(c2.F.size() == 4);
  CHECK(std::equal(c.F[2].samples().begin(), c.F[2].samples().end(), c2.F[2].samples().begin()));
  std::filesystem::remove(path);
}

TEST_CASE("malformed files are rejected") {
  const auto path = temp_file("bad.json");
  const std::string lattice = R"("lattice": {"x": 0.0, "y": 1.0, "scale": 1.0}, "grid": [8, 8])";
  std::string zeros;
  for (int k = 0; k < 64; ++k) zeros += (k ? ",0" : "0");

  write_text(path, "{" + lattice + ", \"u\": [" + zeros + "]}");
  CHECK_NOTHROW(io::read_field_file(path));

  write_text(path, "{" + lattice + ", \"u\": [0, 1]}");
  CHECK_THROWS_AS(io::read_field_file(path), std::runtime_error);

  write_text(path, "{" + lattice + ", \"u\": [" + zeros.substr(2) + ", \"nan\"]}");
  CHECK_THROWS_AS(io::read_field_file(path), std::runtime_error);

  // 1e400 overflows to infinity.
  write_text(path, "{" + lattice + ", \"u\": [" + zeros.substr(2) + ", 1e400]}");
  CHECK_THROWS_AS(io::read_field_file(path), std::runtime_error);

  write_text(path, R"({"lattice": {"x": 0.0, "y": 0.5}, "grid": [8, 8], "u": []})");
  CHECK_THROWS_AS(io::read_field_file(path), std::runtime_error);

  write_text(path, "{not json");
  CHECK_THROWS_AS(io::read_field_file(path), std::runtime_error);

  write_text(path, R"({"kind": "revolution", "R": 1.0, "r": 2.0})");
  CHECK_THROWS_WITH_AS(io::read_immersion_file(path), "self-intersecting profile", std::runtime_error);

  write_text(path, R"({"kind": "mesh"})");
  CHECK_THROWS_AS(io::read_immersion_file(path), std::runtime_error);

  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_field_file(path), std::runtime_error);
}
