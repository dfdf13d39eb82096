#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "tatrev/io.hpp"
#include "tatrev/spectral.hpp"
#include "test_helpers.hpp"

using namespace tatrev;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "tatrev_test_io";
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("field CSV round trip is bit-exact") {
  const Grid2D g = Grid2D::make(33);
  ScalarField f = tatrev::testing::random_smooth_field(g, 77, 10);
  f(0, 0) = 1.0 / 3.0;
  f(1, 2) = -1e-300;
  const fs::path p = scratch_dir() / "f.csv";
  write_field_csv(p, f);
  const ScalarField back = read_field_csv(p);
  CHECK(back.grid().n == g.n);
  CHECK((back.values() == f.values()).all());
  CHECK((read_field(p).values() == f.values()).all());
  CHECK_THROWS_AS(read_field_csv(p, Grid2D::make(17)), DimensionError);
}

TEST_CASE("field CSV errors carry line numbers") {
  const fs::path p = scratch_dir() / "bad.csv";
  write_text(p, "# tatrev-field v1 n=3\n1,2,3\n4,x,6\n7,8,9\n");
  try {
    read_field_csv(p);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  write_text(p, "1,2,3\n4,5\n7,8,9\n");
  CHECK_THROWS_AS(read_field_csv(p), ParseError);
  CHECK_THROWS_AS(read_field_csv(scratch_dir() / "missing.csv"), Error);
}

TEST_CASE("graymap round trip within quantisation") {
  const Grid2D g = Grid2D::make(33);
  const ScalarField f = tatrev::testing::random_smooth_field(g, 3, 6);
  const fs::path p = scratch_dir() / "f.pgm";
  write_field_pgm(p, f);
  const ScalarField back = read_field_pgm(p);
  const double range = f.values().maxCoeff() - f.values().minCoeff();
  CHECK((back.values() - f.values()).abs().maxCoeff() <= range / 65535.0);
  CHECK_THROWS_AS(read_field(scratch_dir() / "f.txt"), Error);

  // Binary 16-bit graymap.
  std::ifstream in(p, std::ios::binary);
  std::string magic;
  in >> magic;
  CHECK(magic == "P5");
}

TEST_CASE("trace CSV round trip") {
  const Grid2D g = Grid2D::make(17);
  const BoundarySpec lb = BoundarySpec::left_bottom(g);
  const BoundaryTrace d = synthesize_data(tatrev::testing::random_smooth_field(g, 4, 4), lb, 1.0, g.dt);
  const fs::path p = scratch_dir() / "trace.csv";
  write_trace_csv(p, d);
  const BoundaryTrace back = read_trace_csv(p, lb);
  CHECK((back.samples() == d.samples()).all());
  CHECK(back.grid().dt == doctest::Approx(g.dt).epsilon(1e-12));
  CHECK(back.steps() == d.steps());

  CHECK_THROWS_AS(read_trace_csv(p, BoundarySpec::full(Grid2D::make(9))), DimensionError);
}

TEST_CASE("run configuration") {
  SUBCASE("defaults") {
    const RunConfig c = parse_config_text("");
    CHECK(c.n == 257);
    CHECK(c.dt_factor == 0.5);
    CHECK(c.T == 5.0);
    CHECK(c.gamma == "full");
    CHECK(c.lambda == 1.0);
    CHECK(c.noise == 0.0);
    CHECK(c.iterations == 1);
    CHECK(c.subspace == Subspace::H1);
    CHECK(c.reference);
    CHECK(c.phantom_bumps().size() == 6);
  }
  SUBCASE("values, comments and whitespace") {
    const RunConfig c = parse_config_text(
        "# comment\n n = 65\nT=1.6 # trailing\ndt_snap = true\ngamma = left_bottom\n"
        "bump = 0.1, 0.2, 0.3, 1.5\nsubspace = H0\nreference = none\nseed = 12345678901\n");
    CHECK(c.n == 65);
    CHECK(c.T == 1.6);
    CHECK(c.dt_snap);
    CHECK(c.gamma == "left_bottom");
    CHECK(c.phantom == "custom");
    REQUIRE(c.bumps.size() == 1);
    CHECK(c.bumps[0].radius == 0.3);
    CHECK(c.subspace == Subspace::H0);
    CHECK_FALSE(c.reference);
    CHECK(c.seed == 12345678901ull);
    const Grid2D g = c.grid();
    CHECK(g.steps_for(1.6) > 0);
    CHECK(c.boundary(g).gamma().count() == 2 * 65 - 1);
  }
  SUBCASE("explicit node lists") {
    RunConfig c;
    c.n = 9;
    apply_setting(c, "gamma", "0,3-5");
    const BoundarySpec s = c.boundary(c.grid());
    CHECK(s.gamma().count() == 4);
    CHECK(s.gamma()(4));
  }
  SUBCASE("errors name the key and line") {
    CHECK_THROWS_WITH_AS(parse_config_text("n = 65\nT = -1\n"), doctest::Contains("line 2"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("T = abc\n"), doctest::Contains("'T'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("colour = red\n"), doctest::Contains("colour"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("just words\n"), ParseError);
    CHECK_THROWS_AS(parse_config_text("dt_factor = 0.9\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("subspace = H2\n"), ConfigError);
  }
}

TEST_CASE("shortest decimals") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  for (double v : {1.0 / 3.0, 1e-300, -123.456e7}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("empty trace is header-only") {
  const Grid2D g = Grid2D::make(5);
  const BoundarySpec full = BoundarySpec::full(g);
  const BoundaryTrace empty(full, TraceArray(0, full.size()));
  const fs::path p = scratch_dir() / "empty.csv";
  write_trace_csv(p, empty);
  std::ifstream in(p);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++lines;
  }
  CHECK(lines == 1);
  CHECK(read_trace_csv(p, full).time_samples() == 0);
}

TEST_CASE("graymap of a constant field is flat") {
  const Grid2D g = Grid2D::make(9);
  const fs::path p = scratch_dir() / "flat.pgm";
  write_field_pgm(p, ScalarField::constant(g, 4.25));
  const ScalarField back = read_field_pgm(p);
  CHECK((back.values() == back(0, 0)).all());
  CHECK(back(0, 0) == doctest::Approx(4.25));
}
