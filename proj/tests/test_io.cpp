#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "shearbd/error.hpp"
#include "shearbd/io.hpp"
#include "shearbd/schema.hpp"
#include "support.hpp"

using namespace shearbd;
using io::json;
namespace fs = std::filesystem;

namespace {

// Fresh directory under the system temp dir, removed on scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("shearbd_io_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::FormatError;
}

void truncate_file(const std::string& path, std::uintmax_t keep) { fs::resize_file(path, keep); }

std::vector<Point> random_points(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) out.push_back({u(rng), u(rng)});
  return out;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("grids survive a write and read bit for bit") {
    TempDir dir;
    ImageGrid g = testing::random_grid(32, 1);
    g.data[5] = -0.0;
    write_grd1(dir / "g.grd", g);
    ImageGrid back = read_grd1(dir / "g.grd");
    REQUIRE(back.n == 32);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(same_bits(g.data[i], back.data[i]));

    truncate_file(dir / "g.grd", 64 + 100);
    CHECK(code_of([&] { read_grd1(dir / "g.grd"); }) == ErrorCode::FormatError);
    io::write_text(dir / "junk.grd", "not a grid");
    CHECK(code_of([&] { read_grd1(dir / "junk.grd"); }) == ErrorCode::FormatError);
  }

  TEST_CASE("coefficient files round trip") {
    TempDir dir;
    SystemParams p;
    p.n = 64;
    p.j_max = 2;
    p.support_scale = 2.0;
    ShearletSystem sys(testing::default_generators(), p);
    std::vector<double> values = sys.analyze_values(testing::random_grid(64, 2));
    io::write_shc1(dir / "c.shc", sys, values);
    io::Shc1File f = io::read_shc1(dir / "c.shc");
    CHECK(f.params.n == 64);
    CHECK(f.params.j_max == 2);
    CHECK(f.params.support_scale == 2.0);
    CHECK(f.params.c == p.c);
    CHECK(f.m_flat_psi1 == 6);
    CHECK(f.m_flat_psi2 == 5);
    REQUIRE(f.indices.size() == sys.size());
    CHECK(f.indices == sys.indices());
    for (std::size_t i = 0; i < values.size(); ++i) CHECK(same_bits(values[i], f.values[i]));

    truncate_file(dir / "c.shc", fs::file_size(dir / "c.shc") - 8);
    CHECK(code_of([&] { io::read_shc1(dir / "c.shc"); }) == ErrorCode::FormatError);
    io::write_text(dir / "bad.shc", "SHC2");
    CHECK(code_of([&] { io::read_shc1(dir / "bad.shc"); }) == ErrorCode::FormatError);
  }

  TEST_CASE("dump prints doubles that read back exactly") {
    json j = {{"x", 0.1 + 0.2}, {"y", 1.0 / 3.0}, {"z", 1e-300}};
    json back = json::parse(io::dump(j));
    for (const char* k : {"x", "y", "z"}) CHECK(same_bits(back[k].get<double>(), j[k].get<double>()));
    CHECK(io::dump(j) == io::dump(back));
  }

  TEST_CASE("star domains round trip with their translation") {
    RadiusCurve rc;
    rc.a0 = 0.2;
    rc.a = {0.02};
    rc.b = {0.0, 0.01};
    rc.translate = {0.45, 0.55};
    rc.rho0 = 0.25;
    rc.nu = 0.1;
    DomainSpec d = make_star_domain(rc);
    json j = io::to_json(d);
    CHECK(j["translate"][0] == 0.45);
    CHECK(validate_schema(bundled_schema("domain"), j).empty());
    DomainSpec back = io::domain_from_json(j);
    for (Point x : random_points(2000, 3)) CHECK(back.contains(x) == d.contains(x));
  }

  TEST_CASE("piecewise translations are applied on read") {
    DomainSpec square = make_rectangle(0.2, 0.6, 0.3, 0.7);
    json j = io::to_json(square);
    CHECK(j["translate"] == json::array({0.0, 0.0}));
    j["translate"] = {0.125, -0.25};
    DomainSpec moved = io::domain_from_json(j);
    CHECK(moved.corners().size() == 4);
    for (Point x : random_points(2000, 4)) {
      Point shifted{x.x1 + 0.125, x.x2 - 0.25};
      // Stay away from the edges where rounding could flip membership.
      if (std::abs(x.x1 - 0.2) < 1e-9 || std::abs(x.x1 - 0.6) < 1e-9) continue;
      CHECK(moved.contains(shifted) == square.contains(x));
    }
    // Written back out, the shift is folded into the pieces.
    json again = io::to_json(moved);
    CHECK(again["translate"] == json::array({0.0, 0.0}));
    DomainSpec twice = io::domain_from_json(again);
    for (Point x : random_points(500, 5)) CHECK(twice.contains(x) == moved.contains(x));
  }

  TEST_CASE("cartoons round trip") {
    SmoothSpec f0, f1;
    f0.terms.push_back({0.002, 0.5, 0.29, 0.5, 0.29});
    f1.terms.push_back({-0.001, 0.5, 0.2, 0.52, 0.2});
    CartoonFunction f = make_cartoon(make_rectangle(0.2, 0.8, 0.2, 0.8), make_disk({0.5, 0.5}, 0.15), f0, f1);
    json j = io::to_json(f);
    CHECK(validate_schema(bundled_schema("cartoon"), j).empty());
    CartoonFunction back = io::cartoon_from_json(j);
    for (Point x : random_points(1000, 6)) CHECK(same_bits(back.value(x), f.value(x)));
  }

  TEST_CASE("schema violations carry a JSON pointer") {
    json schema = json::parse(R"({
      "type": "object",
      "required": ["a"],
      "properties": {"a": {"type": "array", "items": {"type": "number", "minimum": 0}}},
      "additionalProperties": false
    })");
    CHECK(validate_schema(schema, json::parse(R"({"a": [1, 2]})")).empty());
    auto v = validate_schema(schema, json::parse(R"({"a": [1, -2]})"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].pointer == "/a/1");
    v = validate_schema(schema, json::parse(R"({"a": [], "b": 1})"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].pointer == "/b");
    CHECK_FALSE(validate_schema(schema, json::parse("{}")).empty());

    json star = json::parse(R"({"kind": "star", "nu": 0, "rho0": 1.5, "a0": 0.2})");
    CHECK_FALSE(validate_schema(bundled_schema("domain"), star).empty());
    CHECK(code_of([&] { require_valid("domain", star, "inline"); }) == ErrorCode::ConfigInvalid);
  }

  TEST_CASE("shipped run configurations validate") {
    const fs::path configs = fs::path(SHEARBD_SOURCE_DIR) / "configs";
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(configs)) {
      if (entry.path().extension() != ".json") continue;
      CAPTURE(entry.path().string());
      json j = io::read_json(entry.path().string());
      auto v = validate_schema(bundled_schema("run"), j);
      CHECK(v.empty());
      ++seen;
    }
    CHECK(seen >= 8);
  }

  TEST_CASE("generator cache round trip") {
    TempDir dir;
    GeneratorSet gen = build_generator_set(4, 3, 8);
    io::write_generator_cache(dir.path.string(), gen, 64);
    for (const char* name : {"psi.grd", "psi_tilde.grd", "phi.grd", "generators.json"})
      CHECK(fs::exists(dir.path / name));
    GeneratorSet back = io::read_generator_cache(dir.path.string());
    CHECK(back.psi1.values == gen.psi1.values);
    CHECK(back.psi2.values == gen.psi2.values);
    CHECK(back.vanishing_moments == gen.vanishing_moments);
    ImageGrid psi = read_grd1(dir / "psi.grd");
    CHECK(psi.n == 64);

    json meta = io::read_json(dir / "generators.json");
    json& samples = meta["psi1"]["values"];
    samples[3] = samples[3].get<double>() + 1e-9;
    io::write_text(dir / "generators.json", io::dump(meta));
    CHECK(code_of([&] { io::read_generator_cache(dir.path.string()); }) == ErrorCode::FormatError);
  }
}
