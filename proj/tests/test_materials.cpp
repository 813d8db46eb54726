#include <doctest.h>

#include <cmath>
#include <fstream>

#include "ququart/constants.hpp"
#include "ququart/dispersion.hpp"
#include "ququart/errors.hpp"
#include "ququart/materials.hpp"

using namespace ququart;

TEST_CASE("shipped BBO ordinary index agrees with a hand evaluation") {
  // independent arithmetic straight from the published coefficient set
  const double x = 0.6 * 0.6;  // (600 nm / um)^2
  const double n2 = 2.7405 + 0.0184 / (x - 0.0179) - 0.0155 * x;
  const double n = refractive_index(MaterialDatabase::builtin().get("bbo"),
                                    RayKind::ordinary(), 600.0);
  CHECK(n == doctest::Approx(std::sqrt(n2)).epsilon(1e-9));
}

TEST_CASE("shipped quartz extraordinary index agrees with a hand evaluation") {
  const double x = 0.6328 * 0.6328;
  const double n2 = 1.28851804 + 1.09509924 * x / (x - 0.0102101864) +
                    1.15662475 * x / (x - 100.0);
  const double n = refractive_index(MaterialDatabase::builtin().get("quartz"),
                                    RayKind::extraordinary(kPi / 2.0), 632.8);
  CHECK(n == doctest::Approx(std::sqrt(n2)).epsilon(1e-9));
}

TEST_CASE("indices match published table values to 1e-3") {
  const auto& bbo = MaterialDatabase::builtin().get("bbo");
  const auto& quartz = MaterialDatabase::builtin().get("quartz");
  // vendor/handbook values
  CHECK(refractive_index(bbo, RayKind::ordinary(), 532.0) ==
        doctest::Approx(1.6749).epsilon(1e-3));
  CHECK(refractive_index(bbo, RayKind::ordinary(), 1064.0) ==
        doctest::Approx(1.6551).epsilon(1e-3));
  CHECK(refractive_index(bbo, RayKind::extraordinary(kPi / 2.0), 532.0) ==
        doctest::Approx(1.5555).epsilon(1e-3));
  CHECK(refractive_index(quartz, RayKind::ordinary(), 589.3) ==
        doctest::Approx(1.5443).epsilon(1e-3));
  CHECK(refractive_index(quartz, RayKind::extraordinary(kPi / 2.0), 589.3) ==
        doctest::Approx(1.5534).epsilon(1e-3));
}

TEST_CASE("evaluation outside the published range is an error, not extrapolation") {
  const auto& bbo = MaterialDatabase::builtin().get("bbo");
  CHECK_THROWS_AS(refractive_index(bbo, RayKind::ordinary(), 150.0), OutOfRangeError);
  CHECK_THROWS_AS(refractive_index(bbo, RayKind::ordinary(), 1500.0), OutOfRangeError);
  CHECK_NOTHROW(refractive_index(bbo, RayKind::ordinary(), 220.0));
  CHECK_NOTHROW(refractive_index(bbo, RayKind::ordinary(), 1060.0));
}

TEST_CASE("index functions stay above 1 over the validity window") {
  for (const auto& name : MaterialDatabase::builtin().names()) {
    const auto& medium = MaterialDatabase::builtin().get(name);
    for (int i = 0; i <= 100; ++i) {
      const double lam = medium.min_wavelength_nm() +
                         (medium.max_wavelength_nm() - medium.min_wavelength_nm()) *
                             i / 100.0;
      CHECK(refractive_index(medium, RayKind::ordinary(), lam) > 1.0);
      CHECK(refractive_index(medium, RayKind::extraordinary(kPi / 2.0), lam) > 1.0);
    }
  }
}

TEST_CASE("builtin data matches the shipped data file") {
  const MaterialDatabase from_file =
      MaterialDatabase::load(std::string(QUQUART_SOURCE_DIR) + "/core/data/materials.dat");
  for (const auto& name : MaterialDatabase::builtin().names()) {
    REQUIRE(from_file.contains(name));
    const auto& a = MaterialDatabase::builtin().get(name);
    const auto& b = from_file.get(name);
    CHECK(a.min_wavelength_nm() == b.min_wavelength_nm());
    CHECK(a.max_wavelength_nm() == b.max_wavelength_nm());
    CHECK(a.ordinary().form == b.ordinary().form);
    for (int i = 0; i < 5; ++i) {
      CHECK(a.ordinary().coeff[i] == b.ordinary().coeff[i]);
      CHECK(a.extraordinary().coeff[i] == b.extraordinary().coeff[i]);
    }
  }
}

TEST_CASE("material file parse errors carry origin and line") {
  const char* bad_key =
      "material = foo\n"
      "formula = pole_lambda2\n"
      "range_nm = 300 900\n"
      "bogus = 1 2 3\n";
  CHECK_THROWS_WITH_AS(MaterialDatabase::parse(bad_key, "test.dat"),
                       doctest::Contains("test.dat:4"), ConfigError);
  CHECK_THROWS_WITH_AS(MaterialDatabase::parse(bad_key, "test.dat"),
                       doctest::Contains("bogus"), ConfigError);

  const char* missing_formula =
      "material = foo\n"
      "range_nm = 300 900\n"
      "ordinary = 2 0.01 0.01 -0.01\n"
      "extraordinary = 2 0.01 0.01 -0.01\n";
  CHECK_THROWS_AS(MaterialDatabase::parse(missing_formula, "test.dat"), ConfigError);

  const char* wrong_count =
      "material = foo\n"
      "formula = pole_lambda2\n"
      "range_nm = 300 900\n"
      "ordinary = 2 0.01 0.01\n"
      "extraordinary = 2 0.01 0.01 -0.01\n";
  CHECK_THROWS_WITH_AS(MaterialDatabase::parse(wrong_count, "test.dat"),
                       doctest::Contains("4 coefficients"), ConfigError);
}

TEST_CASE("unphysical coefficient sets are rejected at load") {
  const char* negative_n2 =
      "material = junk\n"
      "formula = pole_lambda2\n"
      "range_nm = 300 900\n"
      "ordinary = -5 0.01 0.01 -0.01\n"
      "extraordinary = 2 0.01 0.01 -0.01\n";
  CHECK_THROWS_AS(MaterialDatabase::parse(negative_n2, "test.dat"), ConfigError);
}

TEST_CASE("unknown material lookup names the known set") {
  CHECK_THROWS_WITH_AS(MaterialDatabase::builtin().get("diamond"),
                       doctest::Contains("bbo"), ConfigError);
}
