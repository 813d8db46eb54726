#include <doctest.h>

#include <cmath>
#include <random>

#include "ququart/constants.hpp"
#include "ququart/dispersion.hpp"
#include "ququart/errors.hpp"

using namespace ququart;

namespace {

const DispersiveMedium& bbo() { return MaterialDatabase::builtin().get("bbo"); }
const DispersiveMedium& quartz() { return MaterialDatabase::builtin().get("quartz"); }

struct RandomRay {
  const DispersiveMedium& medium;
  RayKind ray;
  double omega;
};

RandomRay random_ray(std::mt19937& rng) {
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  const bool use_bbo = pick(rng) < 0.5;
  const DispersiveMedium& medium = use_bbo ? bbo() : quartz();
  // stay clear of the window edges so FD stencils remain in range
  std::uniform_real_distribution<double> lam(medium.min_wavelength_nm() + 60.0,
                                             medium.max_wavelength_nm() - 60.0);
  const RayKind ray = pick(rng) < 0.4
                          ? RayKind::ordinary()
                          : RayKind::extraordinary(pick(rng) * kPi / 2.0);
  return {medium, ray, angular_frequency(lam(rng))};
}

}  // namespace

TEST_CASE("extraordinary at theta = 0 degenerates to the ordinary index") {
  for (double lam : {300.0, 500.0, 600.0, 900.0}) {
    CHECK(refractive_index(quartz(), RayKind::extraordinary(0.0), lam) ==
          doctest::Approx(refractive_index(quartz(), RayKind::ordinary(), lam))
              .epsilon(1e-12));
    CHECK(refractive_index(bbo(), RayKind::extraordinary(0.0), lam) ==
          doctest::Approx(refractive_index(bbo(), RayKind::ordinary(), lam))
              .epsilon(1e-12));
  }
}

TEST_CASE("extraordinary at theta = pi/2 is the principal n_e") {
  // hand evaluation of the shipped BBO e-set
  const double x = 0.5 * 0.5;
  const double n2 = 2.3730 + 0.0128 / (x - 0.0156) - 0.0044 * x;
  CHECK(refractive_index(bbo(), RayKind::extraordinary(kPi / 2.0), 500.0) ==
        doctest::Approx(std::sqrt(n2)).epsilon(1e-12));
}

TEST_CASE("extraordinary index is monotone in theta between the principals") {
  for (double lam : {300.0, 600.0, 1000.0}) {
    const double n_o = refractive_index(bbo(), RayKind::ordinary(), lam);
    const double n_e = refractive_index(bbo(), RayKind::extraordinary(kPi / 2.0), lam);
    double prev = n_o;
    for (int i = 1; i <= 50; ++i) {
      const double n =
          refractive_index(bbo(), RayKind::extraordinary(kPi / 2.0 * i / 50.0), lam);
      CHECK(n < prev);  // negative uniaxial: n falls toward n_e
      CHECK(n <= n_o);
      CHECK(n >= n_e);
      prev = n;
    }
    // positive uniaxial quartz rises instead
    CHECK(refractive_index(quartz(), RayKind::extraordinary(0.7), lam) >
          refractive_index(quartz(), RayKind::ordinary(), lam));
  }
}

TEST_CASE("ray angle outside [0, pi/2] is rejected") {
  CHECK_THROWS_AS(RayKind::extraordinary(-0.1), Error);
  CHECK_THROWS_AS(RayKind::extraordinary(2.0), Error);
}

TEST_CASE("wavenumber is definitional n*omega/c and monotone in omega") {
  const double om = angular_frequency(600.0);
  const double n = refractive_index(bbo(), RayKind::ordinary(), 600.0);
  CHECK(wavenumber(bbo(), RayKind::ordinary(), om) ==
        doctest::Approx(n * om / kSpeedOfLight).epsilon(1e-14));

  double prev = 0.0;
  for (double lam : {1000.0, 900.0, 800.0, 700.0, 600.0, 500.0, 400.0}) {
    const double k = wavenumber(bbo(), RayKind::ordinary(), angular_frequency(lam));
    CHECK(k > prev);
    prev = k;
  }
}

TEST_CASE("wavenumber cross-check at random wavelengths") {
  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    const RandomRay r = random_ray(rng);
    const double n = refractive_index(r.medium, r.ray, wavelength_nm(r.omega));
    CHECK(wavenumber(r.medium, r.ray, r.omega) ==
          doctest::Approx(n * r.omega / kSpeedOfLight).epsilon(1e-12));
  }
}

TEST_CASE("analytic first derivative matches central finite differences") {
  std::mt19937 rng(11);
  const double h = 1e-4;
  for (int i = 0; i < 100; ++i) {
    const RandomRay r = random_ray(rng);
    const double fd = (wavenumber(r.medium, r.ray, r.omega + h) -
                       wavenumber(r.medium, r.ray, r.omega - h)) /
                      (2.0 * h);
    CHECK(inverse_group_velocity(r.medium, r.ray, r.omega) ==
          doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("analytic second derivative matches finite differences") {
  std::mt19937 rng(13);
  const double h = 1e-4;
  for (int i = 0; i < 100; ++i) {
    const RandomRay r = random_ray(rng);
    const double k0 = wavenumber(r.medium, r.ray, r.omega);
    const double fd2 = (wavenumber(r.medium, r.ray, r.omega + h) - 2.0 * k0 +
                        wavenumber(r.medium, r.ray, r.omega - h)) /
                       (h * h);
    CHECK(gvd(r.medium, r.ray, r.omega) == doctest::Approx(fd2).epsilon(1e-4));
    // chained consistency: d/domega of the group delay equals the GVD
    const double fd_of_ivg = (inverse_group_velocity(r.medium, r.ray, r.omega + h) -
                              inverse_group_velocity(r.medium, r.ray, r.omega - h)) /
                             (2.0 * h);
    CHECK(gvd(r.medium, r.ray, r.omega) == doctest::Approx(fd_of_ivg).epsilon(1e-5));
  }
}

TEST_CASE("normal-dispersion inequalities") {
  for (double lam : {400.0, 600.0, 710.0, 900.0}) {
    const double om = angular_frequency(lam);
    const double ivg = inverse_group_velocity(bbo(), RayKind::ordinary(), om);
    const double n = refractive_index(bbo(), RayKind::ordinary(), lam);
    CHECK(1.0 / ivg < kSpeedOfLight);     // group velocity below c
    CHECK(ivg > n / kSpeedOfLight);       // group index above phase index
  }
  CHECK(gvd(bbo(), RayKind::extraordinary(0.634), angular_frequency(600.0)) > 0.0);
  CHECK(gvd(bbo(), RayKind::extraordinary(0.634), angular_frequency(710.0)) > 0.0);
}

TEST_CASE("dispersion quantities are deterministic pure functions") {
  const double om = angular_frequency(612.3456789);
  const double a = wavenumber(bbo(), RayKind::extraordinary(0.61), om);
  const double b = wavenumber(bbo(), RayKind::extraordinary(0.61), om);
  CHECK(a == b);  // bit-identical
  const double g1 = gvd(quartz(), RayKind::ordinary(), om);
  const double g2 = gvd(quartz(), RayKind::ordinary(), om);
  CHECK(g1 == g2);
}

TEST_CASE("phase matching: residual and brute-force grid-scan oracle") {
  struct Case {
    double pump, signal, idler;
  };
  for (const Case& c : {Case{325.0, 650.0, 650.0},
                        Case{325.0, 600.0, 1.0 / (1.0 / 325.0 - 1.0 / 600.0)}}) {
    const double theta = phase_matching_angle(bbo(), c.pump, c.signal, c.idler);

    const double target =
        wavenumber(bbo(), RayKind::ordinary(), angular_frequency(c.signal)) +
        wavenumber(bbo(), RayKind::ordinary(), angular_frequency(c.idler));
    const double om_p = angular_frequency(c.pump);
    const double residual =
        wavenumber(bbo(), RayKind::extraordinary(theta), om_p) - target;
    CHECK(std::abs(residual) < 1e-9);

    // exhaustive 1e-6 rad scan for the sign change
    double prev = wavenumber(bbo(), RayKind::extraordinary(0.0), om_p) - target;
    double bracket = -1.0;
    for (double th = 1e-6; th <= kPi / 2.0; th += 1e-6) {
      const double m = wavenumber(bbo(), RayKind::extraordinary(th), om_p) - target;
      if (std::signbit(m) != std::signbit(prev)) {
        bracket = th;
        break;
      }
      prev = m;
    }
    REQUIRE(bracket > 0.0);
    CHECK(std::abs(theta - bracket) <= 1e-6);
  }
}

TEST_CASE("phase matching error paths") {
  CHECK_THROWS_AS(phase_matching_angle(bbo(), 325.0, 600.0, 710.0),
                  EnergyMismatchError);
  // positive uniaxial quartz cannot satisfy collinear o + o -> e
  CHECK_THROWS_AS(phase_matching_angle(quartz(), 400.0, 800.0, 800.0),
                  NoPhaseMatchingError);
}
