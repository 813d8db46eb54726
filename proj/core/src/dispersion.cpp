#include "ququart/dispersion.hpp"

#include <cmath>
#include <string>

#include "ququart/constants.hpp"
#include "ququart/errors.hpp"

namespace ququart {
namespace {

// n(omega) as a jet, for either ray kind. x = (lambda/um)^2 = (2 pi c / omega)^2.
Jet2 index_jet(const DispersiveMedium& medium, const RayKind& ray, double omega) {
  const double c_um = kSpeedOfLight * 1e3;  // um/fs
  const Jet2 w = Jet2::variable(omega);
  const Jet2 lam_um = Jet2(2.0 * kPi * c_um) / w;
  const Jet2 x = lam_um * lam_um;
  const Jet2 no2 = medium.ordinary().index_squared(x);
  if (ray.is_ordinary()) return sqrt(no2);
  const double ct = std::cos(ray.theta());
  const double st = std::sin(ray.theta());
  const Jet2 ne2 = medium.extraordinary().index_squared(x);
  // index ellipsoid: 1/n^2 = cos^2/n_o^2 + sin^2/n_e^2
  const Jet2 inv_n2 = Jet2(ct * ct) / no2 + Jet2(st * st) / ne2;
  return Jet2(1.0) / sqrt(inv_n2);
}

}  // namespace

RayKind RayKind::extraordinary(double theta_rad) {
  if (!(theta_rad >= 0.0 && theta_rad <= kPi / 2.0)) {
    throw Error("extraordinary ray angle " + std::to_string(theta_rad) +
                " outside [0, pi/2]");
  }
  return RayKind(false, theta_rad);
}

double refractive_index(const DispersiveMedium& medium, const RayKind& ray,
                        double wavelength_nm) {
  medium.require_in_range(wavelength_nm);
  return index_jet(medium, ray, angular_frequency(wavelength_nm)).v;
}

Jet2 wavenumber_jet(const DispersiveMedium& medium, const RayKind& ray,
                    double omega_rad_fs) {
  medium.require_in_range(wavelength_nm(omega_rad_fs));
  const Jet2 n = index_jet(medium, ray, omega_rad_fs);
  return n * Jet2::variable(omega_rad_fs) / Jet2(kSpeedOfLight);
}

double wavenumber(const DispersiveMedium& medium, const RayKind& ray,
                  double omega_rad_fs) {
  return wavenumber_jet(medium, ray, omega_rad_fs).v;
}

double inverse_group_velocity(const DispersiveMedium& medium,
                              const RayKind& ray, double omega_rad_fs) {
  return wavenumber_jet(medium, ray, omega_rad_fs).d1;
}

double gvd(const DispersiveMedium& medium, const RayKind& ray,
           double omega_rad_fs) {
  return wavenumber_jet(medium, ray, omega_rad_fs).d2;
}

double phase_matching_angle(const DispersiveMedium& medium, double pump_nm,
                            double signal_nm, double idler_nm) {
  const double lhs = 1.0 / pump_nm;
  const double rhs = 1.0 / signal_nm + 1.0 / idler_nm;
  if (std::abs(lhs - rhs) > 1e-9 * lhs) {
    throw EnergyMismatchError("1/" + std::to_string(pump_nm) + " != 1/" +
                              std::to_string(signal_nm) + " + 1/" +
                              std::to_string(idler_nm) +
                              " (relative error " +
                              std::to_string(std::abs(lhs - rhs) / lhs) + ")");
  }
  for (double lam : {pump_nm, signal_nm, idler_nm}) medium.require_in_range(lam);

  const double target =
      wavenumber(medium, RayKind::ordinary(), angular_frequency(signal_nm)) +
      wavenumber(medium, RayKind::ordinary(), angular_frequency(idler_nm));
  const double omega_p = angular_frequency(pump_nm);
  const auto mismatch = [&](double theta) {
    return wavenumber(medium, RayKind::extraordinary(theta), omega_p) - target;
  };

  // uniform sign scan, then bisection down to machine precision
  constexpr int kScan = 1000;
  double lo = 0.0, flo = mismatch(0.0);
  if (flo == 0.0) return 0.0;
  double hi = 0.0, fhi = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= kScan; ++i) {
    const double theta = (kPi / 2.0) * i / kScan;
    const double f = mismatch(theta);
    if (f == 0.0) return theta;
    if (std::signbit(f) != std::signbit(flo)) {
      hi = theta;
      fhi = f;
      bracketed = true;
      break;
    }
    lo = theta;
    flo = f;
  }
  if (!bracketed) {
    throw NoPhaseMatchingError(medium.name() + ": no collinear solution for " +
                               std::to_string(pump_nm) + " -> " +
                               std::to_string(signal_nm) + " + " +
                               std::to_string(idler_nm) + " nm");
  }
  (void)fhi;
  while (hi - lo > 1e-15 && lo < std::nextafter(lo, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = mismatch(mid);
    if (f == 0.0) return mid;
    if (std::signbit(f) == std::signbit(flo)) {
      lo = mid;
      flo = f;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ququart
