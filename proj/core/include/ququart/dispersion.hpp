#ifndef QUQUART_DISPERSION_HPP
#define QUQUART_DISPERSION_HPP

#include "ququart/jet.hpp"
#include "ququart/materials.hpp"

namespace ququart {

/// Ordinary wave, or extraordinary wave propagating at angle theta to the
/// optic axis. theta must lie in [0, pi/2].
class RayKind {
 public:
  static RayKind ordinary() { return RayKind(true, 0.0); }
  static RayKind extraordinary(double theta_rad);

  bool is_ordinary() const { return ordinary_; }
  double theta() const { return theta_; }

 private:
  RayKind(bool ordinary, double theta) : ordinary_(ordinary), theta_(theta) {}
  bool ordinary_;
  double theta_;
};

// All functions below are pure and thread-safe; material data is immutable.

/// n(lambda). Extraordinary(theta) uses the uniaxial index ellipsoid
/// 1/n^2 = cos^2(theta)/n_o^2 + sin^2(theta)/n_e^2.
double refractive_index(const DispersiveMedium& medium, const RayKind& ray,
                        double wavelength_nm);

/// k = n(omega) * omega / c  [rad/mm], with derivatives w.r.t. omega carried
/// exactly: .d1 is the inverse group velocity [fs/mm], .d2 the GVD [fs^2/mm].
Jet2 wavenumber_jet(const DispersiveMedium& medium, const RayKind& ray,
                    double omega_rad_fs);

double wavenumber(const DispersiveMedium& medium, const RayKind& ray,
                  double omega_rad_fs);

/// dk/domega [fs/mm]
double inverse_group_velocity(const DispersiveMedium& medium,
                              const RayKind& ray, double omega_rad_fs);

/// d2k/domega2 [fs^2/mm]
double gvd(const DispersiveMedium& medium, const RayKind& ray,
           double omega_rad_fs);

/// Collinear type-I angle: k_e(omega_p, theta) = k_o(omega_s) + k_o(omega_i).
/// Bracket by uniform sign scan (1000 points) on [0, pi/2], then bisection to
/// machine precision. Throws EnergyMismatchError if the wavelengths do not
/// satisfy 1/lp = 1/ls + 1/li to 1e-9 relative, NoPhaseMatchingError if no
/// sign change exists.
double phase_matching_angle(const DispersiveMedium& medium, double pump_nm,
                            double signal_nm, double idler_nm);

}  // namespace ququart

#endif
