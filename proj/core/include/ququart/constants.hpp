#ifndef QUQUART_CONSTANTS_HPP
#define QUQUART_CONSTANTS_HPP

#include <numbers>

namespace ququart {

// Internal unit system: lengths in mm, times in fs, angular frequencies in
// rad/fs, wavenumbers in rad/mm. Wavelengths cross the API in nm.
inline constexpr double kSpeedOfLight = 2.99792458e-4;  // mm/fs
inline constexpr double kPi = std::numbers::pi;

// omega [rad/fs] for a vacuum wavelength [nm]
inline double angular_frequency(double wavelength_nm) {
  return 2.0 * kPi * kSpeedOfLight / (wavelength_nm * 1e-6);
}

// vacuum wavelength [nm] for omega [rad/fs]
inline double wavelength_nm(double omega_rad_fs) {
  return 2.0 * kPi * kSpeedOfLight / omega_rad_fs * 1e6;
}

}  // namespace ququart

#endif
