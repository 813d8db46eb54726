#ifndef QUQUART_SOURCE_HPP
#define QUQUART_SOURCE_HPP

#include <string_view>

#include "ququart/constants.hpp"
#include "ququart/materials.hpp"

namespace ququart {

/// Which extraordinary index the SPDC photons see inside the second crystal:
/// the angle-dependent index at the phase-matching angle (default), or the
/// principal n_e.
enum class EIndexMode { PhaseMatchedAngle, Principal };

EIndexMode e_index_mode_from_string(std::string_view s);
std::string_view to_string(EIndexMode mode);

/// Two-crystal collinear type-I source. Arm 1 = signal, arm 2 = idler; the
/// arms need not be ordered by wavelength.
struct SourceConfig {
  DispersiveMedium medium;
  double crystal_length_mm = 2.0;
  double pump_nm = 0.0;
  double signal_nm = 0.0;
  double idler_nm = 0.0;
  double pump_balance = 0.5;   // mu, weight of the HH branch
  double pump_phase_rad = 0.0; // constant phase set by the pump quartz plates
  EIndexMode e_index_mode = EIndexMode::PhaseMatchedAngle;

  /// Energy conservation (1e-9 relative), ranges, L > 0, mu in [0,1].
  /// Throws ConfigError.
  void validate() const;

  bool degenerate() const { return signal_nm == idler_nm; }

  double omega_pump() const { return angular_frequency(pump_nm); }
  double omega_signal() const { return angular_frequency(signal_nm); }
  double omega_idler() const { return angular_frequency(idler_nm); }

  /// Idler wavelength implied by energy conservation.
  static double idler_for(double pump_nm, double signal_nm);
};

}  // namespace ququart

#endif
