#ifndef QUQUART_SPDC_HPP
#define QUQUART_SPDC_HPP

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ququart/source.hpp"

namespace ququart {

/// Evaluation mode for the mismatch/phase entering the biphoton amplitude.
/// Full keeps the complete Sellmeier dispersion; FirstOrder/SecondOrder are
/// the explicit expansions in the detuning, kept as separately named modes so
/// closed-form cross-checks stay meaningful.
enum class PhaseModel { FirstOrder, SecondOrder, Full };

PhaseModel phase_model_from_string(std::string_view s);
std::string_view to_string(PhaseModel model);

/// Gaussian interference filter, one per arm. Bandwidth is the intensity
/// FWHM in nm (the convention is part of the name on the config key).
struct FilterSpec {
  double center1_nm = 0.0;
  double center2_nm = 0.0;
  double bandwidth_fwhm_nm = 0.0;

  /// Filters centered exactly on the two arm wavelengths.
  static FilterSpec centered(const SourceConfig& config, double bandwidth_nm);

  /// Amplitude-transmission 1/e half-width [rad/fs] at a center wavelength.
  double delta_omega(double center_nm) const;

  void validate() const;
};

/// First/second-order walk-off data for a source: Eqs. of motion are
///   C_o = |1/v_o(omega_1) - 1/v_o(omega_2)|          [fs/mm]
///   C_e = same with the extraordinary ray            [fs/mm]
///   B_e = (k_e''(omega_1) + k_e''(omega_2)) / 2      [fs^2/mm]
///   tau_1 = C_o L, tau_2 = C_e L, D = B_e/(C_o^2 L).
struct WalkoffCoefficients {
  double c_o = 0.0;
  double c_e = 0.0;
  double b_e = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  std::optional<double> d;  // empty for a degenerate config (C_o = 0)
  double theta_pm = 0.0;    // rad
  bool degenerate = false;
  /// +1 when arm 1 carries the shorter wavelength (omega_1 > omega_2),
  /// -1 otherwise: sign of d(phi)/dOmega relative to +tau2.
  double orientation = 1.0;
};

WalkoffCoefficients walkoff_coefficients(const SourceConfig& config);

/// Longitudinal mismatch Delta_z(Omega) = k_o(w1+Om) + k_o(w2-Om) -
/// k_e(w_p, theta_pm), full dispersion. [rad/mm]
double phase_mismatch(const SourceConfig& config, double detuning_rad_fs);

/// Relative phase between the VV and HH amplitudes accumulated in the
/// crystals, full dispersion. With remove_constant the Omega-independent
/// part is subtracted (that part is cancelled by the pump quartz plates).
double dispersive_phase(const SourceConfig& config, double detuning_rad_fs,
                        bool remove_constant = true);

/// Uniform symmetric detuning grid. Either an explicit half-width or a
/// half-width in units of first-order sinc zeros (2*pi/(C_o L) each).
struct GridSpec {
  int points = 8193;        // odd, so Omega = 0 is a sample
  double half_width = 0.0;  // rad/fs; used when > 0
  double zeros = 10.0;      // sinc zeros per side, used when half_width == 0

  double resolve_half_width(double c_o_times_l) const;

  static GridSpec full_default() { return {8193, 0.0, 10.0}; }
  static GridSpec first_order_default() { return {131073, 0.0, 2000.0}; }
  static GridSpec second_order_default() { return {262145, 0.0, 64.0}; }
};

/// Sampled biphoton amplitude over the detuning grid. amp_h is the real
/// sinc envelope times the filter transmission (sign kept); amp_v carries
/// the same modulus with the residual phase: amp_v = amp_h * exp(i*phi_res).
struct SpectralAmplitude {
  std::vector<double> detuning;               // rad/fs
  std::vector<double> amp_h;                  // F(Omega, H)
  std::vector<std::complex<double>> amp_v;    // F(Omega, V)
  double normalization = 0.0;                 // trapezoid of |amp_h|^2

  double step() const {
    return (detuning.back() - detuning.front()) /
           static_cast<double>(detuning.size() - 1);
  }
};

/// Build the two-branch amplitude. Throws GridError when the grid spans
/// fewer than 8 sinc zeros or has fewer than 16 samples per lobe, and
/// OutOfRangeError when a full-dispersion evaluation leaves the material's
/// validity window.
SpectralAmplitude spectral_amplitude(
    const SourceConfig& config, const GridSpec& grid = GridSpec::full_default(),
    const std::optional<FilterSpec>& filter = std::nullopt,
    PhaseModel model = PhaseModel::Full);

/// (1/N) * Integral |F|^2 exp(+i phi_res) dOmega with N = Integral |F|^2.
/// Shared primitive behind visibility_integral and density_from_spectrum.
std::complex<double> coherence_integral(const SpectralAmplitude& amp);

enum class Branch { H, V };

/// G2(tau) = |Integral F(Omega,p) cos(Omega tau) dOmega|^2 on the stored
/// grid, normalized to unit maximum over the requested tau list.
std::vector<double> correlation_function(const SpectralAmplitude& amp,
                                         Branch branch,
                                         std::span<const double> tau_fs);

/// Normalized zero-lag cross-correlation of the H-branch G2 with the
/// V-branch G2 shifted by tau2 - tau_c. Equals 1 - |tau2 - tau_c|/tau1 for
/// ideal rectangles.
double correlation_overlap(const SourceConfig& config,
                           double compensator_delay_fs);

}  // namespace ququart

#endif
