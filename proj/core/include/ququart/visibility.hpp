#ifndef QUQUART_VISIBILITY_HPP
#define QUQUART_VISIBILITY_HPP

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ququart/polarization.hpp"
#include "ququart/spdc.hpp"

namespace ququart {

enum class Arm { Signal, Idler };

Arm arm_from_string(std::string_view s);
std::string_view to_string(Arm arm);

/// Birefringent plate (quartz, vertical axis) delaying the V photon of one
/// wavelength arm. group_delay_only drops the plate's own dispersion beyond
/// the group delay; the default keeps the full Sellmeier phase.
struct CompensatorSpec {
  DispersiveMedium medium;
  double thickness_mm = 0.0;
  Arm arm = Arm::Signal;
  bool group_delay_only = false;

  void validate() const;
};

/// tau_comp = |1/v_e_gr - 1/v_o_gr| * L_q at the arm wavelength, principal
/// indices. [fs]
double compensator_delay(const CompensatorSpec& comp, double wavelength_nm);

struct CompensatorDesign {
  CompensatorSpec spec;
  bool degenerate = false;  // tau2 = 0, nothing to compensate
};

/// Thickness solving tau_comp = tau_2, placed in the shorter-wavelength arm.
CompensatorDesign design_compensator(const SourceConfig& config,
                                     const DispersiveMedium& quartz);

/// Multiply the V branch by the compensator's (constant-removed) phase.
SpectralAmplitude apply_compensator(const SpectralAmplitude& amp,
                                    const SourceConfig& config,
                                    const CompensatorSpec& comp,
                                    PhaseModel model = PhaseModel::Full);

struct VisibilityResult {
  enum class Method {
    ClosedFormFirstOrder,
    QuadratureFirstOrder,
    QuadratureSecondOrder,
    QuadratureFull,
  };

  double visibility = 0.0;
  double phase_offset_rad = 0.0;  // argument of the coherence integral
  Method method = Method::QuadratureFull;
};

std::string_view to_string(VisibilityResult::Method method);

/// R(phi) ~ <+45,+45| P(phi) rho P(phi)^dag |+45,+45> with P rotating the
/// VV phase, normalized so the phi-independent part is 1:
/// R = 1 + V cos(phi - phi_0).
std::vector<double> coincidence_rate(const PolDensityMatrix& rho,
                                     std::span<const double> phase_rad);

/// V = |Integral |F|^2 e^{i phi_res}| / Integral |F|^2 by quadrature, with
/// phi_res the constant-removed residual phase after the compensator.
/// Default grids: Full -> spec of GridSpec::full_default();
/// FirstOrder/SecondOrder -> the wide expansion-mode grids.
VisibilityResult visibility_integral(
    const SourceConfig& config,
    const std::optional<CompensatorSpec>& comp = std::nullopt,
    const std::optional<FilterSpec>& filter = std::nullopt,
    PhaseModel model = PhaseModel::Full,
    const std::optional<GridSpec>& grid = std::nullopt);

/// Closed form V = 1 - tau2/tau1 (Fig. 2 geometry). Throws
/// RegimeViolationError when tau2 > tau1.
VisibilityResult visibility_first_order(const WalkoffCoefficients& walkoff);
VisibilityResult visibility_first_order(const SourceConfig& config);

/// V(D) = |Integral sinc^2(xi/2) e^{i D xi^2} dxi| / Integral sinc^2(xi/2)
/// on the dimensionless grid; the residual visibility after exact
/// first-order compensation.
VisibilityResult second_order_visibility(double d_parameter,
                                         double half_width_xi = 128.0 * kPi,
                                         int points = 262145);

/// visibility_integral per thickness, in input order. The compensator
/// medium/arm come from `base` when given, otherwise from
/// design_compensator with the built-in quartz.
std::vector<std::pair<double, VisibilityResult>> scan_thickness(
    const SourceConfig& config, const std::optional<FilterSpec>& filter,
    std::span<const double> thickness_mm_grid,
    PhaseModel model = PhaseModel::Full,
    const std::optional<CompensatorSpec>& base = std::nullopt);

/// Visibility vs filter bandwidth under exact first-order compensation
/// (second-order residual phase).
std::vector<std::pair<double, VisibilityResult>> scan_bandwidth(
    const SourceConfig& config, std::span<const double> bandwidth_nm_grid);

/// Index of the scan maximum; ties within 1e-12 resolve to the smallest
/// abscissa.
size_t scan_argmax(std::span<const std::pair<double, VisibilityResult>> scan);

}  // namespace ququart

#endif
