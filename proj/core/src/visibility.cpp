#include "ququart/visibility.hpp"

#include <cmath>
#include <string>

#include "ququart/constants.hpp"
#include "ququart/dispersion.hpp"
#include "ququart/errors.hpp"

namespace ququart {
namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// V-minus-H phase a quartz plate of thickness lq adds at photon frequency om.
double plate_phase(const DispersiveMedium& medium, double lq, double om) {
  return -(wavenumber(medium, RayKind::extraordinary(kPi / 2.0), om) -
           wavenumber(medium, RayKind::ordinary(), om)) *
         lq;
}

double arm_wavelength(const SourceConfig& config, Arm arm) {
  return arm == Arm::Signal ? config.signal_nm : config.idler_nm;
}

// Grid for the expansion modes: keep the wide default, but when a filter is
// present shrink the window to the filtered support so the Gaussian stays
// resolved (the point count is fixed, so a smaller window means a finer step).
GridSpec expansion_grid(const GridSpec& base,
                        const std::optional<FilterSpec>& filter, double c_o_l) {
  if (!filter || !(c_o_l > 0.0)) return base;
  const double dw1 = filter->delta_omega(filter->center1_nm);
  const double dw2 = filter->delta_omega(filter->center2_nm);
  const double sigma = 1.0 / std::sqrt(1.0 / (dw1 * dw1) + 1.0 / (dw2 * dw2));
  const double lobe = 2.0 * kPi / c_o_l;
  const double filtered = 8.5 * lobe + 12.0 * sigma;
  const double hw = base.resolve_half_width(c_o_l);
  GridSpec out = base;
  if (filtered < hw) {
    out.half_width = filtered;
    out.zeros = 0.0;
  }
  return out;
}

VisibilityResult::Method method_for(PhaseModel model) {
  switch (model) {
    case PhaseModel::FirstOrder: return VisibilityResult::Method::QuadratureFirstOrder;
    case PhaseModel::SecondOrder: return VisibilityResult::Method::QuadratureSecondOrder;
    default: return VisibilityResult::Method::QuadratureFull;
  }
}

}  // namespace

std::string_view to_string(VisibilityResult::Method method) {
  switch (method) {
    case VisibilityResult::Method::ClosedFormFirstOrder: return "closed_form_first_order";
    case VisibilityResult::Method::QuadratureFirstOrder: return "quadrature_first_order";
    case VisibilityResult::Method::QuadratureSecondOrder: return "quadrature_second_order";
    default: return "quadrature_full";
  }
}

Arm arm_from_string(std::string_view s) {
  if (s == "signal") return Arm::Signal;
  if (s == "idler") return Arm::Idler;
  throw ConfigError("unknown arm '" + std::string(s) + "' (expected signal or idler)");
}

std::string_view to_string(Arm arm) {
  return arm == Arm::Signal ? "signal" : "idler";
}

void CompensatorSpec::validate() const {
  if (!(thickness_mm >= 0.0)) {
    throw ConfigError("compensator.thickness_mm must be >= 0, got " +
                      std::to_string(thickness_mm));
  }
}

double compensator_delay(const CompensatorSpec& comp, double wavelength_nm) {
  comp.validate();
  const double om = angular_frequency(wavelength_nm);
  const double dg =
      inverse_group_velocity(comp.medium, RayKind::extraordinary(kPi / 2.0), om) -
      inverse_group_velocity(comp.medium, RayKind::ordinary(), om);
  return std::abs(dg) * comp.thickness_mm;
}

CompensatorDesign design_compensator(const SourceConfig& config,
                                     const DispersiveMedium& quartz) {
  const WalkoffCoefficients w = walkoff_coefficients(config);
  const Arm arm = config.signal_nm <= config.idler_nm ? Arm::Signal : Arm::Idler;
  CompensatorDesign out{CompensatorSpec{quartz, 0.0, arm, false},
                        w.degenerate || w.tau2 == 0.0};
  if (out.degenerate) return out;
  const CompensatorSpec unit{quartz, 1.0, arm, false};
  const double delay_per_mm = compensator_delay(unit, arm_wavelength(config, arm));
  out.spec.thickness_mm = w.tau2 / delay_per_mm;  // delay is linear in L_q
  return out;
}

SpectralAmplitude apply_compensator(const SpectralAmplitude& amp,
                                    const SourceConfig& config,
                                    const CompensatorSpec& comp,
                                    PhaseModel model) {
  comp.validate();
  if (comp.thickness_mm == 0.0) return amp;

  const double lam_arm = arm_wavelength(config, comp.arm);
  const double om_arm = angular_frequency(lam_arm);
  // photon frequency in the compensated arm moves as om_arm + s*Omega
  const double s = comp.arm == Arm::Signal ? 1.0 : -1.0;

  SpectralAmplitude out = amp;
  if (model == PhaseModel::Full && !comp.group_delay_only) {
    const double psi0 = plate_phase(comp.medium, comp.thickness_mm, om_arm);
    for (size_t i = 0; i < out.amp_v.size(); ++i) {
      const double psi =
          plate_phase(comp.medium, comp.thickness_mm, om_arm + s * amp.detuning[i]) -
          psi0;
      out.amp_v[i] *= std::exp(std::complex<double>(0.0, psi));
    }
    return out;
  }

  const double delay = compensator_delay(comp, lam_arm);
  double quad = 0.0;
  if (model == PhaseModel::SecondOrder && !comp.group_delay_only) {
    const Jet2 ke = wavenumber_jet(comp.medium, RayKind::extraordinary(kPi / 2.0), om_arm);
    const Jet2 ko = wavenumber_jet(comp.medium, RayKind::ordinary(), om_arm);
    quad = -0.5 * (ke.d2 - ko.d2) * comp.thickness_mm;
  }
  for (size_t i = 0; i < out.amp_v.size(); ++i) {
    const double om = amp.detuning[i];
    const double psi = -s * delay * om + quad * om * om;
    out.amp_v[i] *= std::exp(std::complex<double>(0.0, psi));
  }
  return out;
}

std::vector<double> coincidence_rate(const PolDensityMatrix& rho,
                                     std::span<const double> phase_rad) {
  const Matrix4c& m = rho.entries();
  // phi-independent part of <++|P rho P^dag|++> (all entries not mixing VV)
  double dc = m(3, 3).real();
  std::complex<double> osc = 0.0;  // coefficient of e^{-i phi}
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) dc += m(i, j).real();
    osc += m(i, 3);
  }
  dc *= 0.25;
  osc *= 0.25;
  if (!(dc > 0.0)) throw Error("coincidence rate has zero mean");

  std::vector<double> out(phase_rad.size());
  for (size_t k = 0; k < phase_rad.size(); ++k) {
    const std::complex<double> rot = std::exp(std::complex<double>(0.0, -phase_rad[k]));
    out[k] = 1.0 + 2.0 * (osc * rot).real() / dc;
  }
  return out;
}

VisibilityResult visibility_integral(const SourceConfig& config,
                                     const std::optional<CompensatorSpec>& comp,
                                     const std::optional<FilterSpec>& filter,
                                     PhaseModel model,
                                     const std::optional<GridSpec>& grid) {
  GridSpec g;
  if (grid) {
    g = *grid;
  } else if (model == PhaseModel::Full) {
    g = GridSpec::full_default();
  } else {
    const WalkoffCoefficients w = walkoff_coefficients(config);
    const GridSpec base = model == PhaseModel::FirstOrder
                              ? GridSpec::first_order_default()
                              : GridSpec::second_order_default();
    g = expansion_grid(base, filter, w.c_o * config.crystal_length_mm);
  }

  SpectralAmplitude amp = spectral_amplitude(config, g, filter, model);
  if (comp) amp = apply_compensator(amp, config, *comp, model);
  const std::complex<double> ci = coherence_integral(amp);

  VisibilityResult out;
  out.visibility = std::abs(ci);
  out.phase_offset_rad = std::arg(ci);
  out.method = method_for(model);
  return out;
}

VisibilityResult visibility_first_order(const WalkoffCoefficients& walkoff) {
  VisibilityResult out;
  out.method = VisibilityResult::Method::ClosedFormFirstOrder;
  out.phase_offset_rad = 0.0;
  if (walkoff.tau1 == 0.0 && walkoff.tau2 == 0.0) {
    out.visibility = 1.0;  // degenerate: nothing walks off
    return out;
  }
  if (walkoff.tau2 > walkoff.tau1) {
    throw RegimeViolationError(
        "tau2 = " + std::to_string(walkoff.tau2) + " fs exceeds tau1 = " +
        std::to_string(walkoff.tau1) +
        " fs; the first-order closed form is invalid, use quadrature");
  }
  out.visibility = 1.0 - walkoff.tau2 / walkoff.tau1;
  return out;
}

VisibilityResult visibility_first_order(const SourceConfig& config) {
  return visibility_first_order(walkoff_coefficients(config));
}

VisibilityResult second_order_visibility(double d_parameter, double half_width_xi,
                                         int points) {
  if (!(d_parameter >= 0.0)) {
    throw Error("D must be >= 0, got " + std::to_string(d_parameter));
  }
  if (points < 3 || points % 2 == 0) {
    throw GridError("xi grid needs an odd point count >= 3");
  }
  const double step = 2.0 * half_width_xi / (points - 1);
  std::complex<double> num = 0.0;
  double den = 0.0;
  for (int i = 0; i < points; ++i) {
    const double xi = -half_width_xi + step * i;
    const double weight = (i == 0 || i == points - 1) ? 0.5 : 1.0;
    const double s = sinc(xi / 2.0);
    const double s2 = weight * s * s;
    num += s2 * std::exp(std::complex<double>(0.0, d_parameter * xi * xi));
    den += s2;
  }
  VisibilityResult out;
  out.visibility = std::abs(num) / den;
  out.phase_offset_rad = std::arg(num);
  out.method = VisibilityResult::Method::QuadratureSecondOrder;
  return out;
}

std::vector<std::pair<double, VisibilityResult>> scan_thickness(
    const SourceConfig& config, const std::optional<FilterSpec>& filter,
    std::span<const double> thickness_mm_grid, PhaseModel model,
    const std::optional<CompensatorSpec>& base) {
  const CompensatorSpec proto =
      base ? *base
           : design_compensator(config, MaterialDatabase::builtin().get("quartz")).spec;
  std::vector<std::pair<double, VisibilityResult>> out;
  out.reserve(thickness_mm_grid.size());
  for (double lq : thickness_mm_grid) {
    if (!(lq >= 0.0)) throw ConfigError("thickness grid must be nonnegative");
    CompensatorSpec comp = proto;
    comp.thickness_mm = lq;
    out.emplace_back(lq, visibility_integral(config, comp, filter, model));
  }
  return out;
}

std::vector<std::pair<double, VisibilityResult>> scan_bandwidth(
    const SourceConfig& config, std::span<const double> bandwidth_nm_grid) {
  const WalkoffCoefficients w = walkoff_coefficients(config);
  std::vector<std::pair<double, VisibilityResult>> out;
  out.reserve(bandwidth_nm_grid.size());
  for (double bw : bandwidth_nm_grid) {
    if (!(bw > 0.0)) throw ConfigError("bandwidths must be > 0");
    const FilterSpec filter = FilterSpec::centered(config, bw);
    const GridSpec g = expansion_grid(GridSpec::second_order_default(), filter,
                                      w.c_o * config.crystal_length_mm);
    SpectralAmplitude amp =
        spectral_amplitude(config, g, filter, PhaseModel::SecondOrder);
    // exact first-order compensation: strip the linear phase, keep B_e L Omega^2
    const double slope = w.orientation * w.tau2;
    for (size_t i = 0; i < amp.amp_v.size(); ++i) {
      amp.amp_v[i] *= std::exp(std::complex<double>(0.0, -slope * amp.detuning[i]));
    }
    const std::complex<double> ci = coherence_integral(amp);
    VisibilityResult res;
    res.visibility = std::abs(ci);
    res.phase_offset_rad = std::arg(ci);
    res.method = VisibilityResult::Method::QuadratureSecondOrder;
    out.emplace_back(bw, res);
  }
  return out;
}

size_t scan_argmax(std::span<const std::pair<double, VisibilityResult>> scan) {
  if (scan.empty()) throw Error("empty scan");
  double best = scan[0].second.visibility;
  for (const auto& [x, r] : scan) best = std::max(best, r.visibility);
  size_t arg = 0;
  bool found = false;
  for (size_t i = 0; i < scan.size(); ++i) {
    if (scan[i].second.visibility >= best - 1e-12 &&
        (!found || scan[i].first < scan[arg].first)) {
      arg = i;
      found = true;
    }
  }
  return arg;
}

}  // namespace ququart
