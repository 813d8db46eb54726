#include "ququart/spdc.hpp"

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

double trapezoid(std::span<const double> values, double step) {
  double sum = 0.5 * (values.front() + values.back());
  for (size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * step;
}

// Solved phase-matching state for one source, built once per operation.
struct Context {
  const SourceConfig& cfg;
  double w_pump, w1, w2;
  double theta_pm;
  RayKind ray_pump;    // extraordinary at theta_pm
  RayKind ray_photon;  // e-ray the down-converted photons see in crystal 2

  explicit Context(const SourceConfig& config)
      : cfg(config),
        w_pump(config.omega_pump()),
        w1(config.omega_signal()),
        w2(config.omega_idler()),
        theta_pm(phase_matching_angle(config.medium, config.pump_nm,
                                      config.signal_nm, config.idler_nm)),
        ray_pump(RayKind::extraordinary(theta_pm)),
        ray_photon(config.e_index_mode == EIndexMode::PhaseMatchedAngle
                       ? RayKind::extraordinary(theta_pm)
                       : RayKind::extraordinary(kPi / 2.0)) {}

  double mismatch(double detuning) const {
    return wavenumber(cfg.medium, RayKind::ordinary(), w1 + detuning) +
           wavenumber(cfg.medium, RayKind::ordinary(), w2 - detuning) -
           wavenumber(cfg.medium, ray_pump, w_pump);
  }

  // VV-vs-HH phase accumulated in the crystals, constant part included
  double phase(double detuning) const {
    const double l = cfg.crystal_length_mm;
    return (wavenumber(cfg.medium, ray_pump, w_pump) -
            wavenumber(cfg.medium, RayKind::ordinary(), w_pump)) *
               l +
           (wavenumber(cfg.medium, ray_photon, w1 + detuning) +
            wavenumber(cfg.medium, ray_photon, w2 - detuning)) *
               l;
  }

  WalkoffCoefficients walkoff() const {
    WalkoffCoefficients w;
    w.theta_pm = theta_pm;
    w.degenerate = cfg.degenerate();
    w.orientation = (w1 >= w2) ? 1.0 : -1.0;
    const Jet2 o1 = wavenumber_jet(cfg.medium, RayKind::ordinary(), w1);
    const Jet2 o2 = wavenumber_jet(cfg.medium, RayKind::ordinary(), w2);
    const Jet2 e1 = wavenumber_jet(cfg.medium, ray_photon, w1);
    const Jet2 e2 = wavenumber_jet(cfg.medium, ray_photon, w2);
    w.c_o = std::abs(o1.d1 - o2.d1);
    w.c_e = std::abs(e1.d1 - e2.d1);
    w.b_e = 0.5 * (e1.d2 + e2.d2);
    w.tau1 = w.c_o * cfg.crystal_length_mm;
    w.tau2 = w.c_e * cfg.crystal_length_mm;
    if (!w.degenerate) {
      w.d = w.b_e / (w.c_o * w.c_o * cfg.crystal_length_mm);
    }
    return w;
  }
};

}  // namespace

PhaseModel phase_model_from_string(std::string_view s) {
  if (s == "first-order" || s == "first_order") return PhaseModel::FirstOrder;
  if (s == "second-order" || s == "second_order") return PhaseModel::SecondOrder;
  if (s == "full") return PhaseModel::Full;
  throw ConfigError("unknown phase model '" + std::string(s) +
                    "' (expected first-order, second-order or full)");
}

std::string_view to_string(PhaseModel model) {
  switch (model) {
    case PhaseModel::FirstOrder: return "first-order";
    case PhaseModel::SecondOrder: return "second-order";
    default: return "full";
  }
}

FilterSpec FilterSpec::centered(const SourceConfig& config, double bandwidth_nm) {
  return {config.signal_nm, config.idler_nm, bandwidth_nm};
}

double FilterSpec::delta_omega(double center_nm) const {
  // intensity FWHM in nm -> amplitude 1/e half-width in rad/fs:
  // T_amp = exp(-x^2/dw^2), T_int FWHM = dw*sqrt(2 ln 2)
  const double fwhm_omega =
      2.0 * kPi * kSpeedOfLight * 1e6 * bandwidth_fwhm_nm / (center_nm * center_nm);
  return fwhm_omega / std::sqrt(2.0 * std::log(2.0));
}

void FilterSpec::validate() const {
  if (!(bandwidth_fwhm_nm > 0.0)) {
    throw ConfigError("filter.bandwidth_fwhm_nm must be > 0, got " +
                      std::to_string(bandwidth_fwhm_nm));
  }
  if (!(center1_nm > 0.0) || !(center2_nm > 0.0)) {
    throw ConfigError("filter centers must be > 0");
  }
}

WalkoffCoefficients walkoff_coefficients(const SourceConfig& config) {
  config.validate();
  return Context(config).walkoff();
}

double phase_mismatch(const SourceConfig& config, double detuning_rad_fs) {
  config.validate();
  return Context(config).mismatch(detuning_rad_fs);
}

double dispersive_phase(const SourceConfig& config, double detuning_rad_fs,
                        bool remove_constant) {
  config.validate();
  const Context ctx(config);
  const double phi = ctx.phase(detuning_rad_fs);
  return remove_constant ? phi - ctx.phase(0.0) : phi;
}

double GridSpec::resolve_half_width(double c_o_times_l) const {
  if (half_width > 0.0) return half_width;
  if (!(c_o_times_l > 0.0)) {
    throw DegenerateConfigError(
        "sinc-zero grid sizing undefined for a degenerate config (C_o = 0); "
        "give GridSpec::half_width explicitly");
  }
  return zeros * 2.0 * kPi / c_o_times_l;
}

SpectralAmplitude spectral_amplitude(const SourceConfig& config,
                                     const GridSpec& grid,
                                     const std::optional<FilterSpec>& filter,
                                     PhaseModel model) {
  config.validate();
  if (filter) filter->validate();
  if (grid.points < 3 || grid.points % 2 == 0) {
    throw GridError("grid needs an odd point count >= 3, got " +
                    std::to_string(grid.points));
  }

  const Context ctx(config);
  const WalkoffCoefficients w = ctx.walkoff();
  const double c_o_l = w.c_o * config.crystal_length_mm;
  const double hw = grid.resolve_half_width(c_o_l);
  const double step = 2.0 * hw / (grid.points - 1);

  if (c_o_l > 0.0) {
    const double lobe = 2.0 * kPi / c_o_l;
    if (hw < 8.0 * lobe * (1.0 - 1e-12)) {
      throw GridError("grid spans " + std::to_string(hw / lobe) +
                      " sinc zeros; need at least 8");
    }
    if (lobe / step < 16.0 * (1.0 - 1e-12)) {
      throw GridError("grid too coarse: " + std::to_string(lobe / step) +
                      " samples per sinc lobe; need at least 16");
    }
  }

  SpectralAmplitude amp;
  amp.detuning.resize(grid.points);
  amp.amp_h.resize(grid.points);
  amp.amp_v.resize(grid.points);

  const double l = config.crystal_length_mm;
  const double slope = w.orientation * w.tau2;
  double dw1 = 0.0, dw2 = 0.0, off1 = 0.0, off2 = 0.0;
  if (filter) {
    dw1 = filter->delta_omega(filter->center1_nm);
    dw2 = filter->delta_omega(filter->center2_nm);
    off1 = angular_frequency(filter->center1_nm) - ctx.w1;
    off2 = angular_frequency(filter->center2_nm) - ctx.w2;
  }

  const double phi0 = (model == PhaseModel::Full) ? ctx.phase(0.0) : 0.0;
  std::vector<double> intensity(grid.points);
  for (int i = 0; i < grid.points; ++i) {
    const double om = -hw + step * i;
    double envelope;
    double phi;
    switch (model) {
      case PhaseModel::Full:
        envelope = sinc(ctx.mismatch(om) * l / 2.0);
        phi = ctx.phase(om) - phi0;
        break;
      case PhaseModel::FirstOrder:
        envelope = sinc(c_o_l * om / 2.0);
        phi = slope * om;
        break;
      default:  // SecondOrder
        envelope = sinc(c_o_l * om / 2.0);
        phi = slope * om + w.b_e * l * om * om;
        break;
    }
    if (filter) {
      const double u1 = (om - off1) / dw1;
      const double u2 = (om + off2) / dw2;
      envelope *= std::exp(-u1 * u1) * std::exp(-u2 * u2);
    }
    amp.detuning[i] = om;
    amp.amp_h[i] = envelope;
    amp.amp_v[i] = envelope * std::exp(std::complex<double>(0.0, phi));
    intensity[i] = envelope * envelope;
  }
  amp.normalization = trapezoid(intensity, step);
  return amp;
}

std::complex<double> coherence_integral(const SpectralAmplitude& amp) {
  if (!(amp.normalization > 0.0)) {
    throw ZeroSpectrumError("spectral amplitude has zero norm");
  }
  const double step = amp.step();
  std::complex<double> num = 0.5 * (amp.amp_h.front() * std::conj(amp.amp_v.front()) +
                                    amp.amp_h.back() * std::conj(amp.amp_v.back()));
  for (size_t i = 1; i + 1 < amp.amp_h.size(); ++i) {
    num += amp.amp_h[i] * std::conj(amp.amp_v[i]);
  }
  // amp_h * conj(amp_v) = |F|^2 e^{-i phi_res}; report the +i convention
  return std::conj(num * step) / amp.normalization;
}

std::vector<double> correlation_function(const SpectralAmplitude& amp,
                                         Branch branch,
                                         std::span<const double> tau_fs) {
  if (tau_fs.empty()) return {};
  const double step = amp.step();
  double tau_max = 0.0;
  for (double t : tau_fs) tau_max = std::max(tau_max, std::abs(t));
  if (step * tau_max > kPi / 4.0) {
    throw GridError("detuning grid too coarse to resolve cos(Omega tau) at |tau| = " +
                    std::to_string(tau_max) + " fs (step " + std::to_string(step) + ")");
  }

  const size_t n = amp.amp_h.size();
  std::vector<double> out(tau_fs.size());
  for (size_t j = 0; j < tau_fs.size(); ++j) {
    const double tau = tau_fs[j];
    std::complex<double> acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double weight = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
      const double c = std::cos(amp.detuning[i] * tau);
      if (branch == Branch::H) {
        acc += weight * amp.amp_h[i] * c;
      } else {
        acc += weight * amp.amp_v[i] * c;
      }
    }
    const double mag = std::abs(acc * step);
    out[j] = mag * mag;
  }
  double peak = 0.0;
  for (double v : out) peak = std::max(peak, v);
  if (peak > 0.0) {
    for (double& v : out) v /= peak;
  }
  return out;
}

double correlation_overlap(const SourceConfig& config,
                           double compensator_delay_fs) {
  const WalkoffCoefficients w = walkoff_coefficients(config);
  const SpectralAmplitude amp = spectral_amplitude(
      config, GridSpec{32769, 0.0, 100.0}, std::nullopt, PhaseModel::FirstOrder);

  const double shift = w.tau2 - compensator_delay_fs;
  const int n_tau = 2001;
  const double tau_span = 2.5 * w.tau1 + std::abs(shift);
  std::vector<double> taus(n_tau), taus_shifted(n_tau);
  for (int i = 0; i < n_tau; ++i) {
    taus[i] = -tau_span + 2.0 * tau_span * i / (n_tau - 1);
    taus_shifted[i] = taus[i] - shift;
  }
  const std::vector<double> g_h = correlation_function(amp, Branch::H, taus);
  const std::vector<double> g_v = correlation_function(amp, Branch::H, taus_shifted);

  double num = 0.0, hh = 0.0, vv = 0.0;
  for (int i = 0; i < n_tau; ++i) {
    const double weight = (i == 0 || i == n_tau - 1) ? 0.5 : 1.0;
    num += weight * g_h[i] * g_v[i];
    hh += weight * g_h[i] * g_h[i];
    vv += weight * g_v[i] * g_v[i];
  }
  return num / std::sqrt(hh * vv);
}

}  // namespace ququart
