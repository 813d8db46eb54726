#include "ququart/polarization.hpp"

#include <algorithm>
#include <cmath>

#include "ququart/errors.hpp"

namespace ququart {
namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kUnitaryTol = 1e-12;

Vector2c orthogonal_complement(const Vector2c& a) {
  return Vector2c(-std::conj(a(1)), std::conj(a(0)));
}

double wrap_phase(double phi) {
  while (phi > kPi) phi -= 2.0 * kPi;
  while (phi <= -kPi) phi += 2.0 * kPi;
  return phi;
}

}  // namespace

QuquartState::QuquartState(const Vector4c& amplitudes) : a_(amplitudes) {
  const double norm = a_.norm();
  if (!(norm > 1e-300)) {
    throw ConfigError("cannot normalize a zero ququart state");
  }
  a_ /= norm;
}

QuquartState::QuquartState(std::complex<double> hh, std::complex<double> hv,
                           std::complex<double> vh, std::complex<double> vv)
    : QuquartState(Vector4c(hh, hv, vh, vv)) {}

Matrix2c QuquartState::as_matrix() const {
  Matrix2c m;
  m << a_(0), a_(1), a_(2), a_(3);
  return m;
}

QuquartState SchmidtForm::reconstruct() const {
  const double w1 = std::sqrt(std::max(0.0, mu));
  const double w2 = std::sqrt(std::max(0.0, 1.0 - mu));
  Vector4c amps;
  amps << w1 * a1(0) * a2(0) + w2 * b1(0) * b2(0),
      w1 * a1(0) * a2(1) + w2 * b1(0) * b2(1),
      w1 * a1(1) * a2(0) + w2 * b1(1) * b2(0),
      w1 * a1(1) * a2(1) + w2 * b1(1) * b2(1);
  return QuquartState(amps);
}

SchmidtForm schmidt_decompose(const QuquartState& state) {
  // psi_ij = sum_k s_k U(i,k) conj(V(j,k)): photon-1 vectors are the U
  // columns, photon-2 vectors the conjugated V columns.
  const Eigen::JacobiSVD<Matrix2c> svd(
      state.as_matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtForm out;
  const double s0 = svd.singularValues()(0);
  out.mu = std::min(1.0, s0 * s0);
  out.a1 = svd.matrixU().col(0);
  out.a2 = svd.matrixV().col(0).conjugate();
  out.b1 = svd.matrixU().col(1);
  out.b2 = svd.matrixV().col(1).conjugate();
  return out;
}

Matrix2c reduced_state(const QuquartState& state, int subsystem) {
  if (subsystem != 1 && subsystem != 2) {
    throw Error("subsystem must be 1 or 2, got " + std::to_string(subsystem));
  }
  const Matrix2c m = state.as_matrix();
  if (subsystem == 1) return m * m.adjoint();
  return (m.adjoint() * m).transpose();
}

PolDensityMatrix::PolDensityMatrix(const Matrix4c& entries) : m_(entries) {
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm <= kHermTol)) {
    throw Error("density matrix not Hermitian: max |rho - rho^dag| = " +
                std::to_string(herm));
  }
  const std::complex<double> tr = m_.trace();
  if (!(std::abs(tr - 1.0) <= kTraceTol)) {
    throw Error("density matrix trace != 1: " + std::to_string(tr.real()));
  }
  const Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (m_ + m_.adjoint()),
                                                   Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (!(min_eig >= -kPsdTol)) {
    throw Error("density matrix not PSD: min eigenvalue " + std::to_string(min_eig));
  }
}

PolDensityMatrix PolDensityMatrix::pure(const QuquartState& state) {
  return PolDensityMatrix(state.amplitudes() * state.amplitudes().adjoint());
}

JonesUnitary::JonesUnitary(const Matrix2c& entries) : m_(entries) {
  const double dev = (m_.adjoint() * m_ - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  if (!(dev <= kUnitaryTol)) {
    throw NonUnitaryError("Jones matrix not unitary: max |U^dag U - 1| = " +
                          std::to_string(dev));
  }
}

JonesUnitary JonesUnitary::identity() { return JonesUnitary(Matrix2c::Identity()); }

JonesUnitary waveplate(double retardance_rad, double axis_angle_rad) {
  const double c = std::cos(axis_angle_rad);
  const double s = std::sin(axis_angle_rad);
  const std::complex<double> r = std::exp(std::complex<double>(0.0, retardance_rad));
  Matrix2c m;
  m << c * c + r * s * s, c * s * (1.0 - r),
       c * s * (1.0 - r), s * s + r * c * c;
  return JonesUnitary(m);
}

JonesUnitary half_wave_plate(double axis_angle_rad) {
  return waveplate(kPi, axis_angle_rad);
}

JonesUnitary quarter_wave_plate(double axis_angle_rad) {
  return waveplate(kPi / 2.0, axis_angle_rad);
}

JonesUnitary PlateAngles::unitary() const {
  return JonesUnitary(half_wave_plate(hwp_rad).entries() *
                      quarter_wave_plate(qwp_rad).entries());
}

PlateAngles plate_angles_for_target(const Vector2c& target) {
  const double norm = target.norm();
  if (!(norm > 1e-300)) throw Error("zero target state");
  const Vector2c a = target / norm;

  const auto overlap2 = [&](double qwp, double hwp) {
    const Matrix2c u =
        half_wave_plate(hwp).entries() * quarter_wave_plate(qwp).entries();
    const std::complex<double> ov = a.dot(u.col(0));  // <a|U|H>
    return std::norm(ov);
  };

  // coarse seed on [0, pi)^2, then compass refinement
  constexpr int kGrid = 64;
  double best_q = 0.0, best_h = 0.0, best = -1.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const double q = kPi * i / kGrid;
      const double h = kPi * j / kGrid;
      const double v = overlap2(q, h);
      if (v > best) {
        best = v;
        best_q = q;
        best_h = h;
      }
    }
  }
  double step = kPi / kGrid;
  for (int evals = 0; step > 1e-10 && evals < 200000; evals += 4) {
    bool moved = false;
    for (const auto& [dq, dh] : {std::pair{step, 0.0}, {-step, 0.0},
                                 {0.0, step}, {0.0, -step}}) {
      const double v = overlap2(best_q + dq, best_h + dh);
      if (v > best) {
        best = v;
        best_q += dq;
        best_h += dh;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }

  if (best < 1.0 - 1e-6) {
    throw ConvergenceError("plate-angle search stalled at overlap^2 = " +
                           std::to_string(best));
  }

  PlateAngles out;
  out.qwp_rad = best_q;
  out.hwp_rad = best_h;
  const Matrix2c u = out.unitary().entries();
  const std::complex<double> amp_a = a.dot(u.col(0));        // e^{i alpha}
  const Vector2c b = orthogonal_complement(a);
  const std::complex<double> amp_b = b.dot(u.col(1));        // e^{i beta}
  out.residual_phase_rad = wrap_phase(std::arg(amp_b) - std::arg(amp_a));
  return out;
}

QuquartState apply_local(const QuquartState& state, const JonesUnitary& u1,
                         const JonesUnitary& u2) {
  const Matrix2c m =
      u1.entries() * state.as_matrix() * u2.entries().transpose();
  Vector4c amps;
  amps << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return QuquartState(amps);
}

PreparationRecipe prepare_arbitrary(const QuquartState& target) {
  const SchmidtForm sf = schmidt_decompose(target);
  PreparationRecipe recipe;
  recipe.mu = sf.mu;
  recipe.pump_plate_angle_rad = std::asin(std::sqrt(std::max(0.0, 1.0 - sf.mu)));
  recipe.arm1 = plate_angles_for_target(sf.a1);
  recipe.arm2 = plate_angles_for_target(sf.a2);
  recipe.needs_compensation = sf.mu * (1.0 - sf.mu) > 1e-10;

  // Align the phases the plates give the two branches with the Schmidt
  // vectors; any mismatch is pushed onto the pump quartz plates.
  const Matrix2c u1 = recipe.arm1.unitary().entries();
  const Matrix2c u2 = recipe.arm2.unitary().entries();
  const double alpha = std::arg(sf.a1.dot(u1.col(0))) + std::arg(sf.a2.dot(u2.col(0)));
  if (recipe.needs_compensation) {
    const double beta = std::arg(sf.b1.dot(u1.col(1))) + std::arg(sf.b2.dot(u2.col(1)));
    recipe.pump_phase_rad = wrap_phase(alpha - beta);
  }
  return recipe;
}

QuquartState simulate_recipe(const PreparationRecipe& recipe) {
  const double w1 = std::sqrt(std::max(0.0, recipe.mu));
  const double w2 = std::sqrt(std::max(0.0, 1.0 - recipe.mu));
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, recipe.pump_phase_rad));
  const QuquartState seed(w1, 0.0, 0.0, w2 * phase);
  return apply_local(seed, recipe.arm1.unitary(), recipe.arm2.unitary());
}

PolDensityMatrix density_from_spectrum(const SpectralAmplitude& amp, double mu,
                                       double pump_phase_rad) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw Error("pump balance mu must lie in [0, 1], got " + std::to_string(mu));
  }
  const std::complex<double> ci = coherence_integral(amp);
  const std::complex<double> z =
      std::sqrt(mu * (1.0 - mu)) *
      std::exp(std::complex<double>(0.0, -pump_phase_rad)) * std::conj(ci);
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = mu;
  m(3, 3) = 1.0 - mu;
  m(0, 3) = z;
  m(3, 0) = std::conj(z);
  return PolDensityMatrix(m);
}

double fidelity(const PolDensityMatrix& rho, const QuquartState& target) {
  const std::complex<double> f =
      target.amplitudes().dot(rho.entries() * target.amplitudes());
  return std::clamp(f.real(), 0.0, 1.0);
}

double concurrence(const PolDensityMatrix& rho) {
  // spin flip: rho_tilde = (sy x sy) conj(rho) (sy x sy)
  Matrix4c flip = Matrix4c::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Matrix4c prod = rho.entries() * flip * rho.entries().conjugate() * flip;
  const Eigen::ComplexEigenSolver<Matrix4c> es(prod, false);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) {
    lam[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double concurrence(const QuquartState& state) {
  const Vector4c& a = state.amplitudes();
  return 2.0 * std::abs(a(0) * a(3) - a(1) * a(2));
}

double purity(const PolDensityMatrix& rho) {
  return (rho.entries() * rho.entries()).trace().real();
}

}  // namespace ququart
