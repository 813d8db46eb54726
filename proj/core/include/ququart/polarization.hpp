#ifndef QUQUART_POLARIZATION_HPP
#define QUQUART_POLARIZATION_HPP

#include <Eigen/Dense>
#include <complex>

#include "ququart/spdc.hpp"

namespace ququart {

using Vector2c = Eigen::Vector2cd;
using Vector4c = Eigen::Vector4cd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// Pure two-photon polarization state, amplitudes ordered (HH, HV, VH, VV).
class QuquartState {
 public:
  /// Normalizes; throws ZeroSpectrumError for the zero vector.
  explicit QuquartState(const Vector4c& amplitudes);
  QuquartState(std::complex<double> hh, std::complex<double> hv,
               std::complex<double> vh, std::complex<double> vv);

  const Vector4c& amplitudes() const { return a_; }
  std::complex<double> operator[](int i) const { return a_(i); }

  /// Amplitudes as a 2x2 matrix M(i, j) = <i_1 j_2|psi>, i,j in {H, V}.
  Matrix2c as_matrix() const;

  double overlap(const QuquartState& other) const {
    return std::abs(a_.dot(other.a_));  // |<this|other>|
  }

 private:
  Vector4c a_;
};

/// psi = sqrt(mu) |A1 A2> + sqrt(1 - mu) |B1 B2>, mu >= 1/2,
/// <A_j|B_j> = 0.
struct SchmidtForm {
  double mu = 1.0;
  Vector2c a1, a2;  // dominant pair
  Vector2c b1, b2;  // orthogonal pair

  QuquartState reconstruct() const;
};

SchmidtForm schmidt_decompose(const QuquartState& state);

/// Partial trace over the other photon; subsystem is 1 or 2.
Matrix2c reduced_state(const QuquartState& state, int subsystem);

/// 4x4 polarization density operator in the (HH, HV, VH, VV) basis.
/// Construction enforces Hermiticity (1e-12), unit trace (1e-12) and
/// positive semidefiniteness (min eigenvalue >= -1e-10); violations throw
/// Error rather than being projected away.
class PolDensityMatrix {
 public:
  explicit PolDensityMatrix(const Matrix4c& entries);
  static PolDensityMatrix pure(const QuquartState& state);

  const Matrix4c& entries() const { return m_; }

 private:
  Matrix4c m_;
};

/// 2x2 Jones matrix, unitary to 1e-12.
class JonesUnitary {
 public:
  explicit JonesUnitary(const Matrix2c& entries);
  static JonesUnitary identity();

  const Matrix2c& entries() const { return m_; }

 private:
  Matrix2c m_;
};

/// Retarder with fast axis at axis_angle from horizontal and retardance
/// phase on the slow axis: R(theta) diag(1, e^{i Gamma}) R(-theta).
JonesUnitary waveplate(double retardance_rad, double axis_angle_rad);
JonesUnitary half_wave_plate(double axis_angle_rad);
JonesUnitary quarter_wave_plate(double axis_angle_rad);

/// QWP followed by HWP realizing |target> = e^{i alpha} U |H>.
/// residual_phase is the extra phase U|V> picks up relative to the
/// orthogonal complement of the target, reported for downstream
/// cancellation by the pump plates.
struct PlateAngles {
  double qwp_rad = 0.0;
  double hwp_rad = 0.0;
  double residual_phase_rad = 0.0;

  JonesUnitary unitary() const;
};

/// Coarse 64x64 grid seed + compass refinement; post-checked to overlap
/// 1 - 1e-9. Throws ConvergenceError below 1 - 1e-6 (not expected: every
/// pure qubit state is reachable).
PlateAngles plate_angles_for_target(const Vector2c& target);

/// (U1 x U2) |psi>. Throws NonUnitaryError for non-unitary inputs.
QuquartState apply_local(const QuquartState& state, const JonesUnitary& u1,
                         const JonesUnitary& u2);

/// Settings that prepare a target state with the two-crystal scheme:
/// pump balance mu (crystal weights), pump phase, and per-arm plate pairs.
struct PreparationRecipe {
  double mu = 1.0;
  double pump_plate_angle_rad = 0.0;  // arcsin(sqrt(1 - mu))
  double pump_phase_rad = 0.0;
  PlateAngles arm1, arm2;
  bool needs_compensation = false;  // both Schmidt branches populated
};

PreparationRecipe prepare_arbitrary(const QuquartState& target);

/// Forward model of a recipe assuming an ideal (dispersion-free) source.
QuquartState simulate_recipe(const PreparationRecipe& recipe);

/// Partial trace of the full polarization-frequency state over frequency:
/// diagonal (mu, 0, 0, 1-mu) plus the coherence
/// <HH|rho|VV> = sqrt(mu(1-mu)) e^{-i pump_phase} conj(coherence_integral).
PolDensityMatrix density_from_spectrum(const SpectralAmplitude& amp,
                                       double mu, double pump_phase_rad);

/// F = <psi|rho|psi> (pure target).
double fidelity(const PolDensityMatrix& rho, const QuquartState& target);

/// Wootters concurrence via the spin-flip spectrum.
double concurrence(const PolDensityMatrix& rho);
double concurrence(const QuquartState& state);

/// Tr rho^2.
double purity(const PolDensityMatrix& rho);

}  // namespace ququart

#endif
