#ifndef QUQUART_TEST_SUPPORT_HPP
#define QUQUART_TEST_SUPPORT_HPP

#include <complex>
#include <random>

#include "ququart/polarization.hpp"
#include "ququart/source.hpp"
#include "ququart/spdc.hpp"

namespace ququart::testing {

inline SourceConfig paper_source() {
  SourceConfig cfg{MaterialDatabase::builtin().get("bbo")};
  cfg.crystal_length_mm = 2.0;
  cfg.pump_nm = 325.0;
  cfg.signal_nm = 600.0;
  cfg.idler_nm = SourceConfig::idler_for(325.0, 600.0);
  return cfg;
}

/// Random non-degenerate BBO source with both arms inside the Sellmeier
/// window, a collinear phase-matching solution and tau2 <= tau1.
inline SourceConfig random_source(std::mt19937& rng) {
  std::uniform_real_distribution<double> pump_dist(250.0, 400.0);
  std::uniform_real_distribution<double> frac_dist(0.78, 0.97);
  std::uniform_real_distribution<double> len_dist(0.5, 5.0);
  for (;;) {
    SourceConfig cfg{MaterialDatabase::builtin().get("bbo")};
    cfg.pump_nm = pump_dist(rng);
    cfg.signal_nm = 2.0 * cfg.pump_nm * frac_dist(rng);
    cfg.crystal_length_mm = len_dist(rng);
    const double inv = 1.0 / cfg.pump_nm - 1.0 / cfg.signal_nm;
    if (!(inv > 0.0)) continue;
    cfg.idler_nm = 1.0 / inv;
    if (!cfg.medium.in_range(cfg.signal_nm) || !cfg.medium.in_range(cfg.idler_nm)) {
      continue;
    }
    if (cfg.idler_nm > 1050.0) continue;
    try {
      const WalkoffCoefficients w = walkoff_coefficients(cfg);
      if (w.tau2 > w.tau1 || w.tau1 <= 0.0) continue;
    } catch (const Error&) {
      continue;
    }
    return cfg;
  }
}

inline QuquartState random_state(std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector4c a;
  for (int i = 0; i < 4; ++i) a(i) = std::complex<double>(g(rng), g(rng));
  return QuquartState(a);
}

inline JonesUnitary random_unitary(std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix2c m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
  }
  const Eigen::HouseholderQR<Matrix2c> qr(m);
  Matrix2c q = qr.householderQ();
  // fix the phase ambiguity so det stays well-conditioned
  Matrix2c r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 2; ++i) {
    if (std::abs(r(i, i)) > 0) q.col(i) *= r(i, i) / std::abs(r(i, i));
  }
  return JonesUnitary(q);
}

}  // namespace ququart::testing

#endif
