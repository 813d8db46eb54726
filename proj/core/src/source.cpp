#include "ququart/source.hpp"

#include <cmath>
#include <string>

#include "ququart/errors.hpp"

namespace ququart {

EIndexMode e_index_mode_from_string(std::string_view s) {
  if (s == "phase_matched") return EIndexMode::PhaseMatchedAngle;
  if (s == "principal") return EIndexMode::Principal;
  throw ConfigError("unknown e_index_mode '" + std::string(s) +
                    "' (expected phase_matched or principal)");
}

std::string_view to_string(EIndexMode mode) {
  return mode == EIndexMode::PhaseMatchedAngle ? "phase_matched" : "principal";
}

void SourceConfig::validate() const {
  if (!(crystal_length_mm > 0.0)) {
    throw ConfigError("source.crystal_length_mm must be > 0, got " +
                      std::to_string(crystal_length_mm));
  }
  if (!(pump_balance >= 0.0 && pump_balance <= 1.0)) {
    throw ConfigError("source.pump_balance must lie in [0, 1], got " +
                      std::to_string(pump_balance));
  }
  const double lhs = 1.0 / pump_nm;
  const double rhs = 1.0 / signal_nm + 1.0 / idler_nm;
  if (!(std::abs(lhs - rhs) <= 1e-9 * lhs)) {
    throw ConfigError("energy conservation violated: 1/" + std::to_string(pump_nm) +
                      " != 1/" + std::to_string(signal_nm) + " + 1/" +
                      std::to_string(idler_nm) + " (relative error " +
                      std::to_string(std::abs(lhs - rhs) / lhs) +
                      "); use idler_nm = auto to derive the idler");
  }
  for (double lam : {pump_nm, signal_nm, idler_nm}) medium.require_in_range(lam);
}

double SourceConfig::idler_for(double pump_nm, double signal_nm) {
  const double inv = 1.0 / pump_nm - 1.0 / signal_nm;
  if (!(inv > 0.0)) {
    throw ConfigError("no idler: signal " + std::to_string(signal_nm) +
                      " nm is not longer-wave than the pump " +
                      std::to_string(pump_nm) + " nm");
  }
  return 1.0 / inv;
}

}  // namespace ququart
