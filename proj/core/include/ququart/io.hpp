#ifndef QUQUART_IO_HPP
#define QUQUART_IO_HPP

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ququart/polarization.hpp"

namespace ququart {

/// Shortest round-trip decimal rendering; locale-free, so outputs are
/// byte-identical across runs.
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);

/// JSON text for states and density matrices: complex entries as [re, im]
/// pairs, basis order (HH, HV, VH, VV).
std::string to_json_text(const QuquartState& state);
std::string to_json_text(const PolDensityMatrix& rho);
QuquartState state_from_json_text(const std::string& text);

}  // namespace ququart

#endif
