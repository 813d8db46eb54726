#include "ququart/io.hpp"

#include <charconv>

#include <nlohmann/json.hpp>

#include "ququart/errors.hpp"

namespace ququart {

std::string format_double(double value) {
  // shortest round-trip rendering; locale-free and deterministic
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw Error("CSV row width " + std::to_string(row.size()) +
                  " != header width " + std::to_string(table.columns.size()));
    }
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << "\n";
  }
}

namespace {

nlohmann::json complex_pair(std::complex<double> z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace

std::string to_json_text(const QuquartState& state) {
  nlohmann::json j;
  j["basis"] = {"HH", "HV", "VH", "VV"};
  nlohmann::json amps = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) amps.push_back(complex_pair(state.amplitudes()(i)));
  j["amplitudes"] = amps;
  return j.dump(2);
}

std::string to_json_text(const PolDensityMatrix& rho) {
  nlohmann::json j;
  j["basis"] = {"HH", "HV", "VH", "VV"};
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < 4; ++k) row.push_back(complex_pair(rho.entries()(i, k)));
    rows.push_back(row);
  }
  j["entries"] = rows;
  return j.dump(2);
}

QuquartState state_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad state JSON: ") + e.what());
  }
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array() ||
      j["amplitudes"].size() != 4) {
    throw ConfigError("state JSON needs an 'amplitudes' array of 4 [re, im] pairs");
  }
  Vector4c a;
  for (int i = 0; i < 4; ++i) {
    const auto& p = j["amplitudes"][i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ConfigError("state JSON amplitude " + std::to_string(i) +
                        " is not a [re, im] pair");
    }
    a(i) = std::complex<double>(p[0].get<double>(), p[1].get<double>());
  }
  return QuquartState(a);
}

}  // namespace ququart
