#include "ququart/run_config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ququart/errors.hpp"
#include "ququart/io.hpp"

namespace ququart {
namespace {

struct Entry {
  std::string value;
  int line;
  bool used = false;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class KeyValueFile {
 public:
  KeyValueFile(std::string_view text, std::string origin) : origin_(std::move(origin)) {
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view sv = trim(line);
      if (sv.empty() || sv.front() == '#') continue;
      const auto eq = sv.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(where(line_no) + ": expected 'key = value', got '" +
                          std::string(sv) + "'");
      }
      const std::string key{trim(sv.substr(0, eq))};
      const std::string value{trim(sv.substr(eq + 1))};
      if (key.empty()) throw ConfigError(where(line_no) + ": empty key");
      if (entries_.count(key)) {
        throw ConfigError(where(line_no) + ": duplicate key '" + key + "'");
      }
      entries_[key] = Entry{value, line_no};
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  bool has_section(const std::string& prefix) const {
    for (const auto& [k, v] : entries_) {
      if (k.rfind(prefix + ".", 0) == 0) return true;
    }
    return false;
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    return it->second.value;
  }

  std::optional<std::string> get_optional(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    it->second.used = true;
    return it->second.value;
  }

  double get_double(const std::string& key, double fallback) {
    const auto raw = get_optional(key);
    if (!raw) return fallback;
    return parse_double(key, *raw);
  }

  double require_double(const std::string& key) {
    const auto raw = get_optional(key);
    if (!raw) throw ConfigError(origin_ + ": missing required key '" + key + "'");
    return parse_double(key, *raw);
  }

  int get_int(const std::string& key, int fallback) {
    const auto raw = get_optional(key);
    if (!raw) return fallback;
    try {
      size_t used = 0;
      const int v = std::stoi(*raw, &used);
      if (used != raw->size()) throw std::invalid_argument(*raw);
      return v;
    } catch (const std::exception&) {
      throw ConfigError(where(entries_.at(key).line) + ": key '" + key +
                        "': expected an integer, got '" + *raw + "'");
    }
  }

  void reject_unused() const {
    for (const auto& [k, e] : entries_) {
      if (!e.used) {
        throw ConfigError(where(e.line) + ": unknown key '" + k + "'");
      }
    }
  }

  std::string where(int line) const { return origin_ + ":" + std::to_string(line); }

 private:
  double parse_double(const std::string& key, const std::string& raw) {
    try {
      size_t used = 0;
      const double v = std::stod(raw, &used);
      if (used != raw.size()) throw std::invalid_argument(raw);
      return v;
    } catch (const std::exception&) {
      throw ConfigError(where(entries_.at(key).line) + ": key '" + key +
                        "': expected a number, got '" + raw + "'");
    }
  }

  std::string origin_;
  std::map<std::string, Entry> entries_;
};

}  // namespace

RunConfig RunConfig::parse(std::string_view text, const std::string& origin,
                           const MaterialDatabase& db) {
  KeyValueFile kv(text, origin);

  const std::string material = kv.get_string("source.material", "bbo");
  SourceConfig src{db.get(material)};
  src.crystal_length_mm = kv.require_double("source.crystal_length_mm");
  src.pump_nm = kv.require_double("source.pump_nm");
  src.signal_nm = kv.require_double("source.signal_nm");
  const std::string idler = kv.get_string("source.idler_nm", "auto");
  if (idler == "auto") {
    src.idler_nm = SourceConfig::idler_for(src.pump_nm, src.signal_nm);
  } else {
    try {
      size_t used = 0;
      src.idler_nm = std::stod(idler, &used);
      if (used != idler.size()) throw std::invalid_argument(idler);
    } catch (const std::exception&) {
      throw ConfigError(origin + ": key 'source.idler_nm': expected a number or "
                        "auto, got '" + idler + "'");
    }
  }
  src.pump_balance = kv.get_double("source.pump_balance", 0.5);
  src.pump_phase_rad = kv.get_double("source.pump_phase_rad", 0.0);
  src.e_index_mode =
      e_index_mode_from_string(kv.get_string("source.e_index_mode", "phase_matched"));
  src.validate();

  std::optional<FilterSpec> filter;
  if (kv.has_section("filter")) {
    FilterSpec f = FilterSpec::centered(src, kv.require_double("filter.bandwidth_fwhm_nm"));
    const std::string c1 = kv.get_string("filter.center1_nm", "auto");
    const std::string c2 = kv.get_string("filter.center2_nm", "auto");
    if (c1 != "auto") f.center1_nm = kv.get_double("filter.center1_nm", f.center1_nm);
    if (c2 != "auto") f.center2_nm = kv.get_double("filter.center2_nm", f.center2_nm);
    f.validate();
    filter = f;
  }

  std::optional<CompensatorSpec> comp;
  bool auto_thickness = false;
  if (kv.has_section("compensator")) {
    const std::string medium = kv.get_string("compensator.material", "quartz");
    const std::string arm = kv.get_string("compensator.arm", "auto");
    const std::string model = kv.get_string("compensator.model", "full");
    const std::string thick = kv.get_string("compensator.thickness_mm", "auto");
    CompensatorSpec c{db.get(medium), 0.0,
                      arm == "auto"
                          ? (src.signal_nm <= src.idler_nm ? Arm::Signal : Arm::Idler)
                          : arm_from_string(arm),
                      model == "group_delay"};
    if (model != "full" && model != "group_delay") {
      throw ConfigError(origin + ": key 'compensator.model': expected full or "
                        "group_delay, got '" + model + "'");
    }
    if (thick == "auto") {
      auto_thickness = true;
    } else {
      try {
        c.thickness_mm = std::stod(thick);
      } catch (const std::exception&) {
        throw ConfigError(origin + ": key 'compensator.thickness_mm': expected a "
                          "number or auto, got '" + thick + "'");
      }
      c.validate();
    }
    comp = c;
  }

  std::optional<int> grid_points;
  std::optional<double> grid_zeros;
  if (kv.has("grid.points")) grid_points = kv.get_int("grid.points", 0);
  if (kv.has("grid.zeros")) grid_zeros = kv.get_double("grid.zeros", 0.0);

  kv.reject_unused();
  return RunConfig{std::move(src), filter, comp, auto_thickness, grid_points, grid_zeros};
}

RunConfig RunConfig::load(const std::filesystem::path& path,
                          const MaterialDatabase& db) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string(), db);
}

std::string RunConfig::serialize() const {
  std::ostringstream out;
  out << "source.material = " << source.medium.name() << "\n";
  out << "source.crystal_length_mm = " << format_double(source.crystal_length_mm) << "\n";
  out << "source.pump_nm = " << format_double(source.pump_nm) << "\n";
  out << "source.signal_nm = " << format_double(source.signal_nm) << "\n";
  out << "source.idler_nm = " << format_double(source.idler_nm) << "\n";
  out << "source.pump_balance = " << format_double(source.pump_balance) << "\n";
  out << "source.pump_phase_rad = " << format_double(source.pump_phase_rad) << "\n";
  out << "source.e_index_mode = " << to_string(source.e_index_mode) << "\n";
  if (filter) {
    out << "filter.bandwidth_fwhm_nm = " << format_double(filter->bandwidth_fwhm_nm) << "\n";
    out << "filter.center1_nm = " << format_double(filter->center1_nm) << "\n";
    out << "filter.center2_nm = " << format_double(filter->center2_nm) << "\n";
  }
  if (compensator) {
    out << "compensator.material = " << compensator->medium.name() << "\n";
    if (compensator_auto_thickness) {
      out << "compensator.thickness_mm = auto\n";
    } else {
      out << "compensator.thickness_mm = "
          << format_double(compensator->thickness_mm) << "\n";
    }
    out << "compensator.arm = " << to_string(compensator->arm) << "\n";
    out << "compensator.model = "
        << (compensator->group_delay_only ? "group_delay" : "full") << "\n";
  }
  if (grid_points) out << "grid.points = " << *grid_points << "\n";
  if (grid_zeros) out << "grid.zeros = " << format_double(*grid_zeros) << "\n";
  return out.str();
}

std::optional<CompensatorSpec> RunConfig::resolved_compensator() const {
  if (!compensator) return std::nullopt;
  if (!compensator_auto_thickness) return compensator;
  CompensatorSpec c = *compensator;
  c.thickness_mm = design_compensator(source, c.medium).spec.thickness_mm;
  return c;
}

GridSpec RunConfig::grid_for(PhaseModel model) const {
  GridSpec g;
  switch (model) {
    case PhaseModel::FirstOrder: g = GridSpec::first_order_default(); break;
    case PhaseModel::SecondOrder: g = GridSpec::second_order_default(); break;
    default: g = GridSpec::full_default(); break;
  }
  if (grid_points) g.points = *grid_points;
  if (grid_zeros) {
    g.zeros = *grid_zeros;
    g.half_width = 0.0;
  }
  return g;
}

}  // namespace ququart
