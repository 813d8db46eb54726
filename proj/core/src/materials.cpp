#include "ququart/materials.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "ququart/errors.hpp"

namespace ququart {
namespace {

// Compiled-in copy of core/data/materials.dat (kept in sync by a test).
constexpr std::string_view kBuiltinMaterials = R"(# Principal-index dispersion data for uniaxial crystals.
#
# One record per medium. Keys:
#   material      = name (case-insensitive lookup key)
#   formula       = pole_lambda2 | two_pole_fractional, with x = (lambda/um)^2:
#                     pole_lambda2:        n^2 = A + B/(x - C) + D*x
#                     two_pole_fractional: n^2 = A + B1*x/(x - C1) + B2*x/(x - C2)
#   range_nm      = validity window of the fit (min max); evaluation outside
#                   this window is an error, never an extrapolation
#   ordinary      = coefficient list for n_o
#   extraordinary = coefficient list for n_e
#   source        = citation for the coefficient set

material = bbo
formula = pole_lambda2
range_nm = 220 1060
ordinary = 2.7405 0.0184 0.0179 -0.0155
extraordinary = 2.3730 0.0128 0.0156 -0.0044
source = Eimerl, Davis, Velsko, Graham, Zalkin, J. Appl. Phys. 62, 1968 (1987)

material = quartz
formula = two_pole_fractional
range_nm = 198 2050
ordinary = 1.28604141 1.07044083 0.0100585997 1.10202242 100.0
extraordinary = 1.28851804 1.09509924 0.0102101864 1.15662475 100.0
source = Ghosh, Opt. Commun. 163, 95 (1999)
)";

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<double> parse_numbers(std::string_view text, const std::string& where) {
  std::vector<double> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    try {
      size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError(where + ": expected a number, got '" + tok + "'");
    }
  }
  return out;
}

struct RecordBuilder {
  std::string name;
  std::optional<SellmeierForm> form;
  std::vector<double> ordinary, extraordinary;
  std::optional<std::pair<double, double>> range;
  std::string source;
  int start_line = 0;
};

size_t coeff_count(SellmeierForm form) {
  return form == SellmeierForm::PoleLambda2 ? 4 : 5;
}

SellmeierSet make_set(SellmeierForm form, const std::vector<double>& coeffs,
                      const std::string& where) {
  if (coeffs.size() != coeff_count(form)) {
    throw ConfigError(where + ": formula '" + std::string(to_string(form)) +
                      "' needs " + std::to_string(coeff_count(form)) +
                      " coefficients, got " + std::to_string(coeffs.size()));
  }
  SellmeierSet set;
  set.form = form;
  for (size_t i = 0; i < coeffs.size(); ++i) set.coeff[i] = coeffs[i];
  return set;
}

DispersiveMedium finish(const RecordBuilder& r, const std::string& origin) {
  const std::string where = origin + ":" + std::to_string(r.start_line);
  if (!r.form) throw ConfigError(where + ": record '" + r.name + "' has no formula");
  if (!r.range) throw ConfigError(where + ": record '" + r.name + "' has no range_nm");
  if (r.ordinary.empty() || r.extraordinary.empty()) {
    throw ConfigError(where + ": record '" + r.name +
                      "' needs both ordinary and extraordinary coefficients");
  }
  return DispersiveMedium(r.name, make_set(*r.form, r.ordinary, where),
                          make_set(*r.form, r.extraordinary, where),
                          r.range->first, r.range->second, r.source);
}

}  // namespace

SellmeierForm sellmeier_form_from_string(std::string_view s) {
  const std::string v = to_lower(trim(s));
  if (v == "pole_lambda2") return SellmeierForm::PoleLambda2;
  if (v == "two_pole_fractional") return SellmeierForm::TwoPoleFractional;
  throw ConfigError("unknown dispersion formula '" + v + "'");
}

std::string_view to_string(SellmeierForm form) {
  return form == SellmeierForm::PoleLambda2 ? "pole_lambda2" : "two_pole_fractional";
}

Jet2 SellmeierSet::index_squared(const Jet2& x) const {
  if (form == SellmeierForm::PoleLambda2) {
    return Jet2(coeff[0]) + Jet2(coeff[1]) / (x - Jet2(coeff[2])) + Jet2(coeff[3]) * x;
  }
  return Jet2(coeff[0]) + Jet2(coeff[1]) * x / (x - Jet2(coeff[2])) +
         Jet2(coeff[3]) * x / (x - Jet2(coeff[4]));
}

double SellmeierSet::index(double wavelength_nm) const {
  const double x = wavelength_nm * 1e-3 * wavelength_nm * 1e-3;  // um^2
  return std::sqrt(index_squared(Jet2(x)).v);
}

DispersiveMedium::DispersiveMedium(std::string name, SellmeierSet ordinary,
                                   SellmeierSet extraordinary, double min_nm,
                                   double max_nm, std::string source)
    : name_(std::move(name)),
      ordinary_(ordinary),
      extraordinary_(extraordinary),
      min_nm_(min_nm),
      max_nm_(max_nm),
      source_(std::move(source)) {
  if (!(min_nm_ > 0.0) || !(max_nm_ > min_nm_)) {
    throw ConfigError("material '" + name_ + "': bad range_nm [" +
                      std::to_string(min_nm_) + ", " + std::to_string(max_nm_) + "]");
  }
  // Both index functions must stay physical (> 1) over the whole window.
  for (int i = 0; i <= 200; ++i) {
    const double lam = min_nm_ + (max_nm_ - min_nm_) * i / 200.0;
    const double x = lam * 1e-3 * lam * 1e-3;
    for (const SellmeierSet* set : {&ordinary_, &extraordinary_}) {
      const double n2 = set->index_squared(Jet2(x)).v;
      if (!(n2 > 1.0) || !std::isfinite(n2)) {
        throw ConfigError("material '" + name_ + "': n^2 = " + std::to_string(n2) +
                          " at " + std::to_string(lam) + " nm is unphysical");
      }
    }
  }
}

void DispersiveMedium::require_in_range(double wavelength_nm) const {
  if (!in_range(wavelength_nm)) {
    throw OutOfRangeError(name_ + ": " + std::to_string(wavelength_nm) +
                          " nm outside the published fit range [" +
                          std::to_string(min_nm_) + ", " + std::to_string(max_nm_) +
                          "] nm");
  }
}

MaterialDatabase MaterialDatabase::parse(std::string_view text,
                                         const std::string& origin) {
  MaterialDatabase db;
  std::optional<RecordBuilder> current;
  auto flush = [&] {
    if (!current) return;
    DispersiveMedium medium = finish(*current, origin);
    db.media_.insert_or_assign(to_lower(medium.name()), std::move(medium));
    current.reset();
  };

  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const auto eq = sv.find('=');
    const std::string where = origin + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + std::string(sv) + "'");
    }
    const std::string key = to_lower(trim(sv.substr(0, eq)));
    const std::string value{trim(sv.substr(eq + 1))};

    if (key == "material") {
      flush();
      current = RecordBuilder{};
      current->name = to_lower(value);
      current->start_line = line_no;
      continue;
    }
    if (!current) {
      throw ConfigError(where + ": key '" + key + "' before any 'material ='");
    }
    if (key == "formula") {
      current->form = sellmeier_form_from_string(value);
    } else if (key == "range_nm") {
      const auto nums = parse_numbers(value, where);
      if (nums.size() != 2) throw ConfigError(where + ": range_nm needs two numbers");
      current->range = {nums[0], nums[1]};
    } else if (key == "ordinary") {
      current->ordinary = parse_numbers(value, where);
    } else if (key == "extraordinary") {
      current->extraordinary = parse_numbers(value, where);
    } else if (key == "source") {
      current->source = value;
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  flush();
  if (db.media_.empty()) throw ConfigError(origin + ": no material records");
  return db;
}

MaterialDatabase MaterialDatabase::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open material data file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

const MaterialDatabase& MaterialDatabase::builtin() {
  static const MaterialDatabase db = parse(kBuiltinMaterials, "<builtin>");
  return db;
}

const DispersiveMedium& MaterialDatabase::get(const std::string& name) const {
  const auto it = media_.find(to_lower(name));
  if (it == media_.end()) {
    std::string known;
    for (const auto& [k, v] : media_) known += (known.empty() ? "" : ", ") + k;
    throw ConfigError("unknown material '" + name + "' (have: " + known + ")");
  }
  return it->second;
}

bool MaterialDatabase::contains(const std::string& name) const {
  return media_.count(to_lower(name)) != 0;
}

std::vector<std::string> MaterialDatabase::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : media_) out.push_back(k);
  return out;
}

}  // namespace ququart
