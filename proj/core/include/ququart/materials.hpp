#ifndef QUQUART_MATERIALS_HPP
#define QUQUART_MATERIALS_HPP

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ququart/jet.hpp"

namespace ququart {

/// Dispersion formula families shipped with the material data.
/// Both take x = (lambda / um)^2.
enum class SellmeierForm {
  PoleLambda2,        // n^2 = A + B/(x - C) + D*x
  TwoPoleFractional,  // n^2 = A + B1*x/(x - C1) + B2*x/(x - C2)
};

SellmeierForm sellmeier_form_from_string(std::string_view s);
std::string_view to_string(SellmeierForm form);

struct SellmeierSet {
  SellmeierForm form = SellmeierForm::PoleLambda2;
  std::array<double, 5> coeff{};  // PoleLambda2 uses 4, TwoPoleFractional 5

  /// n^2 with derivatives w.r.t. x = (lambda/um)^2.
  Jet2 index_squared(const Jet2& x_um2) const;
  double index(double wavelength_nm) const;
};

/// Named uniaxial medium: principal-index Sellmeier fits plus the published
/// validity window. Evaluation outside the window throws OutOfRangeError.
class DispersiveMedium {
 public:
  DispersiveMedium(std::string name, SellmeierSet ordinary,
                   SellmeierSet extraordinary, double min_nm, double max_nm,
                   std::string source);

  const std::string& name() const { return name_; }
  const std::string& source() const { return source_; }
  double min_wavelength_nm() const { return min_nm_; }
  double max_wavelength_nm() const { return max_nm_; }
  const SellmeierSet& ordinary() const { return ordinary_; }
  const SellmeierSet& extraordinary() const { return extraordinary_; }

  bool in_range(double wavelength_nm) const {
    return wavelength_nm >= min_nm_ && wavelength_nm <= max_nm_;
  }
  void require_in_range(double wavelength_nm) const;

 private:
  std::string name_;
  SellmeierSet ordinary_;
  SellmeierSet extraordinary_;
  double min_nm_;
  double max_nm_;
  std::string source_;
};

/// Immutable-after-load collection of media, keyed by lower-case name.
class MaterialDatabase {
 public:
  /// The compiled-in data (BBO, crystalline quartz). Same text as
  /// core/data/materials.dat, parsed once.
  static const MaterialDatabase& builtin();

  /// Parse the plain-text key = value record format (see materials.dat for
  /// the documented keys). `origin` labels diagnostics.
  static MaterialDatabase parse(std::string_view text, const std::string& origin);
  static MaterialDatabase load(const std::filesystem::path& path);

  const DispersiveMedium& get(const std::string& name) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, DispersiveMedium> media_;
};

}  // namespace ququart

#endif
