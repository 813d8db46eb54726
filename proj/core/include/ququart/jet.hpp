#ifndef QUQUART_JET_HPP
#define QUQUART_JET_HPP

#include <cmath>

namespace ququart {

/// Truncated second-order Taylor scalar: carries f, df/dx and d2f/dx2
/// through arithmetic, so dispersion derivatives are exact rather than
/// finite-differenced. Finite differences are kept for test oracles only.
struct Jet2 {
  double v = 0.0;   // value
  double d1 = 0.0;  // first derivative
  double d2 = 0.0;  // second derivative

  constexpr Jet2() = default;
  constexpr Jet2(double value) : v(value) {}
  constexpr Jet2(double value, double first, double second)
      : v(value), d1(first), d2(second) {}

  /// The independent variable: d/dx x = 1.
  static constexpr Jet2 variable(double x) { return {x, 1.0, 0.0}; }
};

constexpr Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

constexpr Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

constexpr Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }

constexpr Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v,
          a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

constexpr Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double q = a.v / b.v;
  const double q1 = (a.d1 - q * b.d1) / b.v;
  const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
  return {q, q1, q2};
}

inline Jet2 sqrt(const Jet2& a) {
  const double s = std::sqrt(a.v);
  const double s1 = a.d1 / (2.0 * s);
  const double s2 = (a.d2 - 2.0 * s1 * s1) / (2.0 * s);
  return {s, s1, s2};
}

}  // namespace ququart

#endif
