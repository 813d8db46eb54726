#include <doctest.h>

#include <cmath>

#include "ququart/jet.hpp"

using ququart::Jet2;

namespace {

// finite-difference oracle for d/dx and d2/dx2
template <typename F>
double fd1(F f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <typename F>
double fd2(F f, double x, double h = 1e-4) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

TEST_CASE("jet arithmetic matches finite differences on a rational chain") {
  // f(x) = (3 + 2/(x*x - 0.5)) / sqrt(x) - x * x
  auto plain = [](double x) {
    return (3.0 + 2.0 / (x * x - 0.5)) / std::sqrt(x) - x * x;
  };
  auto jet = [](Jet2 x) {
    return (Jet2(3.0) + Jet2(2.0) / (x * x - Jet2(0.5))) / sqrt(x) - x * x;
  };
  for (double x : {0.9, 1.3, 2.0, 3.7}) {
    const Jet2 r = jet(Jet2::variable(x));
    CHECK(r.v == doctest::Approx(plain(x)).epsilon(1e-14));
    CHECK(r.d1 == doctest::Approx(fd1(plain, x)).epsilon(1e-8));
    CHECK(r.d2 == doctest::Approx(fd2(plain, x)).epsilon(1e-6));
  }
}

TEST_CASE("jet constants carry zero derivatives") {
  const Jet2 c(4.2);
  CHECK(c.d1 == 0.0);
  CHECK(c.d2 == 0.0);
  const Jet2 x = Jet2::variable(2.0);
  const Jet2 s = x - x;
  CHECK(s.v == 0.0);
  CHECK(s.d1 == 0.0);
}

TEST_CASE("jet sqrt") {
  const Jet2 r = sqrt(Jet2::variable(4.0));
  CHECK(r.v == doctest::Approx(2.0));
  CHECK(r.d1 == doctest::Approx(0.25));           // 1/(2 sqrt x)
  CHECK(r.d2 == doctest::Approx(-1.0 / 32.0));    // -1/(4 x^{3/2})
}
