#pragma once

#include <cmath>
#include <cstddef>

namespace cradle {

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a maximum of f on [a, b], stopping when the
/// bracket is shorter than tol. Returns the best point evaluated. `seed` is a
/// known point inside [a, b] with value seed_value that the result never
/// falls below.
template <class F>
ScalarMax golden_section_max(F&& f, double a, double b, double tol, ScalarMax seed) {
  constexpr double inv_phi = 0.6180339887498948482;
  ScalarMax best = seed;
  auto consider = [&best](double x, double v) {
    if (v > best.value) best = {x, v};
  };

  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  consider(c, fc);
  consider(d, fd);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return best;
}

}  // namespace cradle
