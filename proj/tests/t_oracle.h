#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace stylevox::testing {

// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                      double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), eps, 50);
}

// Two-tailed p for a sample correlation r over n pairs, by integrating the
// Student t density with n - 2 degrees of freedom from 0 to |t|.
inline double t_two_tailed_p(double r, std::size_t n) {
  const double df = static_cast<double>(n) - 2.0;
  const double t = std::abs(r) * std::sqrt(df / (1.0 - r * r));
  const double log_c = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) - 0.5 * std::log(df * M_PI);
  const auto density = [&](double x) { return std::exp(log_c - (df + 1.0) / 2.0 * std::log1p(x * x / df)); };
  // Split at 1 so the peak is resolved before the tail.
  double mass = 0.0;
  if (t <= 1.0) {
    mass = integrate(density, 0.0, t, 1e-13);
  } else {
    mass = integrate(density, 0.0, 1.0, 1e-13) + integrate(density, 1.0, t, 1e-13);
  }
  return 1.0 - 2.0 * mass;
}

}  // namespace stylevox::testing
