#include "stylevox/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stylevox/error.h"

namespace stylevox {
namespace {

double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  constexpr int kMaxIter = 10000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(x.size()) + " vs " + std::to_string(y.size()) + " observations");
  }
  if (x.size() < 3) throw Error(ErrorCode::kTooFewObservations, "need at least 3 observations");
  const double n = static_cast<double>(x.size());
  const double mx = pairwise_sum(x) / n;
  const double my = pairwise_sum(y) / n;
  std::vector<double> dxx(x.size());
  std::vector<double> dyy(x.size());
  std::vector<double> dxy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    dxx[i] = dx * dx;
    dyy[i] = dy * dy;
    dxy[i] = dx * dy;
  }
  const double sxx = pairwise_sum(dxx);
  const double syy = pairwise_sum(dyy);
  const double sxy = pairwise_sum(dxy);
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::kConstantVector, "constant observation vector");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "incomplete beta outside its domain");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double pearson_significance(double r, std::size_t n) {
  if (n < 3) throw Error(ErrorCode::kDegenerateInput, "p-value needs n >= 3");
  if (!(r >= -1.0 && r <= 1.0)) throw Error(ErrorCode::kDegenerateInput, "r outside [-1, 1]");
  if (std::fabs(r) == 1.0) return 0.0;
  if (r == 0.0) return 1.0;
  const double df = static_cast<double>(n - 2);
  // x = df / (df + t^2) with t^2 = r^2 df / (1 - r^2) simplifies to 1 - r^2.
  const double x = 1.0 - r * r;
  const double p = regularized_incomplete_beta(0.5 * df, 0.5, x);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace stylevox
