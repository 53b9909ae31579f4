#pragma once

#include <cstddef>
#include <span>

namespace stylevox {

// Sum in a fixed pairwise order, independent of how the data was produced.
double pairwise_sum(std::span<const double> values);

// Sample Pearson correlation. Throws LengthMismatch, TooFewObservations
// (fewer than 3 pairs) or ConstantVector.
double pearson(std::span<const double> x, std::span<const double> y);

// I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Two-tailed p for H0: rho = 0, Student t with n - 2 degrees of freedom.
// |r| == 1 gives 0; n < 3 throws DegenerateInput.
double pearson_significance(double r, std::size_t n);

}  // namespace stylevox
