#pragma once

namespace isentropy {

// Complementary error function, Cody-style rational approximation
// (absolute error below 1e-15 on the real line).
double erfc_approx(double x);

// Standard normal CDF, Phi(x) = erfc(-x / sqrt(2)) / 2.
double normal_cdf(double x);

} // namespace isentropy
