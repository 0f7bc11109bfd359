#pragma once

namespace stego {

// Standard normal CDF via erfc (accurate in both tails).
double normal_cdf(double x);

// Percent point function (inverse CDF). Rational approximation refined by
// one Halley step against the erfc-based CDF; |Phi(result) - u| <= 1e-12.
// Throws std::domain_error for u outside (0, 1).
double normal_ppf(double u);

} // namespace stego
