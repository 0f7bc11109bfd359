#pragma once

#include <functional>
#include <vector>

namespace stego {

struct KsResult {
    double statistic = 0; // sup |F_n - F|
    double p_value = 0;   // asymptotic Kolmogorov distribution
};

// One-sample Kolmogorov-Smirnov test against an arbitrary continuous CDF.
// Requires at least 100 samples.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

// Against the standard normal CDF.
KsResult ks_normal_test(std::vector<double> samples);

// Two-sample flavour (method-equivalence checks).
KsResult ks_two_sample_test(std::vector<double> a, std::vector<double> b);

// P[K > x] for the asymptotic Kolmogorov distribution; series form chosen by
// the magnitude of x for fast convergence on both ends.
double kolmogorov_sf(double x);

} // namespace stego
