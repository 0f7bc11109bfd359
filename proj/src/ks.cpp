#include "stegocoder/ks.hpp"

#include <algorithm>
#include <cmath>

#include "stegocoder/error.hpp"
#include "stegocoder/normal.hpp"

namespace stego {

double kolmogorov_sf(double x) {
    if (x <= 0) return 1.0;
    if (x < 1.18) {
        // theta-function form of the CDF, fast for small x
        const double pi = 3.14159265358979323846;
        double t = std::exp(-pi * pi / (8 * x * x));
        double cdf = std::sqrt(2 * pi) / x * (t + std::pow(t, 9) + std::pow(t, 25) + std::pow(t, 49));
        return 1.0 - cdf;
    }
    double sum = 0;
    for (int k = 1; k < 64; ++k) {
        double term = 2.0 * std::exp(-2.0 * k * k * x * x);
        if (term < 1e-18) break;
        sum += (k % 2 == 1) ? term : -term;
    }
    return std::max(sum, 0.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
    require(samples.size() >= 100, Errc::invalid_argument, "KS test needs at least 100 samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::max((static_cast<double>(i) + 1) / n - f, f - static_cast<double>(i) / n));
    }
    return {d, kolmogorov_sf(std::sqrt(n) * d)};
}

KsResult ks_normal_test(std::vector<double> samples) {
    return ks_test(std::move(samples), [](double x) { return normal_cdf(x); });
}

KsResult ks_two_sample_test(std::vector<double> a, std::vector<double> b) {
    require(a.size() >= 100 && b.size() >= 100, Errc::invalid_argument,
            "KS test needs at least 100 samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    double ne = na * nb / (na + nb);
    return {d, kolmogorov_sf(std::sqrt(ne) * d)};
}

} // namespace stego
