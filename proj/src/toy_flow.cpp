#include "stegocoder/toy_flow.hpp"

#include <cmath>
#include <random>

#include "stegocoder/error.hpp"

namespace stego {

ToyFlow::ToyFlow(std::size_t dim, std::uint64_t seed) : dim_(dim) {
    require(dim_ >= 2, Errc::invalid_argument, "flow dimension must be >= 2");
    std::mt19937_64 rng(seed);
    rotations_.reserve(3 * dim_);
    for (std::size_t k = 0; k < 3 * dim_; ++k) {
        auto i = static_cast<std::uint32_t>(rng() % dim_);
        auto j = static_cast<std::uint32_t>(rng() % (dim_ - 1));
        if (j >= i) ++j;
        double theta = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 * M_PI;
        rotations_.push_back({i, j, std::cos(theta), std::sin(theta)});
    }
}

void ToyFlow::check_dim(const LatentVector& v) const {
    require(v.size() == dim_, Errc::invalid_argument, "latent dimension mismatch");
}

LatentVector ToyFlow::generate(const LatentVector& z) const {
    check_dim(z);
    LatentVector x = z;
    for (const auto& r : rotations_) {
        double a = x[r.i], b = x[r.j];
        x[r.i] = r.c * a - r.s * b;
        x[r.j] = r.s * a + r.c * b;
    }
    for (double& v : x) v = std::sinh(v);
    return x;
}

LatentVector ToyFlow::invert(const LatentVector& x) const {
    check_dim(x);
    LatentVector z = x;
    for (double& v : z) v = std::asinh(v);
    for (auto it = rotations_.rbegin(); it != rotations_.rend(); ++it) {
        double a = z[it->i], b = z[it->j];
        z[it->i] = it->c * a + it->s * b;
        z[it->j] = -it->s * a + it->c * b;
    }
    return z;
}

} // namespace stego
