#pragma once

#include <cstdint>
#include <vector>

#include "stegocoder/latent.hpp"

namespace stego {

// Minimal invertible generator standing in for a flow model's exact-inverse
// path: a seeded orthogonal mixing layer (product of Givens rotations)
// followed by element-wise sinh. invert(generate(z)) == z to ~1e-13 per
// coordinate, well inside the 1e-9 contract.
class ToyFlow {
public:
    ToyFlow(std::size_t dim, std::uint64_t seed = 0x5eed);

    std::size_t dim() const noexcept { return dim_; }

    LatentVector generate(const LatentVector& z) const; // x = sinh(R z)
    LatentVector invert(const LatentVector& x) const;   // z = R^T asinh(x)

private:
    struct Rotation {
        std::uint32_t i, j;
        double c, s;
    };

    void check_dim(const LatentVector& v) const;

    std::size_t dim_;
    std::vector<Rotation> rotations_;
};

} // namespace stego
