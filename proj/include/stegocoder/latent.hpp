#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stegocoder/bits.hpp"

namespace stego {

// Real line cut into 2^p cells of equal standard-normal mass. Interior
// boundaries are ppf(i/2^p); boundary[i] == -boundary[2^p - i] exactly by
// construction (computed for the lower half and mirrored). Cells are
// half-open: a coordinate equal to a boundary belongs to the upper cell.
class IntervalPartition {
public:
    explicit IntervalPartition(unsigned payload_bits);
    // From stored boundaries (latent-file header): demodulation must use the
    // exact values the modulator used.
    IntervalPartition(unsigned payload_bits, std::vector<double> interior);

    unsigned payload_bits() const noexcept { return p_; }
    std::uint32_t cells() const noexcept { return 1u << p_; }
    const std::vector<double>& interior() const noexcept { return interior_; }

    double lower(std::uint32_t cell) const; // -inf for cell 0
    double upper(std::uint32_t cell) const; // +inf for the last cell
    std::uint32_t cell_of(double z) const;

private:
    unsigned p_;
    std::vector<double> interior_; // 2^p - 1 strictly increasing values
};

enum class ModulationMethod : std::uint8_t {
    inverse_cdf = 0, // ppf of a uniform draw inside the cell; deterministic, no loop
    rejection = 1,   // resample a standard normal until it lands in the cell
};

using LatentVector = std::vector<double>;

// Each p-bit group (MSB first) selects a cell; the emitted coordinate is a
// standard normal truncated to that cell. Both methods produce the same
// truncated law. Message length must be divisible by p (callers pad with
// zero bits and record the original length).
LatentVector modulate(const Bits& message, const IntervalPartition& partition, std::mt19937_64& rng,
                      ModulationMethod method = ModulationMethod::inverse_cdf);

// Cell index of every coordinate, emitted as p bits per coordinate.
// demodulate(modulate(m)) == m exactly.
Bits demodulate(const LatentVector& z, const IntervalPartition& partition);

// Latent-vector stream format, magic "LTV1": header carries p, the original
// message bit length, and the boundary table; then coordinates as 64-bit
// little-endian floats. Byte layout in docs/formats.md.
struct LatentFile {
    unsigned payload_bits = 1;
    std::uint64_t message_bit_length = 0;
    std::vector<double> boundaries; // interior, 2^p - 1
    LatentVector coordinates;
};

std::vector<std::uint8_t> write_latent(const LatentFile& f);
LatentFile read_latent(const std::vector<std::uint8_t>& bytes);

} // namespace stego
