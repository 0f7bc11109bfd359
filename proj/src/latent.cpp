#include "stegocoder/latent.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "stegocoder/normal.hpp"

namespace stego {

IntervalPartition::IntervalPartition(unsigned payload_bits) : p_(payload_bits) {
    require(p_ >= 1 && p_ <= 16, Errc::invalid_argument, "payload must lie in 1..16");
    const std::uint32_t n = cells();
    interior_.resize(n - 1);
    // Lower half from the ppf, upper half mirrored: the antisymmetry
    // boundary[i] == -boundary[2^p - i] is exact, and the middle cut (even
    // cell count) is exactly 0.
    for (std::uint32_t i = 1; i <= n / 2; ++i) {
        double b = (2 * i == n) ? 0.0 : normal_ppf(static_cast<double>(i) / n);
        interior_[i - 1] = b;
        interior_[n - 1 - i] = -b;
    }
}

IntervalPartition::IntervalPartition(unsigned payload_bits, std::vector<double> interior)
    : p_(payload_bits), interior_(std::move(interior)) {
    require(p_ >= 1 && p_ <= 16, Errc::invalid_argument, "payload must lie in 1..16");
    require(interior_.size() == cells() - 1, Errc::format, "boundary table size mismatch");
    for (std::size_t i = 0; i + 1 < interior_.size(); ++i)
        require(interior_[i] < interior_[i + 1], Errc::format, "boundaries not increasing");
}

double IntervalPartition::lower(std::uint32_t cell) const {
    require(cell < cells(), Errc::invalid_argument, "cell index out of range");
    return cell == 0 ? -std::numeric_limits<double>::infinity() : interior_[cell - 1];
}

double IntervalPartition::upper(std::uint32_t cell) const {
    require(cell < cells(), Errc::invalid_argument, "cell index out of range");
    return cell + 1 == cells() ? std::numeric_limits<double>::infinity() : interior_[cell];
}

std::uint32_t IntervalPartition::cell_of(double z) const {
    require(std::isfinite(z), Errc::invalid_argument, "coordinate must be finite");
    // count of boundaries <= z: a coordinate on a boundary belongs to the
    // upper cell
    auto it = std::upper_bound(interior_.begin(), interior_.end(), z);
    return static_cast<std::uint32_t>(it - interior_.begin());
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Keep the coordinate inside its half-open cell so demodulation is exact
// even if the ppf rounds onto a boundary.
double clamp_to_cell(double z, const IntervalPartition& part, std::uint32_t cell) {
    double lo = part.lower(cell);
    double hi = part.upper(cell);
    if (z < lo) return lo;
    if (z >= hi) return std::nextafter(hi, -std::numeric_limits<double>::infinity());
    return z;
}

double draw_inverse_cdf(const IntervalPartition& part, std::uint32_t cell, std::mt19937_64& rng) {
    const double n = static_cast<double>(part.cells());
    double u = (static_cast<double>(cell) + uniform01(rng)) / n;
    u = std::max(u, std::numeric_limits<double>::min());
    return clamp_to_cell(normal_ppf(u), part, cell);
}

double draw_rejection(const IntervalPartition& part, std::uint32_t cell, std::mt19937_64& rng) {
    const double lo = part.lower(cell);
    const double hi = part.upper(cell);
    // expected 2^p draws; hard cap, then the inverse-cdf fallback
    const std::uint64_t cap = 1ull << (part.payload_bits() + 12);
    for (std::uint64_t i = 0; i < cap; ++i) {
        double u = uniform01(rng);
        if (u <= 0.0) continue;
        double z = normal_ppf(u);
        if (z >= lo && z < hi) return z;
    }
    return draw_inverse_cdf(part, cell, rng);
}

} // namespace

LatentVector modulate(const Bits& message, const IntervalPartition& partition, std::mt19937_64& rng,
                      ModulationMethod method) {
    const unsigned p = partition.payload_bits();
    require(message.size() % p == 0, Errc::invalid_argument,
            "message length must be divisible by the payload (pad with zero bits)");
    LatentVector z;
    z.reserve(message.size() / p);
    for (std::size_t off = 0; off < message.size(); off += p) {
        auto cell = static_cast<std::uint32_t>(read_uint(message, off, p)); // MSB-first group
        z.push_back(method == ModulationMethod::inverse_cdf ? draw_inverse_cdf(partition, cell, rng)
                                                            : draw_rejection(partition, cell, rng));
    }
    return z;
}

Bits demodulate(const LatentVector& z, const IntervalPartition& partition) {
    Bits out;
    out.reserve(z.size() * partition.payload_bits());
    for (double zi : z) append_uint(out, partition.cell_of(zi), partition.payload_bits());
    return out;
}

namespace {

constexpr char kMagic[4] = {'L', 'T', 'V', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_f64(std::vector<std::uint8_t>& out, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    put_u64(out, v);
}

struct Cursor {
    const std::vector<std::uint8_t>& in;
    std::size_t pos = 0;

    std::uint32_t u32() {
        require(pos + 4 <= in.size(), Errc::format, "latent file truncated");
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        require(pos + 8 <= in.size(), Errc::format, "latent file truncated");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
    double f64() {
        std::uint64_t v = u64();
        double d;
        std::memcpy(&d, &v, 8);
        return d;
    }
};

} // namespace

std::vector<std::uint8_t> write_latent(const LatentFile& f) {
    require(f.payload_bits >= 1 && f.payload_bits <= 16, Errc::invalid_argument, "payload out of range");
    require(f.boundaries.size() == (1u << f.payload_bits) - 1, Errc::invalid_argument,
            "boundary table size mismatch");
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u32(out, kVersion);
    put_u32(out, f.payload_bits);
    put_u64(out, f.message_bit_length);
    put_u64(out, f.coordinates.size());
    for (double b : f.boundaries) put_f64(out, b);
    for (double c : f.coordinates) put_f64(out, c);
    return out;
}

LatentFile read_latent(const std::vector<std::uint8_t>& bytes) {
    require(bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0, Errc::format,
            "bad latent magic");
    Cursor cur{bytes, 4};
    require(cur.u32() == kVersion, Errc::format, "unsupported latent version");
    LatentFile f;
    f.payload_bits = cur.u32();
    require(f.payload_bits >= 1 && f.payload_bits <= 16, Errc::format, "payload out of range");
    f.message_bit_length = cur.u64();
    std::uint64_t n = cur.u64();
    f.boundaries.resize((1u << f.payload_bits) - 1);
    for (auto& b : f.boundaries) b = cur.f64();
    require(f.message_bit_length <= n * f.payload_bits, Errc::format,
            "message length exceeds coordinate capacity");
    f.coordinates.resize(n);
    for (auto& c : f.coordinates) c = cur.f64();
    require(cur.pos == bytes.size(), Errc::format, "trailing bytes in latent file");
    return f;
}

} // namespace stego
