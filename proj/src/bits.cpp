#include "stegocoder/bits.hpp"

#include <algorithm>

namespace stego {

Bits bytes_to_bits(const std::vector<std::uint8_t>& bytes) {
    Bits bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t b : bytes)
        for (int i = 7; i >= 0; --i) bits.push_back((b >> i) & 1);
    return bits;
}

std::vector<std::uint8_t> bits_to_bytes(const Bits& bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return bytes;
}

void append_uint(Bits& bits, std::uint64_t value, unsigned width) {
    for (unsigned i = 0; i < width; ++i) bits.push_back((value >> (width - 1 - i)) & 1);
}

std::uint64_t read_uint(const Bits& bits, std::size_t offset, unsigned width) {
    require(offset + width <= bits.size(), Errc::format, "bit stream too short");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | bits[offset + i];
    return v;
}

BitSource::BitSource(Bits message) : message_(std::move(message)), tail_([] { return 0; }) {}

BitSource::BitSource(Bits message, Tail tail) : message_(std::move(message)), tail_(std::move(tail)) {}

int BitSource::next_bit() {
    int b = consumed_ < message_.size() ? message_[consumed_] : tail_();
    ++consumed_;
    return b;
}

std::uint64_t BitSource::message_bits_consumed() const noexcept {
    return std::min<std::uint64_t>(consumed_, message_.size());
}

} // namespace stego
