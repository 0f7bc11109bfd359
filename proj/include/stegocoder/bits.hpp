#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stegocoder/error.hpp"

namespace stego {

// A bit is stored one-per-byte (0 or 1). MSB-first everywhere: the first
// bit of a byte stream is the high bit of its first byte.
using Bits = std::vector<std::uint8_t>;

Bits bytes_to_bits(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> bits_to_bytes(const Bits& bits); // pads the last byte with 0

// Appends `width` bits of `value`, MSB first.
void append_uint(Bits& bits, std::uint64_t value, unsigned width);
std::uint64_t read_uint(const Bits& bits, std::size_t offset, unsigned width);

// Driving bit stream for embedding: L message bits followed by an infinite
// tail. In paper-termination mode the tail is all zeros (the message is the
// dyadic fraction 0.m1..mL); in prg-padding mode the tail comes from the
// keyed keystream. next_bit() past the message boundary is what "reading
// past the boundary" means; it is the tail that makes it well-defined.
class BitSource {
public:
    using Tail = std::function<int()>;

    // zero tail
    explicit BitSource(Bits message);
    BitSource(Bits message, Tail tail);

    int next_bit();
    std::uint64_t bits_consumed() const noexcept { return consumed_; }
    std::uint64_t message_bits_consumed() const noexcept;
    std::size_t message_size() const noexcept { return message_.size(); }

private:
    Bits message_;
    Tail tail_;
    std::uint64_t consumed_ = 0;
};

} // namespace stego
