#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace stego {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(const std::uint8_t* data, std::size_t len);
Sha256Digest sha256(const std::vector<std::uint8_t>& data);
Sha256Digest sha256(const std::string& data);
std::string to_hex(const Sha256Digest& d);

// Deterministic keyed bit stream: SHA-256 in counter mode over a derived
// key. `domain` separates independent streams drawn from the same user key
// (message whitening vs. coder padding vs. baseline hashing).
class Keystream {
public:
    Keystream(const std::string& key, const std::string& domain);

    int next_bit();
    std::uint8_t next_byte();
    std::uint64_t next_u64();

private:
    void refill();

    Sha256Digest key_;
    std::uint64_t counter_ = 0;
    Sha256Digest block_{};
    unsigned bit_pos_ = 256; // exhausted; first use refills
};

} // namespace stego
