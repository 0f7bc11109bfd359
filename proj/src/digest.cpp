#include "stegocoder/digest.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace stego {

Sha256Digest sha256(const std::uint8_t* data, std::size_t len) {
    Sha256Digest out{};
    unsigned int out_len = 0;
    if (EVP_Digest(data, len, out.data(), &out_len, EVP_sha256(), nullptr) != 1 || out_len != out.size())
        throw std::runtime_error("sha256 failed");
    return out;
}

Sha256Digest sha256(const std::vector<std::uint8_t>& data) { return sha256(data.data(), data.size()); }

Sha256Digest sha256(const std::string& data) {
    return sha256(reinterpret_cast<const std::uint8_t*>(data.data()), data.size());
}

std::string to_hex(const Sha256Digest& d) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (std::uint8_t b : d) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

Keystream::Keystream(const std::string& key, const std::string& domain) {
    key_ = sha256(domain + "\x00" + key);
}

void Keystream::refill() {
    std::uint8_t buf[40];
    std::memcpy(buf, key_.data(), 32);
    for (int i = 0; i < 8; ++i) buf[32 + i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
    block_ = sha256(buf, sizeof buf);
    ++counter_;
    bit_pos_ = 0;
}

int Keystream::next_bit() {
    if (bit_pos_ >= 256) refill();
    int b = (block_[bit_pos_ / 8] >> (7 - bit_pos_ % 8)) & 1;
    ++bit_pos_;
    return b;
}

std::uint8_t Keystream::next_byte() {
    std::uint8_t v = 0;
    for (int i = 0; i < 8; ++i) v = static_cast<std::uint8_t>((v << 1) | next_bit());
    return v;
}

std::uint64_t Keystream::next_u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | next_byte();
    return v;
}

} // namespace stego
