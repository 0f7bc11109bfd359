#include "stegocoder/baseline.hpp"

#include "stegocoder/digest.hpp"
#include "stegocoder/error.hpp"

namespace stego {

std::uint32_t baseline_hash(const std::string& key, std::uint64_t object, unsigned e_bits) {
    require(e_bits >= 1 && e_bits <= 8, Errc::invalid_argument, "e must lie in 1..8");
    std::vector<std::uint8_t> buf(key.begin(), key.end());
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(object >> (8 * i)));
    Sha256Digest d = sha256(buf);
    return d[0] & ((1u << e_bits) - 1);
}

BaselineEmbedResult rejection_sample_embed(const std::string& key, const Bits& message, unsigned e_bits,
                                           const std::function<std::uint64_t()>& sampler,
                                           std::uint64_t max_draws_per_group) {
    require(e_bits >= 1 && e_bits <= 8, Errc::invalid_argument, "e must lie in 1..8");
    require(message.size() % e_bits == 0, Errc::invalid_argument,
            "message length must be divisible by e (pad with zero bits)");

    BaselineEmbedResult out;
    for (std::size_t off = 0; off < message.size(); off += e_bits) {
        auto b = static_cast<std::uint32_t>(read_uint(message, off, e_bits));
        std::uint64_t draws = 0;
        for (;;) {
            ++draws;
            require(draws <= max_draws_per_group, Errc::entropy_exhausted,
                    "rejection cap exceeded: sampler entropy too low for e bits");
            std::uint64_t s = sampler();
            if (baseline_hash(key, s, e_bits) == b) {
                out.objects.push_back(s);
                break;
            }
        }
        out.total_draws += draws;
    }
    if (!message.empty())
        out.mean_draws_per_group =
            static_cast<double>(out.total_draws) / (static_cast<double>(message.size()) / e_bits);
    return out;
}

Bits rejection_sample_extract(const std::string& key, const std::vector<std::uint64_t>& objects,
                              unsigned e_bits) {
    require(e_bits >= 1 && e_bits <= 8, Errc::invalid_argument, "e must lie in 1..8");
    Bits out;
    out.reserve(objects.size() * e_bits);
    for (std::uint64_t s : objects) append_uint(out, baseline_hash(key, s, e_bits), e_bits);
    return out;
}

} // namespace stego
