#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stegocoder/bits.hpp"

namespace stego {

// Classic black-box rejection-sampling stegosystem: for each e-bit message
// group b, draw objects from the sampler until the keyed hash of the object
// equals b. Expected draws per group: 2^e. The quantitative contrast with
// the coder's ~H bits per symbol.
struct BaselineEmbedResult {
    std::vector<std::uint64_t> objects; // one accepted object per group
    std::uint64_t total_draws = 0;
    double mean_draws_per_group = 0;
};

// Keyed hash f_k: object -> e bits.
std::uint32_t baseline_hash(const std::string& key, std::uint64_t object, unsigned e_bits);

BaselineEmbedResult rejection_sample_embed(const std::string& key, const Bits& message, unsigned e_bits,
                                           const std::function<std::uint64_t()>& sampler,
                                           std::uint64_t max_draws_per_group = 1ull << 20);

Bits rejection_sample_extract(const std::string& key, const std::vector<std::uint64_t>& objects,
                              unsigned e_bits);

} // namespace stego
