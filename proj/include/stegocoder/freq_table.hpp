#pragma once

#include <cstdint>
#include <vector>

#include "stegocoder/error.hpp"

namespace stego {

using Symbol = std::uint32_t;

// Integer-quantized conditional distribution over a finite alphabet.
// Every count is >= 1 (a zero-probability symbol could never be emitted by
// the decoder nor represented by the encoder) and the total stays within
// the fixed-precision coder's contract: register width 32 bits requires
// total <= 2^16 so that a renormalized interval can never collapse a cell.
class FrequencyTable {
public:
    static constexpr std::uint32_t kMaxTotal = 1u << 16;

    explicit FrequencyTable(std::vector<std::uint32_t> counts);

    std::uint32_t alphabet_size() const noexcept { return static_cast<std::uint32_t>(counts_.size()); }
    std::uint32_t total() const noexcept { return cum_.back(); }
    std::uint32_t count(Symbol j) const { return counts_.at(j); }
    const std::vector<std::uint32_t>& counts() const noexcept { return counts_; }

    // Sum of counts[0..j). cumulative(0) == 0, cumulative(alphabet_size) == total.
    std::uint32_t cumulative(Symbol j) const;

    bool operator==(const FrequencyTable& other) const { return counts_ == other.counts_; }

private:
    std::vector<std::uint32_t> counts_;
    std::vector<std::uint32_t> cum_; // size alphabet_size + 1
};

// Largest-remainder quantization of a probability vector to integer counts
// summing exactly to `budget`, with a floor of 1 per symbol. Ties go to the
// lower index; the floor is restored by decrementing current maxima.
FrequencyTable quantize(const std::vector<double>& probs, std::uint32_t budget);

// Same scheme over raw integer counts (exact arithmetic, no floating
// point): the path used by models so that sender and receiver derive
// bit-identical tables.
FrequencyTable quantize_counts(const std::vector<std::uint64_t>& counts, std::uint32_t budget);

} // namespace stego
