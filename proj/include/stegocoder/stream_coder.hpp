#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "stegocoder/coder.hpp"

namespace stego {

// Fixed-precision production coder: 32-bit low/high registers, frequency
// totals <= 2^16, classic renormalization. No floating point anywhere.
//
// The embedding direction is an arithmetic *decoder* driven by the message
// bits; extraction is the *encoder* direction over the stego symbols. Both
// ends compute identical integer intervals, which is what makes the pair a
// bijection on the first L bits.
struct CoderState {
    static constexpr unsigned kRegisterBits = 32;
    static constexpr std::uint64_t kTopValue = (1ull << kRegisterBits) - 1;
    static constexpr std::uint64_t kHalf = 1ull << (kRegisterBits - 1);
    static constexpr std::uint64_t kQuarter = 1ull << (kRegisterBits - 2);
    static constexpr std::uint64_t kThreeQuarter = kHalf + kQuarter;

    std::uint64_t low = 0;
    std::uint64_t high = kTopValue; // inclusive
    // Total renormalization shifts plus the register width: the global
    // interval is [(low+offset)/2^scale_bits, (high+1+offset)/2^scale_bits).
    std::uint64_t scale_bits = kRegisterBits;
    // Outstanding middle-expansions since the last settled bit (diagnostic;
    // the exact offset below already accounts for them).
    std::uint64_t pending = 0;

    std::uint64_t width() const noexcept { return high - low + 1; }
};

// Narrows [low, high] to symbol j's cell. Preconditions (width > total,
// guaranteed by renormalization) make the cell non-empty.
void refine(CoderState& state, const FrequencyTable& table, Symbol j);

EmbedResult stream_embed(BitSource& bits, std::uint64_t message_bits, const ConditionalModel& model,
                         const EmbedRequest& request);
Bits stream_extract(const StegoSequence& stego, const ConditionalModel& model, std::uint64_t message_bits,
                    TerminationMode mode, const ContextTag& tag = {});

} // namespace stego
