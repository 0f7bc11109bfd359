#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stegocoder/bits.hpp"
#include "stegocoder/model.hpp"

namespace stego {

// Ordered symbols produced by embedding.
using StegoSequence = std::vector<Symbol>;

enum class TerminationMode : std::uint8_t {
    // Faithful to the uniqueness constraint: emit symbols until the coding
    // interval contains exactly one L-bit dyadic fraction, then stop.
    // Variable-length output.
    paper = 0,
    // Consume L message bits, then drive the coder with keyed pseudorandom
    // bits until exactly n_target symbols are emitted. The receiver
    // truncates to L. Fixed-length output; the stego law equals the cover
    // law exactly under an ideal keystream.
    prg_padding = 1,
};

enum class CoderEngine : std::uint8_t {
    fixed = 0, // 32-bit register production coder
    exact = 1, // exact-rational reference oracle
};

struct EmbedRequest {
    TerminationMode mode = TerminationMode::paper;
    std::optional<std::uint64_t> n_target;           // required in prg mode
    std::uint64_t max_symbols = 1ull << 22;          // paper-mode budget guard
    ContextTag context{};
};

struct EmbedResult {
    StegoSequence symbols;
    std::uint64_t message_bits_consumed = 0;
    std::uint64_t bits_consumed = 0; // including padding / register prefill
};

// Engine-dispatching fronts. `bits` supplies the message and its tail (zeros
// in paper mode, keystream in prg mode); L is the message length in bits.
EmbedResult embed_aad(BitSource& bits, std::uint64_t message_bits, const ConditionalModel& model,
                      const EmbedRequest& request, CoderEngine engine);
Bits extract_aae(const StegoSequence& stego, const ConditionalModel& model, std::uint64_t message_bits,
                 TerminationMode mode, const ContextTag& tag, CoderEngine engine);

} // namespace stego
