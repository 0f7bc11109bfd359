#include "stegocoder/coder.hpp"

#include "stegocoder/exact_coder.hpp"
#include "stegocoder/stream_coder.hpp"

namespace stego {

EmbedResult embed_aad(BitSource& bits, std::uint64_t message_bits, const ConditionalModel& model,
                      const EmbedRequest& request, CoderEngine engine) {
    if (engine == CoderEngine::fixed) return stream_embed(bits, message_bits, model, request);
    ExactEmbedResult exact = exact_embed(bits, message_bits, model, request);
    EmbedResult out;
    out.symbols = std::move(exact.symbols);
    out.message_bits_consumed = exact.message_bits_consumed;
    out.bits_consumed = exact.bits_consumed;
    return out;
}

Bits extract_aae(const StegoSequence& stego, const ConditionalModel& model, std::uint64_t message_bits,
                 TerminationMode mode, const ContextTag& tag, CoderEngine engine) {
    if (engine == CoderEngine::fixed) return stream_extract(stego, model, message_bits, mode, tag);
    return exact_extract(stego, model, message_bits, mode, tag);
}

} // namespace stego
