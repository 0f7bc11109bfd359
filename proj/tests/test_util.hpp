#pragma once

#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>

#include "stegocoder/coder.hpp"
#include "stegocoder/digest.hpp"
#include "stegocoder/markov.hpp"
#include "stegocoder/model.hpp"

namespace stego::test {

inline FrequencyTable ternary_table() { return FrequencyTable({40, 10, 50}); }

// The worked three-step schedule: p1=(0.40,0.10,0.50), p2=(0.25,0.25,0.50),
// p3=(0.50,0.25,0.25), integer-scaled by 100.
inline StaticModel worked_example_schedule() {
    return StaticModel(std::vector<FrequencyTable>{FrequencyTable({40, 10, 50}),
                                                   FrequencyTable({25, 25, 50}),
                                                   FrequencyTable({50, 25, 25})});
}

inline Bits random_bits(std::mt19937_64& rng, std::size_t n) {
    Bits b(n);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng() & 1);
    return b;
}

inline std::unique_ptr<ConditionalModel> random_model(std::mt19937_64& rng, std::uint32_t max_alphabet = 6,
                                                      std::uint32_t max_order = 3) {
    std::uint32_t a = 2 + static_cast<std::uint32_t>(rng() % (max_alphabet - 1));
    if (rng() % 2 == 0) {
        std::vector<std::uint32_t> counts(a);
        for (auto& c : counts) c = 1 + static_cast<std::uint32_t>(rng() % 60);
        return std::make_unique<StaticModel>(FrequencyTable(counts));
    }
    std::uint32_t order = static_cast<std::uint32_t>(rng() % (max_order + 1));
    std::vector<Symbol> corpus(64 + rng() % 512);
    for (auto& s : corpus) s = static_cast<Symbol>(rng() % a);
    return std::make_unique<MarkovModel>(train_markov(corpus, a, order, 1u << 12));
}

// prg-mode embedding sized from a rough entropy estimate, retrying with a
// doubled target and a re-salted keystream when the receiver would see an
// ambiguous interval (the keystream is receiver-invisible, so retrying is
// transparent).
struct PrgCase {
    EmbedResult embed;
    std::uint64_t n_target;
};

inline PrgCase prg_embed_with_retry(const Bits& message, const ConditionalModel& model,
                                    double entropy_guess, CoderEngine engine,
                                    const std::string& key = "test-key") {
    std::uint64_t n_target = static_cast<std::uint64_t>(
                                 (static_cast<double>(message.size()) + 64.0) /
                                 std::max(entropy_guess, 0.05)) + 8;
    for (int attempt = 0; attempt < 12; ++attempt) {
        auto ks = std::make_shared<Keystream>(key + "#" + std::to_string(attempt), "pad");
        BitSource source(message, [ks] { return ks->next_bit(); });
        EmbedRequest req;
        req.mode = TerminationMode::prg_padding;
        req.n_target = n_target;
        EmbedResult r = embed_aad(source, message.size(), model, req, engine);
        try {
            Bits got = extract_aae(r.symbols, model, message.size(), TerminationMode::prg_padding, {},
                                   engine);
            if (got == message) return {std::move(r), n_target};
        } catch (const Error& e) {
            if (e.code() != Errc::ambiguous) throw;
        }
        n_target *= 2;
    }
    throw std::runtime_error("prg embedding never became unambiguous");
}

} // namespace stego::test
