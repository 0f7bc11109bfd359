#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "stegocoder/model.hpp"

namespace stego {

// Order-k Markov model with add-one smoothing and integer quantization.
// Counts are kept for every context order 0..k so positions with history
// shorter than k still use trained statistics. When `adaptive` is set the
// per-stream state additionally counts the symbols it has seen, mirroring
// a vocoder whose distribution sharpens as generation proceeds; updates are
// a pure function of the observed history, so sender and receiver stay in
// lockstep.
class MarkovModel final : public ConditionalModel {
public:
    static constexpr std::uint32_t kDefaultQuantization = 1u << 14;
    static constexpr std::uint64_t kMaxRawCount = 1ull << 40; // keeps count*budget in 64 bits

    // Context key: the most recent symbols, oldest first. Ordered map keeps
    // serialization canonical.
    using ContextCounts = std::map<std::vector<Symbol>, std::vector<std::uint64_t>>;

    MarkovModel(std::uint32_t alphabet_size, std::uint32_t order,
                std::uint32_t quantization = kDefaultQuantization, bool adaptive = true);

    std::uint32_t alphabet_size() const override { return alphabet_; }
    std::unique_ptr<ModelStream> start(const ContextTag& tag) const override;
    std::unique_ptr<ConditionalModel> clone() const override;

    std::uint32_t order() const noexcept { return order_; }
    std::uint32_t quantization() const noexcept { return quantization_; }
    bool adaptive() const noexcept { return adaptive_; }
    const ContextCounts& counts() const noexcept { return counts_; }

    // Raw (pre-smoothing) count of `next` after `context`; 0 if unseen.
    std::uint64_t raw_count(const std::vector<Symbol>& context, Symbol next) const;

    void observe(const std::vector<Symbol>& history, Symbol next);

    // Wholesale replacement (deserialization). Validates shape and caps.
    void set_counts(ContextCounts counts);

private:
    friend class MarkovStream;

    std::uint32_t alphabet_;
    std::uint32_t order_;
    std::uint32_t quantization_;
    bool adaptive_;
    ContextCounts counts_;
};

// N-gram counting over a corpus of symbols. Corpus must be longer than the
// order. All context orders 0..k are recorded.
MarkovModel train_markov(const std::vector<Symbol>& corpus, std::uint32_t alphabet_size,
                         std::uint32_t order,
                         std::uint32_t quantization = MarkovModel::kDefaultQuantization);

} // namespace stego
