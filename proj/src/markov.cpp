#include "stegocoder/markov.hpp"

#include <algorithm>

#include "stegocoder/error.hpp"

namespace stego {

namespace {

// Per-stream state: a private copy of the counts (parallel streams must
// never share mutable state) updated after each observed symbol.
class MarkovStream final : public ModelStream {
public:
    MarkovStream(const MarkovModel& model, const ContextTag& tag)
        : alphabet_(model.alphabet_size()),
          order_(model.order()),
          quantization_(model.quantization()),
          adaptive_(model.adaptive()),
          counts_(model.counts()) {
        // The tag conditions the whole sequence: its bytes are replayed as
        // unemitted warm-up observations, identically on both ends.
        for (std::uint8_t b : tag) warm_update(static_cast<Symbol>(b % alphabet_));
    }

    FrequencyTable table() const override {
        std::vector<std::uint64_t> smoothed(alphabet_, 1); // add-one smoothing
        auto it = counts_.find(history_);
        if (it != counts_.end())
            for (std::uint32_t s = 0; s < alphabet_; ++s) smoothed[s] += it->second[s];
        return quantize_counts(smoothed, quantization_);
    }

    void advance(Symbol s) override {
        require(s < alphabet_, Errc::invalid_argument, "symbol out of alphabet");
        if (adaptive_) record(history_, s);
        history_.push_back(s);
        if (history_.size() > order_) history_.erase(history_.begin());
        ++pos_;
    }

    std::uint64_t position() const override { return pos_; }

private:
    void record(const std::vector<Symbol>& hist, Symbol s) {
        // every context order 0..k, mirroring training
        for (std::size_t len = 0; len <= std::min<std::size_t>(hist.size(), order_); ++len) {
            std::vector<Symbol> ctx(hist.end() - len, hist.end());
            auto& row = counts_.try_emplace(std::move(ctx), std::vector<std::uint64_t>(alphabet_, 0))
                            .first->second;
            if (row[s] < MarkovModel::kMaxRawCount) ++row[s];
        }
    }

    void warm_update(Symbol s) {
        record(history_, s);
        history_.push_back(s);
        if (history_.size() > order_) history_.erase(history_.begin());
    }

    std::uint32_t alphabet_;
    std::uint32_t order_;
    std::uint32_t quantization_;
    bool adaptive_;
    MarkovModel::ContextCounts counts_;
    std::vector<Symbol> history_; // most recent <= order_ symbols
    std::uint64_t pos_ = 0;
};

} // namespace

MarkovModel::MarkovModel(std::uint32_t alphabet_size, std::uint32_t order, std::uint32_t quantization,
                         bool adaptive)
    : alphabet_(alphabet_size), order_(order), quantization_(quantization), adaptive_(adaptive) {
    require(alphabet_ >= 2, Errc::invalid_argument, "alphabet size must be >= 2");
    require(quantization_ >= alphabet_, Errc::invalid_argument, "quantization width below alphabet size");
    require(quantization_ <= FrequencyTable::kMaxTotal, Errc::invalid_argument,
            "quantization width exceeds 2^16");
}

std::unique_ptr<ModelStream> MarkovModel::start(const ContextTag& tag) const {
    return std::make_unique<MarkovStream>(*this, tag);
}

std::unique_ptr<ConditionalModel> MarkovModel::clone() const {
    return std::make_unique<MarkovModel>(*this);
}

std::uint64_t MarkovModel::raw_count(const std::vector<Symbol>& context, Symbol next) const {
    auto it = counts_.find(context);
    if (it == counts_.end()) return 0;
    return it->second.at(next);
}

void MarkovModel::observe(const std::vector<Symbol>& history, Symbol next) {
    require(next < alphabet_, Errc::invalid_argument, "symbol out of alphabet");
    std::size_t max_len = std::min<std::size_t>(history.size(), order_);
    for (std::size_t len = 0; len <= max_len; ++len) {
        std::vector<Symbol> ctx(history.end() - len, history.end());
        auto& row = counts_.try_emplace(std::move(ctx), std::vector<std::uint64_t>(alphabet_, 0))
                        .first->second;
        if (row[next] < kMaxRawCount) ++row[next];
    }
}

void MarkovModel::set_counts(ContextCounts counts) {
    for (const auto& [ctx, row] : counts) {
        require(ctx.size() <= order_, Errc::model_io, "context longer than model order");
        for (Symbol s : ctx) require(s < alphabet_, Errc::model_io, "context symbol out of alphabet");
        require(row.size() == alphabet_, Errc::model_io, "count row size mismatch");
        for (std::uint64_t c : row)
            require(c <= kMaxRawCount, Errc::model_io, "count overflow in model file");
    }
    counts_ = std::move(counts);
}

MarkovModel train_markov(const std::vector<Symbol>& corpus, std::uint32_t alphabet_size,
                         std::uint32_t order, std::uint32_t quantization) {
    require(corpus.size() > order, Errc::invalid_argument, "corpus shorter than model order");
    MarkovModel model(alphabet_size, order, quantization);
    std::vector<Symbol> hist;
    for (Symbol s : corpus) {
        require(s < alphabet_size, Errc::invalid_argument, "corpus symbol out of alphabet");
        model.observe(hist, s);
        hist.push_back(s);
        if (hist.size() > order) hist.erase(hist.begin());
    }
    return model;
}

} // namespace stego
