#include "stegocoder/model.hpp"

#include "stegocoder/error.hpp"

namespace stego {

FrequencyTable ConditionalModel::next_distribution(const std::vector<Symbol>& history,
                                                   const ContextTag& tag) const {
    auto stream = start(tag);
    for (Symbol s : history) {
        require(s < alphabet_size(), Errc::invalid_argument, "history symbol out of alphabet");
        stream->advance(s);
    }
    return stream->table();
}

namespace {

class StaticStream final : public ModelStream {
public:
    StaticStream(const StaticModel& model) : model_(model) {}

    FrequencyTable table() const override {
        const auto& tables = model_.tables();
        if (model_.is_schedule()) {
            require(pos_ < tables.size(), Errc::entropy_exhausted, "static schedule exhausted");
            return tables[pos_];
        }
        return tables.front();
    }

    void advance(Symbol s) override {
        require(s < model_.alphabet_size(), Errc::invalid_argument, "symbol out of alphabet");
        ++pos_;
    }

    std::uint64_t position() const override { return pos_; }

private:
    const StaticModel& model_;
    std::uint64_t pos_ = 0;
};

} // namespace

StaticModel::StaticModel(FrequencyTable table) : schedule_(false) { tables_.push_back(std::move(table)); }

StaticModel::StaticModel(std::vector<FrequencyTable> schedule)
    : tables_(std::move(schedule)), schedule_(true) {
    require(!tables_.empty(), Errc::invalid_argument, "empty schedule");
    for (const auto& t : tables_)
        require(t.alphabet_size() == tables_.front().alphabet_size(), Errc::invalid_argument,
                "schedule tables must share one alphabet");
}

std::uint32_t StaticModel::alphabet_size() const { return tables_.front().alphabet_size(); }

std::unique_ptr<ModelStream> StaticModel::start(const ContextTag&) const {
    return std::make_unique<StaticStream>(*this);
}

std::optional<std::uint64_t> StaticModel::sequence_budget() const {
    if (schedule_) return tables_.size();
    return std::nullopt;
}

std::unique_ptr<ConditionalModel> StaticModel::clone() const { return std::make_unique<StaticModel>(*this); }

} // namespace stego
