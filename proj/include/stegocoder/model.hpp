#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stegocoder/freq_table.hpp"

namespace stego {

// Opaque byte string conditioning a whole sequence (the stand-in for the
// global context an autoregressive vocoder would condition on). Identical
// tag => identical model behavior.
using ContextTag = std::vector<std::uint8_t>;

class ModelStream;

// Pluggable autoregressive conditional model: given the emitted history and
// an optional global context, deterministically yields the next-symbol
// FrequencyTable. Determinism is the bedrock of receiver-side reproduction:
// both ends must derive bit-identical tables at every step.
class ConditionalModel {
public:
    virtual ~ConditionalModel() = default;

    virtual std::uint32_t alphabet_size() const = 0;

    // Per-sequence mutable state. Streams are independent; a model may be
    // shared across threads as long as each stream stays on one thread.
    virtual std::unique_ptr<ModelStream> start(const ContextTag& tag) const = 0;

    // Hard cap on sequence length (schedule models), or nullopt.
    virtual std::optional<std::uint64_t> sequence_budget() const { return std::nullopt; }

    virtual std::unique_ptr<ConditionalModel> clone() const = 0;

    // Pure-function form: the table at position |history| after observing
    // `history`. Implemented by replaying a fresh stream; the stream API is
    // the efficient path, this is the contract it must agree with.
    FrequencyTable next_distribution(const std::vector<Symbol>& history, const ContextTag& tag) const;
};

class ModelStream {
public:
    virtual ~ModelStream() = default;

    // Table for the current position. Must not mutate state.
    virtual FrequencyTable table() const = 0;

    // Observe the symbol emitted at the current position. Adaptive models
    // update their counts here, i.e. after the coder consumed table().
    virtual void advance(Symbol s) = 0;

    virtual std::uint64_t position() const = 0;
};

// Fixed table, or a fixed schedule of tables indexed by position. Ignores
// history and context. A schedule bounds the sequence length.
class StaticModel final : public ConditionalModel {
public:
    // single table, unbounded sequence
    explicit StaticModel(FrequencyTable table);
    // schedule; sequence length capped at schedule size
    explicit StaticModel(std::vector<FrequencyTable> schedule);

    std::uint32_t alphabet_size() const override;
    std::unique_ptr<ModelStream> start(const ContextTag& tag) const override;
    std::optional<std::uint64_t> sequence_budget() const override;
    std::unique_ptr<ConditionalModel> clone() const override;

    bool is_schedule() const noexcept { return schedule_; }
    const std::vector<FrequencyTable>& tables() const noexcept { return tables_; }

private:
    std::vector<FrequencyTable> tables_;
    bool schedule_;
};

} // namespace stego
