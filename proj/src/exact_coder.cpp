#include "stegocoder/exact_coder.hpp"

#include <optional>
#include <utility>

namespace stego {

namespace {

BigInt ceil_div(const BigInt& num, const BigInt& den) {
    // den > 0, num >= 0 in all call sites
    return (num + den - 1) / den;
}

BigInt ceil_scaled(const Rational& r, std::uint64_t L) {
    // ceil(r * 2^L)
    BigInt num = numerator(r) << L;
    return ceil_div(num, denominator(r));
}

BigInt floor_scaled(const Rational& r, std::uint64_t L) {
    BigInt num = numerator(r) << L;
    return num / denominator(r);
}

// The driving fraction q in [0,1), revealed bit by bit. Maintains
// q in [known/2^bits, (known+1)/2^bits). When `exact_length` is set the
// stream is exactly zero beyond that point, so q == known/2^bits once all
// message bits are read and comparisons become direct.
class LazyFraction {
public:
    LazyFraction(BitSource& source, std::optional<std::uint64_t> exact_length)
        : source_(source), exact_length_(exact_length) {}

    // true iff q >= b (half-open cell convention: equality goes up)
    bool at_least(const Rational& b) {
        for (std::uint64_t guard = 0; guard < kMaxRefinement; ++guard) {
            if (exact()) return value() >= b;
            Rational lo(known_, BigInt(1) << bits_);
            if (lo >= b) return true;
            Rational hi(known_ + 1, BigInt(1) << bits_);
            if (hi <= b) return false;
            read_bit();
        }
        raise(Errc::invalid_argument, "bit tail indistinguishable from a cell boundary");
    }

private:
    static constexpr std::uint64_t kMaxRefinement = 1u << 16;

    bool exact() const { return exact_length_ && bits_ >= *exact_length_; }

    Rational value() const { return Rational(known_, BigInt(1) << bits_); }

    void read_bit() {
        known_ <<= 1;
        if (source_.next_bit()) ++known_;
        ++bits_;
    }

    BitSource& source_;
    std::optional<std::uint64_t> exact_length_;
    BigInt known_{0};
    std::uint64_t bits_ = 0;
};

template <typename AtLeast>
Symbol locate_with(const RationalInterval& iv, const FrequencyTable& table, AtLeast&& at_least) {
    const Rational w = iv.width();
    auto boundary = [&](Symbol j) {
        return iv.low + w * Rational(table.cumulative(j), table.total());
    };
    Symbol lo = 0, hi = table.alphabet_size() - 1;
    while (lo < hi) {
        Symbol mid = lo + (hi - lo + 1) / 2;
        if (at_least(boundary(mid)))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

} // namespace

RationalInterval RationalInterval::refine(const FrequencyTable& table, Symbol j) const {
    require(j < table.alphabet_size(), Errc::invalid_argument, "symbol index out of range");
    const Rational w = width();
    const Rational total(table.total());
    RationalInterval out;
    out.low = low + w * Rational(table.cumulative(j)) / total;
    out.high = low + w * Rational(table.cumulative(j + 1)) / total;
    return out;
}

BigInt RationalInterval::lattice_count(std::uint64_t L) const {
    return ceil_scaled(high, L) - ceil_scaled(low, L);
}

Symbol locate_symbol(const RationalInterval& iv, const FrequencyTable& table, const Rational& q) {
    require(q >= iv.low && q < iv.high, Errc::invalid_argument, "fraction outside interval");
    return locate_with(iv, table, [&](const Rational& b) { return q >= b; });
}

ExactEmbedResult exact_embed(BitSource& bits, std::uint64_t message_bits, const ConditionalModel& model,
                             const EmbedRequest& request) {
    const bool paper = request.mode == TerminationMode::paper;
    if (paper)
        require(message_bits >= 1, Errc::invalid_argument, "paper mode needs at least one message bit");
    else
        require(request.n_target.has_value(), Errc::invalid_argument, "prg mode requires n_target");

    LazyFraction q(bits, paper ? std::optional<std::uint64_t>(message_bits) : std::nullopt);
    RationalInterval iv;
    auto stream = model.start(request.context);
    auto budget = model.sequence_budget();

    ExactEmbedResult result;
    for (;;) {
        if (paper) {
            if (iv.lattice_count(message_bits) == 1) break;
        } else if (result.symbols.size() == *request.n_target) {
            break;
        }
        bool exhausted = result.symbols.size() >= request.max_symbols ||
                         (budget && result.symbols.size() >= *budget);
        if (exhausted)
            raise(Errc::entropy_exhausted, "sequence budget reached before termination constraint");

        FrequencyTable table = stream->table();
        Symbol j = locate_with(iv, table, [&](const Rational& b) { return q.at_least(b); });
        iv = iv.refine(table, j);
        stream->advance(j);
        result.symbols.push_back(j);
    }
    result.final_interval = iv;
    result.bits_consumed = bits.bits_consumed();
    result.message_bits_consumed = bits.message_bits_consumed();
    return result;
}

RationalInterval replay_interval(const StegoSequence& stego, const ConditionalModel& model,
                                 const ContextTag& tag) {
    RationalInterval iv;
    auto stream = model.start(tag);
    for (Symbol s : stego) {
        require(s < model.alphabet_size(), Errc::format, "stego symbol out of alphabet");
        iv = iv.refine(stream->table(), s);
        stream->advance(s);
    }
    return iv;
}

Bits exact_extract(const StegoSequence& stego, const ConditionalModel& model, std::uint64_t message_bits,
                   TerminationMode mode, const ContextTag& tag) {
    if (message_bits == 0) return {};
    RationalInterval iv = replay_interval(stego, model, tag);

    BigInt message;
    if (mode == TerminationMode::paper) {
        BigInt kmin = ceil_scaled(iv.low, message_bits);
        BigInt count = ceil_scaled(iv.high, message_bits) - kmin;
        require(count == 1, Errc::ambiguous,
                count > 1 ? "interval holds several candidate messages (truncated stego?)"
                          : "interval holds no candidate message (corrupt stego?)");
        message = kmin;
    } else {
        // common-prefix rule: the interval must sit inside one lattice cell
        BigInt cell = floor_scaled(iv.low, message_bits);
        BigInt num_high = numerator(iv.high) << message_bits;
        require(num_high <= (cell + 1) * denominator(iv.high), Errc::ambiguous,
                "interval straddles a message cell (stego too short for L)");
        message = cell;
    }

    Bits out(message_bits, 0);
    for (std::uint64_t i = 0; i < message_bits; ++i)
        out[message_bits - 1 - i] = static_cast<std::uint8_t>(bit_test(message, static_cast<unsigned>(i)) ? 1 : 0);
    return out;
}

} // namespace stego
