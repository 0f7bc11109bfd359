#include "stegocoder/stream_coder.hpp"

namespace stego {

namespace {

using boost::multiprecision::cpp_int;

// Cell bounds of symbol j inside [low, high]: the integer image of
// low + width * cumulative(j)/total. Width > total (renormalization
// invariant), so every cell is non-empty.
struct Cell {
    std::uint64_t low, high; // inclusive
};

Cell cell_of(const CoderState& st, const FrequencyTable& t, Symbol j) {
    const std::uint64_t range = st.width();
    const std::uint64_t total = t.total();
    Cell c;
    c.low = st.low + range * t.cumulative(j) / total;
    c.high = st.low + range * t.cumulative(j + 1) / total - 1;
    return c;
}

// Renormalization step shared by both directions. Returns the offset
// removed before doubling (0, quarter, or half), or nullopt when the
// interval is wide enough.
std::optional<std::uint64_t> renorm_offset(const CoderState& st) {
    if (st.high < CoderState::kHalf) return 0;
    if (st.low >= CoderState::kHalf) return CoderState::kHalf;
    if (st.low >= CoderState::kQuarter && st.high < CoderState::kThreeQuarter)
        return CoderState::kQuarter;
    return std::nullopt;
}

void apply_renorm(CoderState& st, std::uint64_t offset) {
    st.low = (st.low - offset) << 1;
    st.high = ((st.high - offset) << 1) | 1;
    ++st.scale_bits;
    st.pending = offset == CoderState::kQuarter ? st.pending + 1 : 0;
}

// Paper-mode termination, evaluated exactly in register space. With
// S = 2^(scale_bits - L) the image of the message-lattice spacing,
//   q - 2^-L < low   <=>  value - low  < S
//   q + 2^-L >= high <=>  high - value < S
// independent of the unread bit tail (see the width invariant: the
// interval cannot be this small before scale_bits >= L + 30, so S is
// integral whenever the test can pass). Together with q in [low, high+1)
// these say the interval holds exactly one L-bit fraction: q itself.
bool unique_fraction(const CoderState& st, std::uint64_t value, std::uint64_t L) {
    if (st.scale_bits < L) return false;
    const std::uint64_t d = st.scale_bits - L;
    if (d >= 33) return true;
    const std::uint64_t spacing = 1ull << d;
    return (value - st.low) < spacing && (st.high - value) < spacing;
}

} // namespace

void refine(CoderState& state, const FrequencyTable& table, Symbol j) {
    require(j < table.alphabet_size(), Errc::invalid_argument, "symbol index out of range");
    require(state.width() > table.total(), Errc::invalid_argument, "interval narrower than total");
    Cell c = cell_of(state, table, j);
    state.low = c.low;
    state.high = c.high;
}

EmbedResult stream_embed(BitSource& bits, std::uint64_t message_bits, const ConditionalModel& model,
                         const EmbedRequest& request) {
    const bool paper = request.mode == TerminationMode::paper;
    if (paper)
        require(message_bits >= 1, Errc::invalid_argument, "paper mode needs at least one message bit");
    else
        require(request.n_target.has_value(), Errc::invalid_argument, "prg mode requires n_target");

    CoderState st;
    std::uint64_t value = 0;
    for (unsigned i = 0; i < CoderState::kRegisterBits; ++i)
        value = (value << 1) | static_cast<unsigned>(bits.next_bit());

    auto stream = model.start(request.context);
    auto budget = model.sequence_budget();
    EmbedResult result;

    for (;;) {
        if (paper) {
            if (unique_fraction(st, value, message_bits)) break;
        } else if (result.symbols.size() == *request.n_target) {
            break;
        }
        bool exhausted = result.symbols.size() >= request.max_symbols ||
                         (budget && result.symbols.size() >= *budget);
        if (exhausted)
            raise(Errc::entropy_exhausted, "sequence budget reached before termination constraint");

        FrequencyTable table = stream->table();
        // value's cell: largest j with cell_low(j) <= value
        Symbol lo = 0, hi = table.alphabet_size() - 1;
        while (lo < hi) {
            Symbol mid = lo + (hi - lo + 1) / 2;
            if (cell_of(st, table, mid).low <= value)
                lo = mid;
            else
                hi = mid - 1;
        }
        refine(st, table, lo);
        stream->advance(lo);
        result.symbols.push_back(lo);

        while (auto offset = renorm_offset(st)) {
            apply_renorm(st, *offset);
            value = ((value - *offset) << 1) | static_cast<unsigned>(bits.next_bit());
        }
    }
    result.bits_consumed = bits.bits_consumed();
    result.message_bits_consumed = bits.message_bits_consumed();
    return result;
}

Bits stream_extract(const StegoSequence& stego, const ConditionalModel& model, std::uint64_t message_bits,
                    TerminationMode mode, const ContextTag& tag) {
    if (message_bits == 0) return {};

    CoderState st;
    // Exact affine image of the register window: the global interval is
    // [(low + offset)/2^scale_bits, (high + 1 + offset)/2^scale_bits).
    // offset absorbs every renormalization (including middle expansions,
    // which is where pending bits live), one shift-add per step.
    cpp_int offset = 0;
    auto stream = model.start(tag);
    for (Symbol s : stego) {
        require(s < model.alphabet_size(), Errc::format, "stego symbol out of alphabet");
        refine(st, stream->table(), s);
        stream->advance(s);
        while (auto off = renorm_offset(st)) {
            apply_renorm(st, *off);
            offset = (offset + *off) << 1;
        }
    }

    const cpp_int a = offset + st.low;
    const cpp_int b = offset + st.high + 1;
    const std::uint64_t L = message_bits;
    cpp_int message;
    if (st.scale_bits >= L) {
        const std::uint64_t sh = st.scale_bits - L;
        const cpp_int one = 1;
        const cpp_int kmin = (a + (one << sh) - 1) >> sh;
        if (mode == TerminationMode::paper) {
            const cpp_int count = ((b + (one << sh) - 1) >> sh) - kmin;
            require(count == 1, Errc::ambiguous,
                    count > 1 ? "interval holds several candidate messages (truncated stego?)"
                              : "interval holds no candidate message (corrupt stego?)");
            message = kmin;
        } else {
            const cpp_int cell = a >> sh;
            require(b <= (cell + 1) << sh, Errc::ambiguous,
                    "interval straddles a message cell (stego too short for L)");
            message = cell;
        }
    } else {
        // interval is coarser than the lattice: many candidates for sure
        raise(Errc::ambiguous, "stego too short for the requested message length");
    }

    Bits out(L, 0);
    for (std::uint64_t i = 0; i < L; ++i)
        out[L - 1 - i] = static_cast<std::uint8_t>(bit_test(message, static_cast<unsigned>(i)) ? 1 : 0);
    return out;
}

} // namespace stego
