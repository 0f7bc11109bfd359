#include "stegocoder/seq_dist.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace stego {

Rational SequenceDistribution::total() const {
    Rational t = 0;
    for (const auto& [y, p] : mass_) t += p;
    return t;
}

Rational SequenceDistribution::at(const StegoSequence& y) const {
    auto it = mass_.find(y);
    return it == mass_.end() ? Rational(0) : it->second;
}

namespace {

void check_enumeration(std::uint32_t alphabet, std::uint64_t n) {
    double states = n * std::log2(static_cast<double>(alphabet));
    require(states <= std::log2(static_cast<double>(kEnumerationGuard)), Errc::state_space,
            "sequence space too large to enumerate");
}

} // namespace

SequenceDistribution cover_distribution(const ConditionalModel& model, std::uint64_t n,
                                        const ContextTag& tag) {
    check_enumeration(model.alphabet_size(), n);
    SequenceDistribution dist;
    // iterative DFS with an explicit replayed stream per node is wasteful;
    // walk depth-first keeping one stream per depth instead
    struct Frame {
        FrequencyTable table;
        Symbol next;
        Rational mass;
    };
    std::vector<Frame> stack;
    StegoSequence prefix;

    auto stream_for = [&](const StegoSequence& hist) {
        auto s = model.start(tag);
        for (Symbol h : hist) s->advance(h);
        return s;
    };

    if (n == 0) {
        dist.mass().emplace(StegoSequence{}, Rational(1));
        return dist;
    }

    stack.push_back({stream_for({})->table(), 0, Rational(1)});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next == f.table.alphabet_size()) {
            stack.pop_back();
            if (!prefix.empty()) prefix.pop_back();
            continue;
        }
        Symbol s = f.next++;
        Rational mass = f.mass * Rational(f.table.count(s), f.table.total());
        prefix.push_back(s);
        if (prefix.size() == n) {
            dist.mass().emplace(prefix, mass);
            prefix.pop_back();
        } else {
            stack.push_back({stream_for(prefix)->table(), 0, mass});
        }
    }
    return dist;
}

namespace {

struct Shard {
    SequenceDistribution::Map stego;
    std::map<StegoSequence, Rational> widths;
    Rational length_mass{0}; // sum of |y| * Ps(y)
    std::uint64_t min_len = ~0ull;
    std::uint64_t max_len = 0;
};

Shard enumerate_messages(const ConditionalModel& model, std::uint64_t L, std::uint64_t first,
                         std::uint64_t last, const ContextTag& tag) {
    Shard shard;
    const Rational unit(BigInt(1), BigInt(1) << L);
    for (std::uint64_t m = first; m < last; ++m) {
        Bits bits(L, 0);
        for (std::uint64_t i = 0; i < L; ++i) bits[L - 1 - i] = (m >> i) & 1;
        BitSource source(std::move(bits));
        EmbedRequest req;
        req.mode = TerminationMode::paper;
        req.context = tag;
        ExactEmbedResult r = exact_embed(source, L, model, req);

        auto [it, fresh] = shard.stego.emplace(r.symbols, unit);
        if (!fresh) it->second += unit;
        shard.widths.emplace(r.symbols, r.final_interval.width());
        shard.length_mass += Rational(r.symbols.size()) * unit;
        shard.min_len = std::min<std::uint64_t>(shard.min_len, r.symbols.size());
        shard.max_len = std::max<std::uint64_t>(shard.max_len, r.symbols.size());
    }
    return shard;
}

} // namespace

InducedDistribution induced_stego_paper(const ConditionalModel& model, std::uint64_t L,
                                        const ContextTag& tag, unsigned workers) {
    require(L >= 1 && L <= kMessageGuard, Errc::state_space, "message space too large to enumerate");
    const std::uint64_t count = 1ull << L;
    workers = std::max(1u, std::min<unsigned>(workers, 64));

    std::vector<Shard> shards(workers);
    if (workers == 1) {
        shards[0] = enumerate_messages(model, L, 0, count, tag);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t step = (count + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t first = std::min<std::uint64_t>(w * step, count);
            std::uint64_t last = std::min<std::uint64_t>(first + step, count);
            pool.emplace_back([&, w, first, last] {
                // each worker owns an independent exact coder and model clone
                auto local = model.clone();
                shards[w] = enumerate_messages(*local, L, first, last, tag);
            });
        }
        for (auto& t : pool) t.join();
    }

    InducedDistribution out;
    std::uint64_t min_len = ~0ull;
    for (auto& shard : shards) {
        for (auto& [y, p] : shard.stego) {
            auto [it, fresh] = out.stego.mass().emplace(y, p);
            if (!fresh) it->second += p;
        }
        for (auto& [y, w] : shard.widths) out.cover_prefix.emplace(y, w);
        out.mean_length += shard.length_mass;
        min_len = std::min(min_len, shard.min_len);
        out.max_length = std::max(out.max_length, shard.max_len);
    }
    out.min_length = min_len == ~0ull ? 0 : min_len;
    for (const auto& [y, w] : out.cover_prefix) out.coverage += w;
    require(out.stego.sums_to_one(), Errc::invalid_argument, "induced distribution must sum to 1");
    return out;
}

SequenceDistribution induced_stego_prg(const ConditionalModel& model, std::uint64_t L, std::uint64_t n,
                                       const ContextTag& tag) {
    require(L >= 1 && L <= kMessageGuard, Errc::state_space, "message space too large to enumerate");
    check_enumeration(model.alphabet_size(), n);

    // Each uniform message m contributes the cover measure of its
    // q-interval [m/2^L, (m+1)/2^L) intersected with the sequence interval,
    // scaled by 2^L (the padding tail is uniform inside the cell). Summed
    // over m this telescopes to the interval width, i.e. the cover mass --
    // computed literally here so the equality is demonstrated, not assumed.
    SequenceDistribution cover = cover_distribution(model, n, tag);
    SequenceDistribution stego;
    const BigInt cells = BigInt(1) << L;
    for (const auto& [y, cover_mass] : cover.mass()) {
        RationalInterval iv = replay_interval(y, model, tag);
        BigInt m_first = (numerator(iv.low) << L) / denominator(iv.low);
        Rational total(0);
        for (BigInt m = m_first;; ++m) {
            Rational cell_lo(m, cells);
            Rational cell_hi(m + 1, cells);
            if (cell_lo >= iv.high) break;
            const Rational& lo = cell_lo < iv.low ? iv.low : cell_lo;
            const Rational& hi = cell_hi < iv.high ? cell_hi : iv.high;
            if (hi > lo) total += hi - lo; // * 2^L (uniform in the cell) * 2^-L (message prob)
        }
        stego.mass().emplace(y, total);
    }
    require(stego.sums_to_one(), Errc::invalid_argument, "induced distribution must sum to 1");
    return stego;
}

double log2_rational(const Rational& r) {
    require(r > 0, Errc::invalid_argument, "log of non-positive rational");
    auto log2_big = [](const BigInt& v) {
        const unsigned bits = msb(v); // index of the highest set bit
        if (bits <= 52) return std::log2(v.convert_to<double>());
        BigInt top = v >> (bits - 52);
        return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
    };
    return log2_big(numerator(r)) - log2_big(denominator(r));
}

double kl_divergence_bits(const SequenceDistribution& P, const SequenceDistribution& Q) {
    require(P.sums_to_one(), Errc::invalid_argument, "P must sum to 1");
    require(Q.sums_to_one(), Errc::invalid_argument, "Q must sum to 1");
    double sum = 0;
    for (const auto& [y, p] : P.mass()) {
        if (p == 0) continue;
        Rational q = Q.at(y);
        if (q == 0) return std::numeric_limits<double>::infinity();
        if (p == q) continue; // exact zero term
        sum += p.convert_to<double>() * (log2_rational(p) - log2_rational(q));
    }
    // Gibbs: the divergence of normalized distributions is non-negative;
    // anything below rounding noise is a bug upstream.
    require(sum > -1e-9, Errc::invalid_argument, "negative divergence: inputs were not distributions");
    return std::max(sum, 0.0);
}

} // namespace stego
