#include "stegocoder/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "stegocoder/stream_coder.hpp"

namespace stego {

std::vector<BoundReport> verify_kl_bound(const ConditionalModel& model, const std::vector<std::uint64_t>& Ls,
                                         TerminationMode mode, const ContextTag& tag, unsigned workers,
                                         std::uint64_t prg_n) {
    std::vector<BoundReport> out;
    out.reserve(Ls.size());
    for (std::uint64_t L : Ls) {
        BoundReport rep;
        rep.L = L;
        if (mode == TerminationMode::paper) {
            InducedDistribution ind = induced_stego_paper(model, L, tag, workers);

            // cover prefix-measure under the same stopping rule, conditioned
            // on stopping (the emitted set covers `coverage` of the cover mass)
            SequenceDistribution cover_cond;
            for (const auto& [y, w] : ind.cover_prefix)
                cover_cond.mass().emplace(y, w / ind.coverage);

            rep.kl_total = kl_divergence_bits(cover_cond, ind.stego);
            rep.n = ind.mean_length.convert_to<double>();
            rep.kl_value = rep.kl_total / rep.n;
            rep.coverage = ind.coverage.convert_to<double>();
            rep.min_length = ind.min_length;
            rep.max_length = ind.max_length;
            rep.support = ind.stego.mass().size();
        } else {
            require(prg_n >= 1, Errc::invalid_argument, "prg mode requires a sequence length");
            SequenceDistribution stego = induced_stego_prg(model, L, prg_n, tag);
            SequenceDistribution cover = cover_distribution(model, prg_n, tag);
            rep.kl_total = kl_divergence_bits(cover, stego);
            rep.n = static_cast<double>(prg_n);
            rep.kl_value = rep.kl_total / rep.n;
            rep.coverage = 1.0;
            rep.min_length = rep.max_length = prg_n;
            rep.support = stego.mass().size();
        }
        rep.bound = 2.0 / rep.n;
        rep.satisfied = rep.kl_value < rep.bound;
        out.push_back(rep);
    }
    return out;
}

void write_bound_reports(std::ostream& out, const std::vector<BoundReport>& reports) {
    out << "L\tn\tkl_value\tbound\tsatisfied\tkl_total\tcoverage\tmin_len\tmax_len\tsupport\n";
    out << std::setprecision(17);
    for (const auto& r : reports)
        out << r.L << '\t' << r.n << '\t' << r.kl_value << '\t' << r.bound << '\t'
            << (r.satisfied ? 1 : 0) << '\t' << r.kl_total << '\t' << r.coverage << '\t' << r.min_length
            << '\t' << r.max_length << '\t' << r.support << '\n';
}

std::vector<BoundReport> read_bound_reports(std::istream& in) {
    std::vector<BoundReport> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream row(line);
        BoundReport r;
        int satisfied = 0;
        row >> r.L >> r.n >> r.kl_value >> r.bound >> satisfied >> r.kl_total >> r.coverage >>
            r.min_length >> r.max_length >> r.support;
        require(!row.fail(), Errc::format, "malformed bound report row");
        r.satisfied = satisfied != 0;
        out.push_back(r);
    }
    return out;
}

namespace {

Symbol sample_symbol(const FrequencyTable& t, std::mt19937_64& rng) {
    auto r = static_cast<std::uint32_t>(rng() % t.total());
    Symbol lo = 0, hi = t.alphabet_size() - 1;
    while (lo < hi) {
        Symbol mid = lo + (hi - lo + 1) / 2;
        if (t.cumulative(mid) <= r)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

} // namespace

EntropyEstimate entropy_rate(const ConditionalModel& model, std::uint64_t horizon, std::uint64_t trials,
                             std::uint64_t seed, const ContextTag& tag) {
    require(horizon >= 1, Errc::invalid_argument, "horizon must be >= 1");
    require(trials >= 1, Errc::invalid_argument, "trials must be >= 1");
    if (auto budget = model.sequence_budget())
        require(horizon <= *budget, Errc::invalid_argument, "horizon exceeds the model's sequence budget");

    std::mt19937_64 rng(seed);
    std::vector<double> per_trial(trials, 0.0);
    for (auto& acc : per_trial) {
        auto stream = model.start(tag);
        for (std::uint64_t i = 0; i < horizon; ++i) {
            FrequencyTable t = stream->table();
            Symbol s = sample_symbol(t, rng);
            acc += std::log2(static_cast<double>(t.total())) - std::log2(static_cast<double>(t.count(s)));
            stream->advance(s);
        }
        acc /= static_cast<double>(horizon);
    }
    EntropyEstimate est;
    for (double v : per_trial) est.bits_per_symbol += v;
    est.bits_per_symbol /= static_cast<double>(trials);
    if (trials > 1) {
        double var = 0;
        for (double v : per_trial) var += (v - est.bits_per_symbol) * (v - est.bits_per_symbol);
        var /= static_cast<double>(trials - 1);
        est.standard_error = std::sqrt(var / static_cast<double>(trials));
    }
    return est;
}

RateReport rate_report(const ConditionalModel& model, std::uint64_t n_symbols, std::uint64_t trials,
                       std::uint64_t seed, const ContextTag& tag) {
    require(n_symbols >= 1, Errc::invalid_argument, "n must be >= 1");
    require(trials >= 1, Errc::invalid_argument, "trials must be >= 1");

    EntropyEstimate H = entropy_rate(model, std::min<std::uint64_t>(n_symbols, 2048), 8, seed ^ 0x9e3779b9, tag);
    const auto L = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(
                                                  H.bits_per_symbol * static_cast<double>(n_symbols))));

    std::mt19937_64 rng(seed);
    std::vector<double> rates(trials, 0.0);
    for (auto& rate : rates) {
        Bits message(L);
        for (auto& b : message) b = static_cast<std::uint8_t>(rng() & 1);
        BitSource source(std::move(message));
        EmbedRequest req;
        req.mode = TerminationMode::paper;
        req.context = tag;
        req.max_symbols = 64 * n_symbols + 4096;
        EmbedResult r = stream_embed(source, L, model, req);
        rate = static_cast<double>(L) / static_cast<double>(r.symbols.size());
    }

    RateReport rep;
    rep.trials = trials;
    rep.symbols_per_trial = n_symbols;
    rep.entropy = H.bits_per_symbol;
    for (double r : rates) rep.mean_rate += r;
    rep.mean_rate /= static_cast<double>(trials);
    if (trials > 1) {
        double var = 0;
        for (double r : rates) var += (r - rep.mean_rate) * (r - rep.mean_rate);
        var /= static_cast<double>(trials - 1);
        rep.standard_error = std::sqrt(var / static_cast<double>(trials));
    }
    // H <= rate < H + 2/n, up to Monte-Carlo noise on both estimates
    double eps = 4.0 * (rep.standard_error + H.standard_error) + 1e-6;
    rep.within_bounds = rep.mean_rate >= H.bits_per_symbol - eps &&
                        rep.mean_rate <= H.bits_per_symbol + 2.0 / static_cast<double>(n_symbols) + eps;
    return rep;
}

} // namespace stego
