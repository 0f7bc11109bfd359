#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stegocoder/seq_dist.hpp"

namespace stego {

// One row of the security report for message length L.
//
// kl_value is the per-symbol divergence rate D(Pc|S ‖ Ps) / n in bits per
// symbol, where Ps is the exact induced stego distribution over emitted
// sequences, Pc|S is the cover prefix-measure under the same stopping rule
// conditioned on stopping, and n is the mean emitted length. The bound is
// 2/n: kl_value < 2/n is exactly "total sequence divergence < 2 bits", the
// form the arithmetic-coding length bound actually delivers.
struct BoundReport {
    std::uint64_t L = 0;
    double n = 0;        // mean emitted length
    double kl_value = 0; // bits per symbol
    double bound = 0;    // 2 / n
    bool satisfied = false;
    // context for the report file
    double kl_total = 0; // D(Pc|S ‖ Ps), bits
    double coverage = 0; // cover mass of the emitted set
    std::uint64_t min_length = 0;
    std::uint64_t max_length = 0;
    std::uint64_t support = 0;
};

std::vector<BoundReport> verify_kl_bound(const ConditionalModel& model, const std::vector<std::uint64_t>& Ls,
                                         TerminationMode mode = TerminationMode::paper,
                                         const ContextTag& tag = {}, unsigned workers = 1,
                                         std::uint64_t prg_n = 0);

// Tab-separated, one row per BoundReport; used for checked-in goldens.
void write_bound_reports(std::ostream& out, const std::vector<BoundReport>& reports);
std::vector<BoundReport> read_bound_reports(std::istream& in);

struct EntropyEstimate {
    double bits_per_symbol = 0;
    double standard_error = 0;
};

// Monte-Carlo estimate of the model's per-symbol entropy over `horizon`
// positions, `trials` sampled sequences.
EntropyEstimate entropy_rate(const ConditionalModel& model, std::uint64_t horizon, std::uint64_t trials,
                             std::uint64_t seed, const ContextTag& tag = {});

struct RateReport {
    double mean_rate = 0; // embedded bits per emitted symbol
    double standard_error = 0;
    double entropy = 0; // Monte-Carlo H estimate used for sizing
    std::uint64_t trials = 0;
    std::uint64_t symbols_per_trial = 0;
    bool within_bounds = false; // mean in [H - eps, H + 2/n + eps]
};

// Embeds random messages sized to emit about `n_symbols` symbols per trial
// (paper mode) and reports bits-per-symbol against the entropy estimate.
RateReport rate_report(const ConditionalModel& model, std::uint64_t n_symbols, std::uint64_t trials,
                       std::uint64_t seed, const ContextTag& tag = {});

} // namespace stego
