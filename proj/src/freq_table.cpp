#include "stegocoder/freq_table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace stego {

FrequencyTable::FrequencyTable(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {
    require(counts_.size() >= 2, Errc::invalid_argument, "alphabet size must be >= 2");
    cum_.resize(counts_.size() + 1);
    cum_[0] = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        require(counts_[i] >= 1, Errc::invalid_argument, "zero count in frequency table");
        cum_[i + 1] = cum_[i] + counts_[i];
    }
    require(cum_.back() <= kMaxTotal, Errc::invalid_argument, "frequency total exceeds 2^16");
}

std::uint32_t FrequencyTable::cumulative(Symbol j) const {
    require(j < cum_.size(), Errc::invalid_argument, "symbol index out of range");
    return cum_[j];
}

namespace {

// Remainder distribution shared by both quantizers: larger remainder first,
// ties to the lower index; then the floor of 1 is restored by taking units
// from current maxima.
template <typename Key>
FrequencyTable finish_quantize(std::vector<std::uint32_t> base,
                               std::vector<std::pair<Key, std::size_t>> remainders,
                               std::uint64_t assigned, std::uint32_t budget) {
    std::stable_sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t i = 0; assigned < budget; ++i, ++assigned) ++base[remainders[i % base.size()].second];

    for (std::size_t i = 0; i < base.size(); ++i) {
        while (base[i] == 0) {
            auto mx = std::max_element(base.begin(), base.end());
            --*mx;
            ++base[i];
        }
    }
    return FrequencyTable(std::move(base));
}

void check_budget(std::size_t alphabet, std::uint32_t budget) {
    require(alphabet >= 2, Errc::invalid_argument, "alphabet size must be >= 2");
    require(budget >= alphabet, Errc::invalid_argument, "quantization budget too small");
    require(budget <= FrequencyTable::kMaxTotal, Errc::invalid_argument, "budget exceeds 2^16");
}

} // namespace

FrequencyTable quantize(const std::vector<double>& probs, std::uint32_t budget) {
    const std::size_t a = probs.size();
    check_budget(a, budget);
    double sum = 0;
    for (double p : probs) {
        require(p >= 0, Errc::invalid_argument, "negative probability");
        sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-9, Errc::invalid_argument, "probabilities must sum to 1");

    std::vector<std::uint32_t> base(a);
    std::vector<std::pair<double, std::size_t>> rem(a);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < a; ++i) {
        double scaled = probs[i] * budget;
        base[i] = static_cast<std::uint32_t>(std::min(std::floor(scaled), double(budget)));
        rem[i] = {scaled - base[i], i};
        assigned += base[i];
    }
    // rounding in the scaled sums can overshoot by a unit; shave deterministically
    while (assigned > budget) {
        auto mx = std::max_element(base.begin(), base.end());
        --*mx;
        --assigned;
    }
    return finish_quantize(std::move(base), std::move(rem), assigned, budget);
}

FrequencyTable quantize_counts(const std::vector<std::uint64_t>& counts, std::uint32_t budget) {
    const std::size_t a = counts.size();
    check_budget(a, budget);
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    require(total > 0, Errc::invalid_argument, "all counts zero");

    // base = floor(c * budget / total); remainders compared via the exact
    // integer residue, so both ends derive bit-identical tables. The model
    // layer caps raw counts (kMaxRawCount) so c * budget fits 64 bits.
    std::vector<std::uint32_t> base(a);
    std::vector<std::pair<std::uint64_t, std::size_t>> rem(a);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < a; ++i) {
        std::uint64_t scaled = counts[i] * budget;
        base[i] = static_cast<std::uint32_t>(scaled / total);
        rem[i] = {scaled % total, i};
        assigned += base[i];
    }
    return finish_quantize(std::move(base), std::move(rem), assigned, budget);
}

} // namespace stego
