#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "stegocoder/exact_coder.hpp"

namespace stego {

// Exact distribution over symbol sequences. Masses are rationals; sums are
// checked exactly.
class SequenceDistribution {
public:
    using Map = std::map<StegoSequence, Rational>;

    Map& mass() noexcept { return mass_; }
    const Map& mass() const noexcept { return mass_; }

    Rational total() const;
    bool sums_to_one() const { return total() == 1; }
    Rational at(const StegoSequence& y) const;

private:
    Map mass_;
};

inline constexpr std::uint64_t kEnumerationGuard = 1'000'000; // sequences
inline constexpr std::uint64_t kMessageGuard = 20;            // max L for 2^L enumeration

// Product-of-conditionals probability of every length-n sequence; sums to 1
// exactly. Throws Errc::state_space beyond the guard.
SequenceDistribution cover_distribution(const ConditionalModel& model, std::uint64_t n,
                                        const ContextTag& tag = {});

struct InducedDistribution {
    SequenceDistribution stego;                 // P_s over emitted sequences
    std::map<StegoSequence, Rational> cover_prefix; // cover measure of each emitted cylinder
    Rational coverage{0};                       // sum of cover_prefix over the support
    Rational mean_length{0};                    // expected emitted length under P_s
    std::uint64_t min_length = 0;
    std::uint64_t max_length = 0;
};

// Exact distribution over emitted sequences for a uniform message on
// {0,1}^L, paper-termination mode, by enumerating all 2^L messages with the
// exact-rational coder. `workers` splits the message space; rational merge
// is associative so the result is identical for any worker count.
InducedDistribution induced_stego_paper(const ConditionalModel& model, std::uint64_t L,
                                        const ContextTag& tag = {}, unsigned workers = 1);

// prg-padding mode at fixed length n: the padding measure is integrated
// exactly by treating post-message bits as uniform, so each message
// contributes the cover measure of its q-interval intersected with each
// sequence interval. Equals the cover distribution exactly.
SequenceDistribution induced_stego_prg(const ConditionalModel& model, std::uint64_t L, std::uint64_t n,
                                       const ContextTag& tag = {});

// sum_y P(y) log2(P(y)/Q(y)). Requires P and Q to sum to 1 exactly;
// +infinity when support(P) is not contained in support(Q).
double kl_divergence_bits(const SequenceDistribution& P, const SequenceDistribution& Q);

// log2 of a positive rational, accurate to double precision regardless of
// the operand's size.
double log2_rational(const Rational& r);

} // namespace stego
