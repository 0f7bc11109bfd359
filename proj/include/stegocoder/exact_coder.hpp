#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "stegocoder/coder.hpp"

namespace stego {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact interval in [0,1]. After k refinements the width equals the product
// of the emitted symbols' model probabilities, exactly.
struct RationalInterval {
    Rational low{0};
    Rational high{1};

    Rational width() const { return high - low; }

    // Sub-interval proportional to [cumulative(j), cumulative(j+1)) / total.
    RationalInterval refine(const FrequencyTable& table, Symbol j) const;

    // Number of multiples of 2^-L inside [low, high).
    BigInt lattice_count(std::uint64_t L) const;
};

// Symbol whose cell contains q under the half-open convention: a fraction
// equal to a boundary belongs to the upper sub-interval.
Symbol locate_symbol(const RationalInterval& iv, const FrequencyTable& table, const Rational& q);

struct ExactEmbedResult {
    StegoSequence symbols;
    RationalInterval final_interval;
    std::uint64_t message_bits_consumed = 0;
    std::uint64_t bits_consumed = 0;
};

// Reference oracle: arithmetic is exact rationals throughout. Ground truth
// for differential tests and for the security harness enumerations.
ExactEmbedResult exact_embed(BitSource& bits, std::uint64_t message_bits, const ConditionalModel& model,
                             const EmbedRequest& request);
Bits exact_extract(const StegoSequence& stego, const ConditionalModel& model, std::uint64_t message_bits,
                   TerminationMode mode, const ContextTag& tag = {});

// Final interval reached by refining with every stego symbol (shared by
// exact_extract and the harness).
RationalInterval replay_interval(const StegoSequence& stego, const ConditionalModel& model,
                                 const ContextTag& tag = {});

} // namespace stego
