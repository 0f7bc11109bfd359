#include <doctest.h>

#include <random>

#include "stegocoder/exact_coder.hpp"
#include "stegocoder/stream_coder.hpp"
#include "test_util.hpp"

using namespace stego;
using test::worked_example_schedule;

namespace {

EmbedResult embed_paper(const Bits& message, const ConditionalModel& model, CoderEngine engine,
                        std::uint64_t max_symbols = 1ull << 22) {
    BitSource source(message);
    EmbedRequest req;
    req.mode = TerminationMode::paper;
    req.max_symbols = max_symbols;
    return embed_aad(source, message.size(), model, req, engine);
}

} // namespace

TEST_CASE("exact refine reproduces the worked intervals") {
    RationalInterval iv;
    iv = iv.refine(FrequencyTable({40, 10, 50}), 0);
    CHECK(iv.low == Rational(0));
    CHECK(iv.high == Rational(2, 5));
    iv = iv.refine(FrequencyTable({25, 25, 50}), 2);
    CHECK(iv.low == Rational(1, 5));
    CHECK(iv.high == Rational(2, 5));
    iv = iv.refine(FrequencyTable({50, 25, 25}), 0);
    CHECK(iv.low == Rational(1, 5));
    CHECK(iv.high == Rational(3, 10));
}

TEST_CASE("worked example: embed 010, extract 010") {
    StaticModel model = worked_example_schedule();
    const Bits message{0, 1, 0};

    for (CoderEngine engine : {CoderEngine::exact, CoderEngine::fixed}) {
        CAPTURE(static_cast<int>(engine));
        EmbedResult r = embed_paper(message, model, engine);
        CHECK(r.symbols == StegoSequence{0, 2, 0});
        CHECK(extract_aae(r.symbols, model, 3, TerminationMode::paper, {}, engine) == message);
    }

    // exact final interval [1/5, 3/10) and the uniqueness constraint
    BitSource source(message);
    EmbedRequest req;
    req.mode = TerminationMode::paper;
    ExactEmbedResult ex = exact_embed(source, 3, model, req);
    CHECK(ex.final_interval.low == Rational(1, 5));
    CHECK(ex.final_interval.high == Rational(3, 10));
    CHECK(ex.final_interval.lattice_count(3) == 1);
}

TEST_CASE("locate_symbol honours the upper-cell boundary convention") {
    RationalInterval unit;
    FrequencyTable t({40, 10, 50});
    CHECK(locate_symbol(unit, t, Rational(0)) == 0);
    CHECK(locate_symbol(unit, t, Rational(2, 5)) == 1);  // boundary -> upper cell
    CHECK(locate_symbol(unit, t, Rational(1, 2)) == 2);
    CHECK(locate_symbol(unit, t, Rational(99, 100)) == 2);
}

TEST_CASE("single bit over a uniform binary table selects the half") {
    StaticModel model{FrequencyTable({1, 1})};
    for (CoderEngine engine : {CoderEngine::exact, CoderEngine::fixed}) {
        EmbedResult one = embed_paper({1}, model, engine);
        CHECK(one.symbols == StegoSequence{1}); // q = 0.5 lies in [0.5, 1)
        EmbedResult zero = embed_paper({0}, model, engine);
        CHECK(zero.symbols == StegoSequence{0});
    }
}

TEST_CASE("uniform binary model couples bits to symbols identically") {
    StaticModel model{FrequencyTable({1, 1})};
    std::mt19937_64 rng(7);
    for (std::size_t L : {1, 2, 8, 17, 64}) {
        Bits message = test::random_bits(rng, L);
        for (CoderEngine engine : {CoderEngine::exact, CoderEngine::fixed}) {
            EmbedResult r = embed_paper(message, model, engine);
            REQUIRE(r.symbols.size() == L);
            StegoSequence expect(message.begin(), message.end());
            CHECK(r.symbols == expect);
        }
    }
}

TEST_CASE("extract of the empty message is empty") {
    StaticModel model{FrequencyTable({1, 1})};
    CHECK(extract_aae({}, model, 0, TerminationMode::paper, {}, CoderEngine::exact).empty());
    CHECK(extract_aae({}, model, 0, TerminationMode::paper, {}, CoderEngine::fixed).empty());
}

TEST_CASE("paper-mode embedding needs at least one message bit") {
    StaticModel model{FrequencyTable({1, 1})};
    BitSource source{Bits{}};
    EmbedRequest req;
    req.mode = TerminationMode::paper;
    CHECK_THROWS_AS((void)embed_aad(source, 0, model, req, CoderEngine::fixed), Error);
}

TEST_CASE("schedule exhaustion raises entropy_exhausted") {
    // two positions cannot satisfy the uniqueness constraint for 12 bits
    StaticModel model(std::vector<FrequencyTable>{FrequencyTable({40, 10, 50}),
                                                  FrequencyTable({25, 25, 50})});
    std::mt19937_64 rng(11);
    Bits message = test::random_bits(rng, 12);
    for (CoderEngine engine : {CoderEngine::exact, CoderEngine::fixed}) {
        try {
            (void)embed_paper(message, model, engine);
            FAIL("expected entropy_exhausted");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::entropy_exhausted);
        }
    }
}

TEST_CASE("truncated stego is reported as ambiguous") {
    StaticModel model{test::ternary_table()};
    std::mt19937_64 rng(13);
    Bits message = test::random_bits(rng, 24);
    for (CoderEngine engine : {CoderEngine::exact, CoderEngine::fixed}) {
        EmbedResult r = embed_paper(message, model, engine);
        StegoSequence cut(r.symbols.begin(), r.symbols.end() - 3);
        try {
            (void)extract_aae(cut, model, 24, TerminationMode::paper, {}, engine);
            FAIL("expected ambiguous");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::ambiguous);
        }
    }
}

TEST_CASE("round trips across random models, messages, and both modes") {
    std::mt19937_64 rng(20240817);
    int prg_cases = 0;
    for (int i = 0; i < 400; ++i) {
        auto model = test::random_model(rng);
        std::size_t L = 1 + rng() % 96;
        Bits message = test::random_bits(rng, L);
        if (rng() % 2 == 0) {
            EmbedResult r = embed_paper(message, *model, CoderEngine::fixed);
            CHECK(extract_aae(r.symbols, *model, L, TerminationMode::paper, {}, CoderEngine::fixed) ==
                  message);
        } else {
            // retry helper asserts recovery internally
            (void)test::prg_embed_with_retry(message, *model, 0.4, CoderEngine::fixed,
                                             "k" + std::to_string(i));
            ++prg_cases;
        }
    }
    CHECK(prg_cases > 100);
}

TEST_CASE("differential: exact and fixed engines both round-trip the same inputs") {
    std::mt19937_64 rng(424242);
    int divergent_outputs = 0;
    for (int i = 0; i < 1000; ++i) {
        auto model = test::random_model(rng);
        std::size_t L = 1 + rng() % 48;
        Bits message = test::random_bits(rng, L);

        EmbedResult fixed = embed_paper(message, *model, CoderEngine::fixed);
        EmbedResult exact = embed_paper(message, *model, CoderEngine::exact);
        CHECK(extract_aae(fixed.symbols, *model, L, TerminationMode::paper, {}, CoderEngine::fixed) ==
              message);
        CHECK(extract_aae(exact.symbols, *model, L, TerminationMode::paper, {}, CoderEngine::exact) ==
              message);
        if (fixed.symbols != exact.symbols) ++divergent_outputs;
    }
    // the two implementations are self-consistent codecs, not bit-identical
    // ones; they are allowed to pick different stego for the same message
    CHECK(divergent_outputs < 1000);
}

TEST_CASE("interval nesting: each refinement shrinks the interval to the symbol's share") {
    std::mt19937_64 rng(99);
    auto model = test::random_model(rng);
    auto stream = model->start({});
    RationalInterval iv;
    Rational expected_width(1);
    for (int k = 0; k < 30; ++k) {
        FrequencyTable t = stream->table();
        auto s = static_cast<Symbol>(rng() % t.alphabet_size());
        RationalInterval next = iv.refine(t, s);
        CHECK(next.low >= iv.low);
        CHECK(next.high <= iv.high);
        CHECK(next.width() < iv.width());
        expected_width *= Rational(t.count(s), t.total());
        CHECK(next.width() == expected_width);
        iv = next;
        stream->advance(s);
    }
}

TEST_CASE("measure preservation: q-measure of every emitted sequence equals its model probability") {
    // enumerate all sequences of length <= 4 over alphabets of size <= 4:
    // the set of q in [0,1) that emits y is exactly y's interval, so its
    // measure must equal the product of the symbol probabilities.
    for (std::uint32_t a : {2u, 3u, 4u}) {
        std::vector<std::uint32_t> counts(a);
        for (std::uint32_t i = 0; i < a; ++i) counts[i] = 7 + 5 * i;
        StaticModel model{FrequencyTable(counts)};
        for (int len : {1, 2, 3, 4}) {
            std::vector<Symbol> y(static_cast<std::size_t>(len), 0);
            for (;;) {
                RationalInterval iv = replay_interval(y, model);
                Rational product(1);
                auto stream = model.start({});
                for (Symbol s : y) {
                    FrequencyTable t = stream->table();
                    product *= Rational(t.count(s), t.total());
                    stream->advance(s);
                }
                CHECK(iv.width() == product);
                // odometer
                int pos = len - 1;
                while (pos >= 0 && ++y[static_cast<std::size_t>(pos)] == a) {
                    y[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
    }
}

TEST_CASE("paper-mode final interval always satisfies the uniqueness constraint") {
    std::mt19937_64 rng(321);
    for (int i = 0; i < 50; ++i) {
        auto model = test::random_model(rng);
        std::size_t L = 1 + rng() % 32;
        Bits message = test::random_bits(rng, L);
        BitSource source(message);
        EmbedRequest req;
        req.mode = TerminationMode::paper;
        ExactEmbedResult r = exact_embed(source, L, *model, req);
        CHECK(r.final_interval.lattice_count(L) == 1);
        // and the message fraction is that unique lattice point
        Rational q(BigInt(read_uint(message, 0, static_cast<unsigned>(L))), BigInt(1) << L);
        CHECK(q >= r.final_interval.low);
        CHECK(q < r.final_interval.high);
    }
}

TEST_CASE("determinism: identical inputs give bit-identical stego") {
    std::mt19937_64 rng(55);
    auto model = test::random_model(rng);
    Bits message = test::random_bits(rng, 64);
    EmbedResult a = embed_paper(message, *model, CoderEngine::fixed);
    EmbedResult b = embed_paper(message, *model, CoderEngine::fixed);
    CHECK(a.symbols == b.symbols);
    CHECK(a.bits_consumed == b.bits_consumed);
}

TEST_CASE("prg-padding emits exactly n_target symbols and recovers via the cell rule") {
    StaticModel model{test::ternary_table()};
    std::mt19937_64 rng(77);
    Bits message = test::random_bits(rng, 40);
    auto got = test::prg_embed_with_retry(message, model, 1.36, CoderEngine::fixed);
    CHECK(got.embed.symbols.size() == got.n_target);
    // same for the exact engine
    auto got_exact = test::prg_embed_with_retry(message, model, 1.36, CoderEngine::exact);
    CHECK(got_exact.embed.symbols.size() == got_exact.n_target);
}

TEST_CASE("prg mode requires n_target") {
    StaticModel model{test::ternary_table()};
    BitSource source{Bits{1, 0, 1}};
    EmbedRequest req;
    req.mode = TerminationMode::prg_padding;
    CHECK_THROWS_AS((void)embed_aad(source, 3, model, req, CoderEngine::fixed), Error);
}
