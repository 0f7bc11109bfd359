#include <doctest.h>

#include <random>

#include "stegocoder/digest.hpp"
#include "stegocoder/stego_file.hpp"
#include "test_util.hpp"

using namespace stego;

TEST_CASE("sha256 known vector") {
    CHECK(to_hex(sha256(std::string("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("keystream is deterministic, keyed, and domain-separated") {
    Keystream a("key", "pad"), b("key", "pad"), c("other", "pad"), d("key", "whiten");
    std::vector<int> va, vb, vc, vd;
    for (int i = 0; i < 256; ++i) {
        va.push_back(a.next_bit());
        vb.push_back(b.next_bit());
        vc.push_back(c.next_bit());
        vd.push_back(d.next_bit());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);
}

TEST_CASE("stego container round-trips byte-exactly") {
    StegoFile f;
    f.mode = TerminationMode::prg_padding;
    f.engine = CoderEngine::fixed;
    f.message_bits = 123;
    f.alphabet_size = 3;
    f.model_digest = sha256(std::string("model"));
    f.symbols = {0, 2, 1, 0, 2};

    auto bytes = write_stego(f);
    StegoFile g = read_stego(bytes);
    CHECK(g.mode == f.mode);
    CHECK(g.engine == f.engine);
    CHECK(g.message_bits == f.message_bits);
    CHECK(g.alphabet_size == f.alphabet_size);
    CHECK(g.model_digest == f.model_digest);
    CHECK(g.symbols == f.symbols);
    CHECK(write_stego(g) == bytes);
}

TEST_CASE("stego container rejects malformed input") {
    StegoFile f;
    f.alphabet_size = 3;
    f.symbols = {0, 1, 2};
    auto bytes = write_stego(f);

    SUBCASE("bad magic") {
        bytes[3] = '9';
        CHECK_THROWS_AS((void)read_stego(bytes), Error);
    }
    SUBCASE("truncated body") {
        bytes.pop_back();
        CHECK_THROWS_AS((void)read_stego(bytes), Error);
    }
    SUBCASE("extra body") {
        bytes.push_back(0);
        CHECK_THROWS_AS((void)read_stego(bytes), Error);
    }
    SUBCASE("symbol outside the alphabet") {
        bytes.back() = 7;
        CHECK_THROWS_AS((void)read_stego(bytes), Error);
    }
    SUBCASE("oversized alphabet") {
        StegoFile big;
        big.alphabet_size = 300;
        big.symbols = {};
        CHECK_THROWS_AS((void)write_stego(big), Error);
    }
}

TEST_CASE("bit packing is MSB-first and round-trips") {
    std::vector<std::uint8_t> bytes{0xA5, 0x01};
    Bits bits = bytes_to_bits(bytes);
    CHECK(bits == Bits{1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1});
    CHECK(bits_to_bytes(bits) == bytes);

    Bits partial{1, 1, 1};
    CHECK(bits_to_bytes(partial) == std::vector<std::uint8_t>{0xE0});

    Bits acc;
    append_uint(acc, 0xABCD, 16);
    CHECK(read_uint(acc, 0, 16) == 0xABCD);
    CHECK_THROWS_AS((void)read_uint(acc, 4, 16), Error);
}
