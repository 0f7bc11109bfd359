#include "stegocoder/stego_file.hpp"

#include <cstring>
#include <fstream>

#include "stegocoder/error.hpp"

namespace stego {

namespace {

constexpr char kMagic[4] = {'S', 'T', 'G', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct Cursor {
    const std::vector<std::uint8_t>& in;
    std::size_t pos = 0;

    std::uint8_t u8() {
        require(pos + 1 <= in.size(), Errc::format, "stego file truncated");
        return in[pos++];
    }
    std::uint32_t u32() {
        require(pos + 4 <= in.size(), Errc::format, "stego file truncated");
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        require(pos + 8 <= in.size(), Errc::format, "stego file truncated");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
};

} // namespace

std::vector<std::uint8_t> write_stego(const StegoFile& f) {
    require(f.alphabet_size >= 2 && f.alphabet_size <= 256, Errc::format,
            "stego container v1 holds alphabets up to 256");
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u32(out, kVersion);
    out.push_back(static_cast<std::uint8_t>(f.mode));
    out.push_back(static_cast<std::uint8_t>(f.engine));
    out.push_back(f.flags);
    put_u32(out, f.message_bits);
    put_u32(out, f.alphabet_size);
    put_u64(out, f.symbols.size());
    out.insert(out.end(), f.model_digest.begin(), f.model_digest.end());
    for (Symbol s : f.symbols) {
        require(s < f.alphabet_size, Errc::format, "symbol out of alphabet");
        out.push_back(static_cast<std::uint8_t>(s));
    }
    return out;
}

StegoFile read_stego(const std::vector<std::uint8_t>& bytes) {
    require(bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0, Errc::format,
            "bad stego magic");
    Cursor cur{bytes, 4};
    require(cur.u32() == kVersion, Errc::format, "unsupported stego version");
    StegoFile f;
    std::uint8_t mode = cur.u8();
    require(mode <= 1, Errc::format, "unknown termination mode");
    f.mode = static_cast<TerminationMode>(mode);
    std::uint8_t engine = cur.u8();
    require(engine <= 1, Errc::format, "unknown coder engine");
    f.engine = static_cast<CoderEngine>(engine);
    f.flags = cur.u8();
    f.message_bits = cur.u32();
    f.alphabet_size = cur.u32();
    require(f.alphabet_size >= 2 && f.alphabet_size <= 256, Errc::format, "alphabet size out of range");
    std::uint64_t count = cur.u64();
    require(cur.pos + 32 <= bytes.size(), Errc::format, "stego file truncated");
    std::copy(bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos),
              bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos) + 32, f.model_digest.begin());
    cur.pos += 32;
    require(bytes.size() - cur.pos == count, Errc::format, "stego symbol count mismatch");
    f.symbols.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint8_t s = bytes[cur.pos++];
        require(s < f.alphabet_size, Errc::format, "symbol out of alphabet");
        f.symbols.push_back(s);
    }
    return f;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), Errc::model_io, "cannot open file: " + path);
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), Errc::model_io, "cannot open file for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    require(out.good(), Errc::model_io, "write failed: " + path);
}

} // namespace stego
