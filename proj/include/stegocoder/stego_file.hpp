#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stegocoder/coder.hpp"
#include "stegocoder/digest.hpp"

namespace stego {

// Stego container, magic "STG1". Header records everything extraction
// needs: termination mode, engine, L (total embedded bits, including the
// 32-bit big-endian payload-length header the CLI prepends), alphabet size
// and the model digest. Symbols are one byte each; version 1 therefore
// requires alphabet_size <= 256. Layout in docs/formats.md.
struct StegoFile {
    static constexpr std::uint8_t kFlagWhitened = 1u << 0;

    TerminationMode mode = TerminationMode::paper;
    CoderEngine engine = CoderEngine::fixed;
    std::uint8_t flags = 0;
    std::uint32_t message_bits = 0; // L
    std::uint32_t alphabet_size = 0;
    Sha256Digest model_digest{};
    StegoSequence symbols;
};

std::vector<std::uint8_t> write_stego(const StegoFile& f);
StegoFile read_stego(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

} // namespace stego
