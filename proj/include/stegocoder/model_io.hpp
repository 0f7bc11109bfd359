#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "stegocoder/digest.hpp"
#include "stegocoder/markov.hpp"
#include "stegocoder/model.hpp"

namespace stego {

// Model container, magic "SMM1". All integers little-endian fixed-width;
// layout documented in docs/formats.md. serialize/deserialize is bit-exact:
// deserialize(serialize(m)) behaves identically to m on all inputs.
std::vector<std::uint8_t> serialize_model(const ConditionalModel& model);
std::unique_ptr<ConditionalModel> deserialize_model(const std::vector<std::uint8_t>& bytes);

void save_model(const ConditionalModel& model, const std::string& path);
std::unique_ptr<ConditionalModel> load_model(const std::string& path);

// Digest of the serialized container; embedded in stego headers to catch
// sender/receiver model drift.
Sha256Digest model_digest(const ConditionalModel& model);
Sha256Digest file_digest(const std::string& path);

} // namespace stego
