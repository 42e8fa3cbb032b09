#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ncaas/codec.hpp"

namespace ncaas::framing {

// Wire layout, all multi-byte fields big-endian:
//   magic 0x4E43 "NC" (2)  version 0x01 (1)  flags (1)
//   generation_id (4)  symbols (2)  symbol_size (2)
//   gf bits_per_element (1)  reserved (1)
// followed by the coding vector packed most-significant-first and the
// coded symbol bytes.
inline constexpr uint16_t kMagic = 0x4E43;
inline constexpr uint8_t kVersion = 0x01;
inline constexpr size_t kHeaderSize = 14;

inline size_t frame_size(const CodingParams& p) {
    return kHeaderSize + gf::packed_size(p.symbols, p.field) + p.symbol_size;
}

std::vector<uint8_t> serialize(const CodedPacket& pkt);

/// Exact inverse of serialize. Throws BadMagic, BadVersion, Truncated or
/// LengthMismatch naming the first failed check.
CodedPacket deserialize(std::span<const uint8_t> bytes);

} // namespace ncaas::framing
