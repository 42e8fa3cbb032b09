#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ncaas/framing.hpp"

namespace ncaas::ncap {

// Capture file: 8-byte magic "NCAPv01\0", then length-prefixed wire
// frames (4-byte big-endian frame length), then one trailer record
// (frame length 0 followed by the 8-byte big-endian original payload
// length).
inline constexpr std::array<uint8_t, 8> kMagic = {'N', 'C', 'A', 'P', 'v', '0', '1', '\0'};

/// Split raw payload into generations (zero padded), encode each and
/// write ceil(g * (1 + extra)) frames per generation plus the trailer.
void encode_file(std::istream& raw, std::ostream& out, const CodingParams& params,
                 uint64_t seed);

/// Read a capture, recode each generation from whatever frames arrived
/// and emit the same frame count per generation. The trailer is copied.
void recode_file(std::istream& in, std::ostream& out, uint64_t seed);

/// Decode a capture back to the raw payload, trimming the padding.
/// Throws Incomplete when any generation lacks rank.
void decode_file(std::istream& in, std::ostream& raw_out);

// Record-level access, shared with the UDP node roles.

/// The 12-byte end-of-stream record body (zero length + payload length),
/// also usable as a standalone datagram.
std::vector<uint8_t> make_trailer(uint64_t original_length);

/// Returns the payload length if the buffer is a trailer record body.
std::optional<uint64_t> parse_trailer(std::span<const uint8_t> bytes);

void write_magic(std::ostream& out);
void read_magic(std::istream& in); // throws BadMagic
void write_frame(std::ostream& out, std::span<const uint8_t> frame);

/// Next data frame, or nullopt at the trailer (whose payload length is
/// stored into original_length). Throws Truncated on early EOF.
std::optional<std::vector<uint8_t>> read_record(std::istream& in,
                                                uint64_t& original_length);

} // namespace ncaas::ncap
