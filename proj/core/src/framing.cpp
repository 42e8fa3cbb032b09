#include "ncaas/framing.hpp"

namespace ncaas::framing {

namespace {

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

uint16_t get_u16(std::span<const uint8_t> b, size_t off) {
    return static_cast<uint16_t>(b[off] << 8 | b[off + 1]);
}

uint32_t get_u32(std::span<const uint8_t> b, size_t off) {
    return static_cast<uint32_t>(b[off]) << 24 | static_cast<uint32_t>(b[off + 1]) << 16 |
           static_cast<uint32_t>(b[off + 2]) << 8 | static_cast<uint32_t>(b[off + 3]);
}

} // namespace

std::vector<uint8_t> serialize(const CodedPacket& pkt) {
    const auto& p = pkt.params;
    std::vector<uint8_t> out;
    out.reserve(frame_size(p));
    put_u16(out, kMagic);
    out.push_back(kVersion);
    out.push_back(0); // flags
    put_u32(out, pkt.generation_id);
    put_u16(out, p.symbols);
    put_u16(out, p.symbol_size);
    out.push_back(p.field.bits_per_element);
    out.push_back(0); // reserved

    auto packed = gf::pack_elements(pkt.coefficients, p.field);
    out.insert(out.end(), packed.begin(), packed.end());
    out.insert(out.end(), pkt.symbol.begin(), pkt.symbol.end());
    return out;
}

CodedPacket deserialize(std::span<const uint8_t> bytes) {
    if (bytes.size() < kHeaderSize)
        throw Error(Errc::Truncated, "frame shorter than the 14-byte header");
    if (get_u16(bytes, 0) != kMagic)
        throw Error(Errc::BadMagic, "expected 0x4E43");
    if (bytes[2] != kVersion)
        throw Error(Errc::BadVersion, "unsupported version " + std::to_string(bytes[2]));

    CodedPacket pkt;
    pkt.generation_id = get_u32(bytes, 4);

    CodingParams p;
    p.symbols = get_u16(bytes, 8);
    p.symbol_size = get_u16(bytes, 10);
    const uint8_t bits = bytes[12];
    unsigned order;
    switch (bits) {
    case 1: order = 2; break;
    case 4: order = 16; break;
    case 8: order = 256; break;
    default:
        throw Error(Errc::DomainError,
                    "unsupported element width " + std::to_string(bits));
    }
    p.field = gf::FieldSpec::of(order);
    p.validate();
    pkt.params = p;

    const size_t expected = frame_size(p);
    if (bytes.size() < expected)
        throw Error(Errc::Truncated,
                    "frame has " + std::to_string(bytes.size()) + " bytes, needs " +
                    std::to_string(expected));
    if (bytes.size() > expected)
        throw Error(Errc::LengthMismatch,
                    "frame has " + std::to_string(bytes.size()) + " bytes, expected " +
                    std::to_string(expected));

    const size_t vec_bytes = gf::packed_size(p.symbols, p.field);
    pkt.coefficients = gf::unpack_elements(bytes.subspan(kHeaderSize, vec_bytes),
                                           p.symbols, p.field);
    pkt.symbol.assign(bytes.begin() + kHeaderSize + vec_bytes, bytes.end());
    return pkt;
}

} // namespace ncaas::framing
