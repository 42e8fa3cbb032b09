#include "ncaas/gf.hpp"

#include <array>

namespace ncaas::gf {

namespace {

// Log/antilog tables over a primitive element, built once per field.
struct Tables {
    std::array<uint8_t, 256> exp{};
    std::array<uint16_t, 256> log{};
    unsigned order;

    Tables(unsigned ord, unsigned poly, uint8_t generator) : order(ord) {
        unsigned x = 1;
        for (unsigned i = 0; i < ord - 1; ++i) {
            exp[i] = static_cast<uint8_t>(x);
            log[x] = static_cast<uint16_t>(i);
            // multiply x by the generator, schoolbook
            unsigned acc = 0;
            unsigned a = x;
            unsigned b = generator;
            while (b) {
                if (b & 1) acc ^= a;
                a <<= 1;
                if (a & ord) a ^= poly;
                b >>= 1;
            }
            x = acc;
        }
    }

    uint8_t mul(uint8_t a, uint8_t b) const {
        if (a == 0 || b == 0) return 0;
        unsigned s = log[a] + log[b];
        if (s >= order - 1) s -= order - 1;
        return exp[s];
    }

    uint8_t inv(uint8_t a) const {
        return exp[(order - 1 - log[a]) % (order - 1)];
    }
};

const Tables& tables16() {
    static const Tables t(16, 0x13, 0x02);
    return t;
}

const Tables& tables256() {
    static const Tables t(256, 0x11B, 0x03);
    return t;
}

} // namespace

FieldSpec FieldSpec::of(unsigned order) {
    switch (order) {
    case 2: return {2, 1};
    case 16: return {16, 4};
    case 256: return {256, 8};
    default:
        throw Error(Errc::DomainError,
                    "unsupported field order " + std::to_string(order) +
                    " (expected 2, 16 or 256)");
    }
}

uint8_t add(uint8_t a, uint8_t b, const FieldSpec&) {
    return a ^ b;
}

uint8_t mul(uint8_t a, uint8_t b, const FieldSpec& f) {
    switch (f.order) {
    case 2: return a & b;
    case 16: return tables16().mul(a, b);
    default: return tables256().mul(a, b);
    }
}

uint8_t inv(uint8_t a, const FieldSpec& f) {
    if (a == 0) throw Error(Errc::ZeroInverse, "zero has no multiplicative inverse");
    switch (f.order) {
    case 2: return 1;
    case 16: return tables16().inv(a);
    default: return tables256().inv(a);
    }
}

void axpy(std::span<uint8_t> dest, std::span<const uint8_t> src, uint8_t c,
          const FieldSpec& f) {
    if (dest.size() != src.size())
        throw Error(Errc::LengthMismatch,
                    "axpy vectors differ in length (" + std::to_string(dest.size()) +
                    " vs " + std::to_string(src.size()) + ")");
    if (c == 0) return;
    if (c == 1) {
        for (size_t i = 0; i < dest.size(); ++i) dest[i] ^= src[i];
        return;
    }
    for (size_t i = 0; i < dest.size(); ++i)
        dest[i] ^= mul(src[i], c, f);
}

void scale(std::span<uint8_t> v, uint8_t c, const FieldSpec& f) {
    if (c == 1) return;
    for (auto& x : v) x = mul(x, c, f);
}

std::vector<uint8_t> pack_elements(std::span<const uint8_t> elements, const FieldSpec& f) {
    std::vector<uint8_t> out(packed_size(elements.size(), f), 0);
    const unsigned per_byte = 8 / f.bits_per_element;
    for (size_t i = 0; i < elements.size(); ++i) {
        const unsigned shift = (per_byte - 1 - i % per_byte) * f.bits_per_element;
        out[i / per_byte] |= static_cast<uint8_t>(elements[i] << shift);
    }
    return out;
}

std::vector<uint8_t> unpack_elements(std::span<const uint8_t> bytes, size_t count,
                                     const FieldSpec& f) {
    if (bytes.size() < packed_size(count, f))
        throw Error(Errc::LengthMismatch, "packed buffer too short");
    std::vector<uint8_t> out(count);
    const unsigned per_byte = 8 / f.bits_per_element;
    const uint8_t mask = static_cast<uint8_t>(f.order - 1);
    for (size_t i = 0; i < count; ++i) {
        const unsigned shift = (per_byte - 1 - i % per_byte) * f.bits_per_element;
        out[i] = static_cast<uint8_t>(bytes[i / per_byte] >> shift) & mask;
    }
    return out;
}

} // namespace ncaas::gf

namespace ncaas {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ParamMismatch: return "ParamMismatch";
    case Errc::GenerationMismatch: return "GenerationMismatch";
    case Errc::EmptyState: return "EmptyState";
    case Errc::Incomplete: return "Incomplete";
    case Errc::BadMagic: return "BadMagic";
    case Errc::BadVersion: return "BadVersion";
    case Errc::Truncated: return "Truncated";
    case Errc::DomainError: return "DomainError";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::EmptyGrid: return "EmptyGrid";
    }
    return "UnknownError";
}

} // namespace ncaas
