#pragma once

#include <cstdint>
#include <cstddef>
#include <span>
#include <vector>

#include "ncaas/errors.hpp"

namespace ncaas::gf {

/// Supported binary extension fields. Reduction polynomials:
/// GF(16) uses x^4+x+1 (0x13), GF(256) uses x^8+x^4+x^3+x+1 (0x11B).
struct FieldSpec {
    uint16_t order;
    uint8_t bits_per_element;

    static FieldSpec of(unsigned order);

    bool operator==(const FieldSpec&) const = default;
};

uint8_t add(uint8_t a, uint8_t b, const FieldSpec& f);
uint8_t mul(uint8_t a, uint8_t b, const FieldSpec& f);
uint8_t inv(uint8_t a, const FieldSpec& f); // throws ZeroInverse for a == 0

/// dest[i] += c * src[i]
void axpy(std::span<uint8_t> dest, std::span<const uint8_t> src, uint8_t c,
          const FieldSpec& f);

/// Scale a vector in place by c.
void scale(std::span<uint8_t> v, uint8_t c, const FieldSpec& f);

/// Pack one-element-per-byte vectors into the wire layout:
/// elements most-significant-first within each byte, zero padded.
std::vector<uint8_t> pack_elements(std::span<const uint8_t> elements, const FieldSpec& f);

/// Inverse of pack_elements given the element count.
std::vector<uint8_t> unpack_elements(std::span<const uint8_t> bytes, size_t count,
                                     const FieldSpec& f);

inline size_t packed_size(size_t count, const FieldSpec& f) {
    return (count * f.bits_per_element + 7) / 8;
}

} // namespace ncaas::gf
