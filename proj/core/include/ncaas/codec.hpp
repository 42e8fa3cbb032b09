#pragma once

#include <cstdint>
#include <vector>

#include "ncaas/gf.hpp"
#include "ncaas/random.hpp"

namespace ncaas {

/// Code configuration shared by encoder, recoder and decoder.
/// extra is the redundancy ratio (fraction of the generation size) the
/// sender emits on top of the g required packets; the codec core itself
/// never consumes it.
struct CodingParams {
    uint16_t symbols;     // generation size g
    uint16_t symbol_size; // bytes per symbol
    gf::FieldSpec field;
    double extra = 0.0;

    void validate() const;

    size_t elements_per_symbol() const {
        return static_cast<size_t>(symbol_size) * 8 / field.bits_per_element;
    }

    size_t generation_bytes() const {
        return static_cast<size_t>(symbols) * symbol_size;
    }

    bool compatible(const CodingParams& o) const {
        return symbols == o.symbols && symbol_size == o.symbol_size && field == o.field;
    }
};

/// A block of g symbols coded together.
struct Generation {
    uint32_t id = 0;
    std::vector<uint8_t> data; // symbols * symbol_size bytes, row-major
};

/// Coding vector plus coded symbol; the unit that crosses links.
struct CodedPacket {
    uint32_t generation_id = 0;
    CodingParams params{};
    std::vector<uint8_t> coefficients; // one element per byte, length = symbols
    std::vector<uint8_t> symbol;       // packed, symbol_size bytes
};

/// Rank-tracking coding state. An encoder starts at full rank with the
/// identity coding vectors over the original symbols; recoders and
/// decoders accumulate rank through consume(). Rows are kept in reduced
/// row-echelon form with identical row operations applied to the
/// coefficient and symbol matrices.
class CoderState {
public:
    enum class Role { Encoder, Recoder, Decoder };

    static CoderState encoder(const Generation& gen, const CodingParams& params);
    static CoderState recoder(uint32_t generation_id, const CodingParams& params);
    static CoderState decoder(uint32_t generation_id, const CodingParams& params);

    /// Incorporate a packet. Returns true iff it increased the rank;
    /// dependent packets are discarded.
    bool consume(const CodedPacket& pkt);

    /// Emit a random linear combination of the stored rows. For an
    /// encoder this is a fresh coded packet, for a recoder a recoded
    /// one; the output format is identical. The combination vector is
    /// drawn uniformly, resampling the all-zero draw.
    CodedPacket emit(RandomSource& rng) const;

    bool complete() const { return rank_ == params_.symbols; }

    /// Recover the original generation; requires full rank.
    Generation extract() const;

    Role role() const { return role_; }
    unsigned rank() const { return rank_; }
    uint32_t generation_id() const { return generation_id_; }
    const CodingParams& params() const { return params_; }

private:
    CoderState(Role role, uint32_t generation_id, const CodingParams& params);

    struct Row {
        std::vector<uint8_t> coef; // length = symbols, one element per byte
        std::vector<uint8_t> sym;  // length = elements_per_symbol
        size_t pivot;
    };

    Role role_;
    uint32_t generation_id_;
    CodingParams params_;
    CodedPacket combine(const std::vector<uint8_t>& weights) const;

    std::vector<Row> rows_; // sorted by pivot column
    unsigned rank_ = 0;
};

/// Emission with a delivery guarantee for transport pipelines: tracker
/// mirrors the rank already handed downstream; while the source knows
/// more than the tracker, emissions are redrawn until one is innovative
/// for it (a handful of tries at worst, each uniform draw succeeds with
/// probability >= 1 - 1/order). On a lossless path this makes a
/// generation decodable from exactly g forwarded packets.
CodedPacket emit_innovative(const CoderState& source, CoderState& tracker,
                            RandomSource& rng);

} // namespace ncaas
