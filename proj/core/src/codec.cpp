#include "ncaas/codec.hpp"

#include <algorithm>

namespace ncaas {

void CodingParams::validate() const {
    if (symbols < 1)
        throw Error(Errc::DomainError, "symbols must be >= 1");
    if (symbol_size < 1)
        throw Error(Errc::DomainError, "symbol_size must be >= 1");
    if ((static_cast<unsigned>(symbol_size) * 8) % field.bits_per_element != 0)
        throw Error(Errc::DomainError, "symbol_size * 8 not divisible by element width");
    if (extra < 0)
        throw Error(Errc::DomainError, "extra must be >= 0");
}

CoderState::CoderState(Role role, uint32_t generation_id, const CodingParams& params)
    : role_(role), generation_id_(generation_id), params_(params) {
    params_.validate();
}

CoderState CoderState::encoder(const Generation& gen, const CodingParams& params) {
    CoderState st(Role::Encoder, gen.id, params);
    if (gen.data.size() != params.generation_bytes())
        throw Error(Errc::ParamMismatch,
                    "generation holds " + std::to_string(gen.data.size()) +
                    " bytes, expected " + std::to_string(params.generation_bytes()));
    st.rows_.reserve(params.symbols);
    for (unsigned i = 0; i < params.symbols; ++i) {
        Row row;
        row.coef.assign(params.symbols, 0);
        row.coef[i] = 1;
        std::span<const uint8_t> sym_bytes(gen.data.data() + i * params.symbol_size,
                                           params.symbol_size);
        row.sym = gf::unpack_elements(sym_bytes, params.elements_per_symbol(), params.field);
        row.pivot = i;
        st.rows_.push_back(std::move(row));
    }
    st.rank_ = params.symbols;
    return st;
}

CoderState CoderState::recoder(uint32_t generation_id, const CodingParams& params) {
    return CoderState(Role::Recoder, generation_id, params);
}

CoderState CoderState::decoder(uint32_t generation_id, const CodingParams& params) {
    return CoderState(Role::Decoder, generation_id, params);
}

bool CoderState::consume(const CodedPacket& pkt) {
    if (!params_.compatible(pkt.params))
        throw Error(Errc::ParamMismatch, "packet coding parameters do not match state");
    if (pkt.generation_id != generation_id_)
        throw Error(Errc::GenerationMismatch,
                    "packet generation " + std::to_string(pkt.generation_id) +
                    ", state generation " + std::to_string(generation_id_));
    if (pkt.coefficients.size() != params_.symbols)
        throw Error(Errc::LengthMismatch, "coding vector length != symbols");
    if (pkt.symbol.size() != params_.symbol_size)
        throw Error(Errc::LengthMismatch, "symbol length != symbol_size");
    if (complete())
        return false;

    const auto& f = params_.field;
    std::vector<uint8_t> v = pkt.coefficients;
    std::vector<uint8_t> s =
        gf::unpack_elements(pkt.symbol, params_.elements_per_symbol(), f);

    // Forward-eliminate against the known pivots.
    for (const Row& row : rows_) {
        const uint8_t c = v[row.pivot];
        if (c != 0) {
            gf::axpy(v, row.coef, c, f);
            gf::axpy(s, row.sym, c, f);
        }
    }

    const auto it = std::find_if(v.begin(), v.end(), [](uint8_t x) { return x != 0; });
    if (it == v.end())
        return false; // linearly dependent

    const size_t pivot = static_cast<size_t>(it - v.begin());
    const uint8_t norm = gf::inv(v[pivot], f);
    gf::scale(v, norm, f);
    gf::scale(s, norm, f);

    // Back-substitute so the stored matrix stays in reduced form.
    for (Row& row : rows_) {
        const uint8_t c = row.coef[pivot];
        if (c != 0) {
            gf::axpy(row.coef, v, c, f);
            gf::axpy(row.sym, s, c, f);
        }
    }

    Row fresh{std::move(v), std::move(s), pivot};
    const auto pos = std::lower_bound(
        rows_.begin(), rows_.end(), pivot,
        [](const Row& r, size_t p) { return r.pivot < p; });
    rows_.insert(pos, std::move(fresh));
    ++rank_;
    return true;
}

CodedPacket CoderState::emit(RandomSource& rng) const {
    if (rows_.empty())
        throw Error(Errc::EmptyState, "cannot emit from a rank-0 state");
    std::vector<uint8_t> w(rows_.size());
    bool all_zero = true;
    do {
        for (auto& x : w) x = rng.next_element(params_.field.order);
        all_zero = std::all_of(w.begin(), w.end(), [](uint8_t x) { return x == 0; });
    } while (all_zero);
    return combine(w);
}

CodedPacket CoderState::combine(const std::vector<uint8_t>& w) const {
    const auto& f = params_.field;
    std::vector<uint8_t> coef(params_.symbols, 0);
    std::vector<uint8_t> sym(params_.elements_per_symbol(), 0);
    for (size_t k = 0; k < rows_.size(); ++k) {
        if (w[k] == 0) continue;
        gf::axpy(coef, rows_[k].coef, w[k], f);
        gf::axpy(sym, rows_[k].sym, w[k], f);
    }

    CodedPacket pkt;
    pkt.generation_id = generation_id_;
    pkt.params = params_;
    pkt.coefficients = std::move(coef);
    pkt.symbol = gf::pack_elements(sym, f);
    return pkt;
}

Generation CoderState::extract() const {
    if (!complete())
        throw Error(Errc::Incomplete,
                    "rank " + std::to_string(rank_) + " of " +
                    std::to_string(params_.symbols));
    // Full-rank reduced form is the identity, with rows ordered by pivot.
    Generation gen;
    gen.id = generation_id_;
    gen.data.reserve(params_.generation_bytes());
    for (const Row& row : rows_) {
        auto packed = gf::pack_elements(row.sym, params_.field);
        gen.data.insert(gen.data.end(), packed.begin(), packed.end());
    }
    return gen;
}

CodedPacket emit_innovative(const CoderState& source, CoderState& tracker,
                            RandomSource& rng) {
    if (source.rank() <= tracker.rank())
        return source.emit(rng);
    // An innovative combination exists; uniform draws hit one with
    // probability >= 1/2 even over GF(2).
    for (int tries = 0; tries < 256; ++tries) {
        CodedPacket pkt = source.emit(rng);
        if (tracker.consume(pkt)) return pkt;
    }
    throw Error(Errc::EmptyState, "no innovative emission found (rng failure?)");
}

} // namespace ncaas
