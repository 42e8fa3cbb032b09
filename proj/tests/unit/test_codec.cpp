#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "ncaas/codec.hpp"

using namespace ncaas;

namespace {

CodingParams make_params(unsigned g, unsigned symbol_size, unsigned order,
                         double extra = 0.0) {
    CodingParams p;
    p.symbols = static_cast<uint16_t>(g);
    p.symbol_size = static_cast<uint16_t>(symbol_size);
    p.field = gf::FieldSpec::of(order);
    p.extra = extra;
    return p;
}

Generation random_generation(const CodingParams& p, RandomSource& rng, uint32_t id = 0) {
    Generation gen;
    gen.id = id;
    gen.data.resize(p.generation_bytes());
    for (auto& b : gen.data) b = static_cast<uint8_t>(rng.next_u64());
    return gen;
}

/// Replays a fixed list of values; used to force specific coding vectors.
class Scripted final : public RandomSource {
public:
    explicit Scripted(std::vector<uint64_t> vals) : vals_(std::move(vals)) {}
    uint64_t next_u64() override {
        REQUIRE(pos_ < vals_.size());
        return vals_[pos_++];
    }

private:
    std::vector<uint64_t> vals_;
    size_t pos_ = 0;
};

void feed_until_complete(const CoderState& src, CoderState& dst, RandomSource& rng,
                         unsigned cap_factor = 8) {
    const unsigned cap = dst.params().symbols * cap_factor + 16;
    for (unsigned i = 0; i < cap && !dst.complete(); ++i)
        dst.consume(src.emit(rng));
    REQUIRE(dst.complete());
}

} // namespace

TEST_CASE("CodingParams::validate rejects bad shapes") {
    CHECK_THROWS_AS(make_params(0, 16, 256).validate(), Error);
    CHECK_THROWS_AS(make_params(4, 0, 256).validate(), Error);
    CHECK_THROWS_AS(make_params(4, 16, 256, -0.5).validate(), Error);
    CHECK_NOTHROW(make_params(4, 16, 256).validate());
    CHECK_NOTHROW(make_params(4, 1, 2).validate());
    CHECK_NOTHROW(make_params(4, 1, 16).validate()); // 8 bits = 2 nibbles
}

TEST_CASE("encoder starts at full rank, decoder at zero") {
    SplitMix64 rng(1);
    const auto p = make_params(8, 32, 256);
    const auto gen = random_generation(p, rng);
    const auto enc = CoderState::encoder(gen, p);
    CHECK(enc.rank() == 8);
    CHECK(enc.complete());
    CHECK(enc.extract().data == gen.data);

    const auto dec = CoderState::decoder(0, p);
    CHECK(dec.rank() == 0);
    CHECK_FALSE(dec.complete());
    CHECK_THROWS_AS(dec.extract(), Error);
}

TEST_CASE("scripted unit coding vectors reproduce the original symbols") {
    SplitMix64 rng(2);
    const auto p = make_params(4, 8, 256);
    const auto gen = random_generation(p, rng);
    const auto enc = CoderState::encoder(gen, p);

    for (unsigned k = 0; k < 4; ++k) {
        std::vector<uint64_t> weights(4, 0);
        weights[k] = 1;
        Scripted s(weights);
        const CodedPacket pkt = enc.emit(s);

        std::vector<uint8_t> expect_coef(4, 0);
        expect_coef[k] = 1;
        CHECK(pkt.coefficients == expect_coef);
        CHECK(pkt.symbol == std::vector<uint8_t>(gen.data.begin() + k * 8,
                                                 gen.data.begin() + (k + 1) * 8));
    }
}

TEST_CASE("GF(2) coded symbol is the xor of the selected originals") {
    SplitMix64 rng(3);
    const auto p = make_params(3, 4, 2);
    const auto gen = random_generation(p, rng);
    const auto enc = CoderState::encoder(gen, p);

    Scripted s({1, 1, 0}); // symbol0 ^ symbol1
    const CodedPacket pkt = enc.emit(s);
    CHECK(pkt.coefficients == std::vector<uint8_t>{1, 1, 0});
    for (size_t i = 0; i < 4; ++i)
        CHECK(pkt.symbol[i] == (gen.data[i] ^ gen.data[4 + i]));
}

TEST_CASE("consume reports innovation and rank grows monotonically") {
    SplitMix64 rng(4);
    const auto p = make_params(6, 16, 256);
    const auto enc = CoderState::encoder(random_generation(p, rng), p);
    auto dec = CoderState::decoder(0, p);

    unsigned last_rank = 0;
    while (!dec.complete()) {
        const CodedPacket pkt = enc.emit(rng);
        const bool innovative = dec.consume(pkt);
        CHECK(dec.rank() == last_rank + (innovative ? 1 : 0));
        last_rank = dec.rank();
        if (innovative) CHECK_FALSE(dec.consume(pkt)); // replay is dependent
    }
    CHECK(dec.rank() == 6);
}

TEST_CASE("roundtrip across generation sizes, fields and symbol sizes") {
    SplitMix64 rng(5);
    const unsigned orders[] = {2, 16, 256};
    const unsigned sizes[] = {4, 250};
    for (unsigned g : {2u, 16u, 32u, 64u, 128u}) {
        for (unsigned order : orders) {
            for (unsigned size : sizes) {
                const auto p = make_params(g, size, order);
                const auto gen = random_generation(p, rng);
                const auto enc = CoderState::encoder(gen, p);
                auto dec = CoderState::decoder(0, p);
                feed_until_complete(enc, dec, rng);
                CHECK(dec.extract().data == gen.data);
            }
        }
    }
    // One large-symbol case per field.
    for (unsigned order : orders) {
        const auto p = make_params(16, 1450, order);
        const auto gen = random_generation(p, rng);
        const auto enc = CoderState::encoder(gen, p);
        auto dec = CoderState::decoder(0, p);
        feed_until_complete(enc, dec, rng);
        CHECK(dec.extract().data == gen.data);
    }
}

TEST_CASE("recode chains of depth 1 through 5 stay byte-exact") {
    SplitMix64 rng(6);
    const auto p = make_params(16, 64, 256);
    const auto gen = random_generation(p, rng);
    const auto enc = CoderState::encoder(gen, p);

    for (unsigned depth = 1; depth <= 5; ++depth) {
        std::vector<CoderState> chain;
        for (unsigned i = 0; i < depth; ++i)
            chain.push_back(CoderState::recoder(0, p));
        auto dec = CoderState::decoder(0, p);

        feed_until_complete(enc, chain[0], rng);
        for (unsigned i = 1; i < depth; ++i)
            feed_until_complete(chain[i - 1], chain[i], rng);
        feed_until_complete(chain[depth - 1], dec, rng);
        CHECK(dec.extract().data == gen.data);
    }
}

TEST_CASE("partial-rank recoder emissions stay inside the received span") {
    SplitMix64 rng(7);
    const auto p = make_params(8, 16, 256);
    const auto enc = CoderState::encoder(random_generation(p, rng), p);

    auto rec = CoderState::recoder(0, p);
    for (int i = 0; i < 3; ++i) rec.consume(enc.emit(rng));
    const unsigned r = rec.rank();
    REQUIRE(r >= 1);

    auto probe = CoderState::decoder(0, p);
    for (int i = 0; i < 64; ++i) probe.consume(rec.emit(rng));
    CHECK(probe.rank() <= r); // cannot exceed what the recoder holds
}

TEST_CASE("dependent packets are rare over GF(256)") {
    SplitMix64 rng(8);
    const auto p = make_params(16, 8, 256);
    unsigned complete = 0;
    const unsigned trials = 1000;
    for (unsigned t = 0; t < trials; ++t) {
        const auto enc = CoderState::encoder(random_generation(p, rng), p);
        auto dec = CoderState::decoder(0, p);
        for (unsigned k = 0; k < 16; ++k) dec.consume(enc.emit(rng));
        if (dec.complete()) ++complete;
    }
    CHECK(complete >= 990);
}

TEST_CASE("emission stream is deterministic in the seed") {
    SplitMix64 ga(9), gb(9);
    const auto p = make_params(8, 32, 256);
    const auto gen_a = random_generation(p, ga);
    const auto gen_b = random_generation(p, gb);
    REQUIRE(gen_a.data == gen_b.data);
    const auto ea = CoderState::encoder(gen_a, p);
    const auto eb = CoderState::encoder(gen_b, p);
    for (int i = 0; i < 50; ++i) {
        const auto pa = ea.emit(ga);
        const auto pb = eb.emit(gb);
        CHECK(pa.coefficients == pb.coefficients);
        CHECK(pa.symbol == pb.symbol);
    }
}

TEST_CASE("emit_innovative delivers exactly g useful packets losslessly") {
    SplitMix64 rng(10);
    for (unsigned order : {2u, 16u, 256u}) {
        const auto p = make_params(16, 16, order);
        const auto gen = random_generation(p, rng);
        const auto enc = CoderState::encoder(gen, p);
        auto tracker = CoderState::decoder(0, p);
        auto dec = CoderState::decoder(0, p);
        for (unsigned k = 0; k < 16; ++k)
            CHECK(dec.consume(emit_innovative(enc, tracker, rng)));
        CHECK(dec.extract().data == gen.data);
    }
}

TEST_CASE("error paths raise the documented codes") {
    SplitMix64 rng(11);
    const auto p = make_params(4, 8, 256);
    const auto gen = random_generation(p, rng);
    const auto enc = CoderState::encoder(gen, p);
    auto dec = CoderState::decoder(0, p);

    Generation short_gen;
    short_gen.id = 0;
    short_gen.data.resize(p.generation_bytes() - 1);
    CHECK_THROWS_WITH_AS(static_cast<void>(CoderState::encoder(short_gen, p)),
                         doctest::Contains("ParamMismatch"), Error);

    CodedPacket pkt = enc.emit(rng);
    pkt.generation_id = 99;
    CHECK_THROWS_WITH_AS(static_cast<void>(dec.consume(pkt)),
                         doctest::Contains("GenerationMismatch"), Error);

    pkt = enc.emit(rng);
    pkt.coefficients.pop_back();
    CHECK_THROWS_WITH_AS(static_cast<void>(dec.consume(pkt)),
                         doctest::Contains("LengthMismatch"), Error);

    pkt = enc.emit(rng);
    pkt.params.symbol_size += 8;
    CHECK_THROWS_WITH_AS(static_cast<void>(dec.consume(pkt)),
                         doctest::Contains("ParamMismatch"), Error);

    const auto empty = CoderState::recoder(0, p);
    CHECK_THROWS_WITH_AS(static_cast<void>(empty.emit(rng)),
                         doctest::Contains("EmptyState"), Error);
}
