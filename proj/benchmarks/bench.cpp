#include <benchmark/benchmark.h>

#include "ncaas/analytic.hpp"
#include "ncaas/codec.hpp"
#include "ncaas/simulator.hpp"

using namespace ncaas;

namespace {

CodingParams make_params(unsigned g, unsigned symbol_size, unsigned order) {
    CodingParams p;
    p.symbols = static_cast<uint16_t>(g);
    p.symbol_size = static_cast<uint16_t>(symbol_size);
    p.field = gf::FieldSpec::of(order);
    return p;
}

Generation random_generation(const CodingParams& p, RandomSource& rng) {
    Generation gen;
    gen.id = 0;
    gen.data.resize(p.generation_bytes());
    for (auto& b : gen.data) b = static_cast<uint8_t>(rng.next_u64());
    return gen;
}

void bm_gf_axpy(benchmark::State& state) {
    const auto f = gf::FieldSpec::of(static_cast<unsigned>(state.range(0)));
    SplitMix64 rng(1);
    std::vector<uint8_t> dest(1450), src(1450);
    for (auto& b : src) b = rng.next_element(f.order);
    for (auto _ : state) {
        gf::axpy(dest, src, 0x57 & static_cast<uint8_t>(f.order - 1), f);
        benchmark::DoNotOptimize(dest.data());
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * 1450);
}
BENCHMARK(bm_gf_axpy)->Arg(2)->Arg(16)->Arg(256);

void bm_encode_emit(benchmark::State& state) {
    const auto p = make_params(static_cast<unsigned>(state.range(0)), 1450, 256);
    SplitMix64 rng(2);
    const auto enc = CoderState::encoder(random_generation(p, rng), p);
    for (auto _ : state) {
        auto pkt = enc.emit(rng);
        benchmark::DoNotOptimize(pkt.symbol.data());
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * 1450);
}
BENCHMARK(bm_encode_emit)->Arg(16)->Arg(64)->Arg(128);

void bm_decode_generation(benchmark::State& state) {
    const auto p = make_params(static_cast<unsigned>(state.range(0)), 1450, 256);
    SplitMix64 rng(3);
    const auto enc = CoderState::encoder(random_generation(p, rng), p);
    for (auto _ : state) {
        auto dec = CoderState::decoder(0, p);
        while (!dec.complete()) dec.consume(enc.emit(rng));
        benchmark::DoNotOptimize(dec.rank());
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(p.generation_bytes()));
}
BENCHMARK(bm_decode_generation)->Arg(16)->Arg(64);

void bm_two_hop_recursion(benchmark::State& state) {
    const unsigned g = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(expected_slots_two_hop(g, 0, 0.5, 0.5));
}
BENCHMARK(bm_two_hop_recursion)->Arg(64)->Arg(128)->Arg(256);

void bm_simulate_rlnc(benchmark::State& state) {
    ScenarioConfig cfg;
    cfg.scheme = SchemeId::RLNC;
    cfg.generation_size = 64;
    cfg.packet_bytes = 250;
    cfg.channel = ChannelModel::uniform(0.3, static_cast<size_t>(state.range(0)),
                                        inter_packet_time(250, 0.25e6));
    SplitMix64 rng(4);
    uint64_t slots = 0;
    for (auto _ : state) {
        const auto res = simulate(cfg, rng);
        slots += res.slots_to_decode;
    }
    benchmark::DoNotOptimize(slots);
    state.counters["slots/s"] = benchmark::Counter(
        static_cast<double>(slots), benchmark::Counter::kIsRate);
}
BENCHMARK(bm_simulate_rlnc)->Arg(2)->Arg(4)->Arg(7);

} // namespace

BENCHMARK_MAIN();
