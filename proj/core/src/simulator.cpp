#include "ncaas/simulator.hpp"

#include <cmath>

namespace ncaas {

namespace {

// Symbol size used for EXACT-fidelity coder states. Latency accounting
// uses packet_bytes; the coded payload only has to exercise the field
// arithmetic, so it is kept small.
constexpr uint16_t kExactSymbolBytes = 16;

CodingParams exact_params(const ScenarioConfig& cfg) {
    CodingParams p;
    p.symbols = static_cast<uint16_t>(cfg.generation_size);
    p.symbol_size = kExactSymbolBytes;
    p.field = cfg.field;
    p.validate();
    return p;
}

Generation random_generation(const CodingParams& p, RandomSource& rng) {
    Generation gen;
    gen.id = 0;
    gen.data.resize(p.generation_bytes());
    for (auto& b : gen.data) b = static_cast<uint8_t>(rng.next_u64());
    return gen;
}

SimResult finish(const ScenarioConfig& cfg, std::vector<uint64_t> attempts,
                 uint64_t slots) {
    SimResult res;
    res.packets_per_link = std::move(attempts);
    for (uint64_t a : res.packets_per_link) res.total_packets += a;
    res.slots_to_decode = slots;
    res.latency_s = slots * cfg.channel.inter_packet_time +
                    cfg.channel.hops() * cfg.channel.link_delay;
    res.decode_success = true;
    return res;
}

} // namespace

void ScenarioConfig::validate() const {
    channel.validate();
    if (generation_size < 1)
        throw Error(Errc::DomainError, "generation size must be >= 1");
    if (generation_size > 0xFFFF)
        throw Error(Errc::DomainError, "generation size exceeds 65535");
    if (packet_bytes < 1)
        throw Error(Errc::DomainError, "packet size must be >= 1");
}

SimResult simulate(const ScenarioConfig& cfg, RandomSource& rng) {
    switch (cfg.scheme) {
    case SchemeId::E2E: return simulate_e2e(cfg, rng);
    case SchemeId::HbH: return simulate_hbh(cfg, rng);
    default: return simulate_rlnc(cfg, rng);
    }
}

// The source emits one rateless coded packet per slot; relays forward
// it along the chain within the slot. Link delay is accounted
// separately as H * tau_L. In DOF fidelity every arrival at the sink is
// innovative (ideal fountain); EXACT runs a real encoder and decoder.
SimResult simulate_e2e(const ScenarioConfig& cfg, RandomSource& rng) {
    cfg.validate();
    const size_t H = cfg.channel.hops();
    const unsigned G = cfg.generation_size;
    std::vector<uint64_t> attempts(H, 0);
    uint64_t slots = 0;

    if (cfg.fidelity == Fidelity::DOF) {
        unsigned got = 0;
        while (got < G) {
            ++slots;
            for (size_t i = 0; i < H; ++i) {
                ++attempts[i];
                if (rng.bernoulli(cfg.channel.loss[i])) break;
                if (i + 1 == H) ++got;
            }
        }
    } else {
        const CodingParams p = exact_params(cfg);
        auto enc = CoderState::encoder(random_generation(p, rng), p);
        auto dec = CoderState::decoder(0, p);
        while (!dec.complete()) {
            ++slots;
            CodedPacket pkt = enc.emit(rng);
            for (size_t i = 0; i < H; ++i) {
                ++attempts[i];
                if (rng.bernoulli(cfg.channel.loss[i])) break;
                if (i + 1 == H) dec.consume(pkt);
            }
        }
    }
    return finish(cfg, std::move(attempts), slots);
}

// H sequential stages; each stage transfers the full generation over
// one link before the next stage starts sending.
SimResult simulate_hbh(const ScenarioConfig& cfg, RandomSource& rng) {
    cfg.validate();
    const size_t H = cfg.channel.hops();
    const unsigned G = cfg.generation_size;
    std::vector<uint64_t> attempts(H, 0);
    uint64_t slots = 0;

    if (cfg.fidelity == Fidelity::DOF) {
        for (size_t i = 0; i < H; ++i) {
            unsigned got = 0;
            while (got < G) {
                ++slots;
                ++attempts[i];
                if (!rng.bernoulli(cfg.channel.loss[i])) ++got;
            }
        }
    } else {
        const CodingParams p = exact_params(cfg);
        Generation gen = random_generation(p, rng);
        for (size_t i = 0; i < H; ++i) {
            auto enc = CoderState::encoder(gen, p);
            auto dec = CoderState::decoder(0, p);
            while (!dec.complete()) {
                ++slots;
                ++attempts[i];
                CodedPacket pkt = enc.emit(rng);
                if (!rng.bernoulli(cfg.channel.loss[i])) dec.consume(pkt);
            }
            gen = dec.extract();
        }
    }
    return finish(cfg, std::move(attempts), slots);
}

// Pipelined recode-and-forward. Links are processed source-to-sink
// within a slot, so a relay that just gained its first surplus can
// forward a recoded packet in the same slot. This matches the two-hop
// state machine behind expected_slots_two_hop.
SimResult simulate_rlnc(const ScenarioConfig& cfg, RandomSource& rng) {
    cfg.validate();
    const size_t H = cfg.channel.hops();
    const unsigned G = cfg.generation_size;
    std::vector<uint64_t> attempts(H, 0);
    uint64_t slots = 0;

    if (cfg.fidelity == Fidelity::DOF) {
        std::vector<unsigned> rank(H + 1, 0);
        rank[0] = G;
        while (rank[H] < G) {
            ++slots;
            for (size_t i = 0; i < H; ++i) {
                if (rank[i] > rank[i + 1]) {
                    ++attempts[i];
                    if (!rng.bernoulli(cfg.channel.loss[i])) ++rank[i + 1];
                }
            }
        }
    } else {
        const CodingParams p = exact_params(cfg);
        std::vector<CoderState> nodes;
        nodes.reserve(H + 1);
        nodes.push_back(CoderState::encoder(random_generation(p, rng), p));
        for (size_t i = 1; i < H; ++i) nodes.push_back(CoderState::recoder(0, p));
        nodes.push_back(CoderState::decoder(0, p));
        while (!nodes[H].complete()) {
            ++slots;
            for (size_t i = 0; i < H; ++i) {
                if (nodes[i].rank() > nodes[i + 1].rank()) {
                    ++attempts[i];
                    CodedPacket pkt = nodes[i].emit(rng);
                    if (!rng.bernoulli(cfg.channel.loss[i])) nodes[i + 1].consume(pkt);
                }
            }
        }
    }
    return finish(cfg, std::move(attempts), slots);
}

RunStatistics run_many(const ScenarioConfig& cfg, unsigned n_runs, uint64_t master_seed) {
    if (n_runs < 1)
        throw Error(Errc::DomainError, "n_runs must be >= 1");
    cfg.validate();

    double sum_p = 0.0, sumsq_p = 0.0;
    double sum_l = 0.0, sumsq_l = 0.0;
    double sum_s = 0.0;
    for (unsigned i = 0; i < n_runs; ++i) {
        SplitMix64 rng(mix_seed(master_seed, i));
        const SimResult res = simulate(cfg, rng);
        const double p = static_cast<double>(res.total_packets);
        sum_p += p;
        sumsq_p += p * p;
        sum_l += res.latency_s;
        sumsq_l += res.latency_s * res.latency_s;
        sum_s += static_cast<double>(res.slots_to_decode);
    }

    const double n = n_runs;
    RunStatistics st;
    st.n_runs = n_runs;
    st.mean_total_packets = sum_p / n;
    st.mean_latency_s = sum_l / n;
    st.mean_slots = sum_s / n;
    if (n_runs > 1) {
        const double var_p =
            std::max(0.0, (sumsq_p - n * st.mean_total_packets * st.mean_total_packets) /
                              (n - 1.0));
        const double var_l =
            std::max(0.0,
                     (sumsq_l - n * st.mean_latency_s * st.mean_latency_s) / (n - 1.0));
        st.sd_total_packets = std::sqrt(var_p);
        st.sd_latency_s = std::sqrt(var_l);
        st.ci95_total_packets = 1.96 * st.sd_total_packets / std::sqrt(n);
        st.ci95_latency_s = 1.96 * st.sd_latency_s / std::sqrt(n);
    }
    return st;
}

} // namespace ncaas
