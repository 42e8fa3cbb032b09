#pragma once

#include <cstdint>
#include <vector>

#include "ncaas/analytic.hpp"
#include "ncaas/codec.hpp"
#include "ncaas/random.hpp"

namespace ncaas {

/// DOF tracks ranks only (every surviving packet from a higher-rank
/// node counts as innovative); EXACT runs real coder states over the
/// configured field, so linearly dependent packets can occur.
enum class Fidelity { DOF, EXACT };

struct ScenarioConfig {
    SchemeId scheme = SchemeId::RLNC;
    unsigned generation_size = 64;
    unsigned packet_bytes = 250; // payload size L, drives tau_P
    ChannelModel channel;
    Fidelity fidelity = Fidelity::DOF;
    gf::FieldSpec field = gf::FieldSpec{256, 8}; // EXACT fidelity only
    uint64_t seed = 0;

    void validate() const;
};

struct SimResult {
    std::vector<uint64_t> packets_per_link; // attempts on link 1..H
    uint64_t total_packets = 0;
    uint64_t slots_to_decode = 0;
    double latency_s = 0.0;
    bool decode_success = false;
};

struct RunStatistics {
    unsigned n_runs = 0;
    double mean_total_packets = 0.0;
    double sd_total_packets = 0.0;
    double ci95_total_packets = 0.0;
    double mean_latency_s = 0.0;
    double sd_latency_s = 0.0;
    double ci95_latency_s = 0.0;
    double mean_slots = 0.0;
};

/// One slot-based run of the configured scheme; the rng drives both the
/// channel losses and (in EXACT fidelity) the coding vectors.
SimResult simulate(const ScenarioConfig& cfg, RandomSource& rng);

SimResult simulate_e2e(const ScenarioConfig& cfg, RandomSource& rng);
SimResult simulate_hbh(const ScenarioConfig& cfg, RandomSource& rng);
SimResult simulate_rlnc(const ScenarioConfig& cfg, RandomSource& rng);

/// n_runs independent runs; run i is seeded with mix_seed(master_seed, i),
/// so results do not depend on execution order.
RunStatistics run_many(const ScenarioConfig& cfg, unsigned n_runs, uint64_t master_seed);

} // namespace ncaas
