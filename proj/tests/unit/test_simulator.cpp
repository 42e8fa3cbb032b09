#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncaas/simulator.hpp"

using namespace ncaas;
using doctest::Approx;

namespace {

ScenarioConfig base_config(SchemeId scheme, double eps, size_t hops,
                           unsigned g = 64, unsigned bytes = 250) {
    ScenarioConfig cfg;
    cfg.scheme = scheme;
    cfg.generation_size = g;
    cfg.packet_bytes = bytes;
    cfg.channel = ChannelModel::uniform(eps, hops, inter_packet_time(bytes, 0.25e6));
    return cfg;
}

} // namespace

TEST_CASE("lossless slot counts are exact") {
    for (Fidelity fid : {Fidelity::DOF, Fidelity::EXACT}) {
        SplitMix64 rng(1);
        auto cfg = base_config(SchemeId::E2E, 0.0, 3);
        cfg.fidelity = fid;

        const auto e2e = simulate(cfg, rng);
        CHECK(e2e.slots_to_decode == 64);
        CHECK(e2e.total_packets == 192); // every packet crosses all 3 links

        cfg.scheme = SchemeId::HbH;
        const auto hbh = simulate(cfg, rng);
        CHECK(hbh.slots_to_decode == 192);
        CHECK(hbh.total_packets == 192);

        cfg.scheme = SchemeId::RLNC;
        const auto rlnc = simulate(cfg, rng);
        CHECK(rlnc.slots_to_decode == 64);
        CHECK(rlnc.total_packets == 192);
    }
}

TEST_CASE("latency combines slots, inter-packet time and link delay") {
    SplitMix64 rng(2);
    auto cfg = base_config(SchemeId::RLNC, 0.0, 3);
    cfg.channel.link_delay = 0.004;
    const auto res = simulate(cfg, rng);
    CHECK(res.decode_success);
    CHECK(res.latency_s ==
          Approx(64 * cfg.channel.inter_packet_time + 3 * 0.004).epsilon(1e-12));
}

TEST_CASE("per-link attempt counts sum to the total") {
    SplitMix64 rng(3);
    for (SchemeId s : {SchemeId::E2E, SchemeId::HbH, SchemeId::RLNC}) {
        const auto res = simulate(base_config(s, 0.3, 4), rng);
        uint64_t sum = 0;
        for (uint64_t a : res.packets_per_link) sum += a;
        CHECK(res.packets_per_link.size() == 4);
        CHECK(sum == res.total_packets);
        CHECK(res.decode_success);
    }
}

TEST_CASE("identical seeds give identical runs") {
    for (SchemeId s : {SchemeId::E2E, SchemeId::HbH, SchemeId::RLNC}) {
        for (Fidelity fid : {Fidelity::DOF, Fidelity::EXACT}) {
            auto cfg = base_config(s, 0.25, 3, 32);
            cfg.fidelity = fid;
            SplitMix64 ra(77), rb(77);
            const auto a = simulate(cfg, ra);
            const auto b = simulate(cfg, rb);
            CHECK(a.total_packets == b.total_packets);
            CHECK(a.slots_to_decode == b.slots_to_decode);
            CHECK(a.packets_per_link == b.packets_per_link);
        }
    }
}

TEST_CASE("run_many is order-independent and reports sane statistics") {
    const auto cfg = base_config(SchemeId::RLNC, 0.3, 3);
    const auto a = run_many(cfg, 200, 42);
    const auto b = run_many(cfg, 200, 42);
    CHECK(a.mean_total_packets == b.mean_total_packets);
    CHECK(a.mean_latency_s == b.mean_latency_s);
    CHECK(a.sd_total_packets == b.sd_total_packets);

    CHECK(a.n_runs == 200);
    CHECK(a.sd_total_packets > 0.0);
    CHECK(a.ci95_total_packets == Approx(1.96 * a.sd_total_packets /
                                         std::sqrt(200.0)).epsilon(1e-12));
    CHECK(a.mean_latency_s ==
          Approx(a.mean_slots * cfg.channel.inter_packet_time).epsilon(1e-12));

    const auto c = run_many(cfg, 200, 43);
    CHECK(c.mean_total_packets != a.mean_total_packets);
}

TEST_CASE("simulated packet counts track the closed forms") {
    for (double eps : {0.1, 0.3, 0.5}) {
        for (SchemeId s : {SchemeId::E2E, SchemeId::HbH, SchemeId::RLNC}) {
            const auto cfg = base_config(s, eps, 3);
            const auto st = run_many(cfg, 3000, 7);
            const double theory = theory_packets(s, 64, cfg.channel);
            CHECK(st.mean_total_packets == Approx(theory).epsilon(0.05));
        }
    }
}

TEST_CASE("two-hop RLNC slots track the recursion") {
    for (auto [e1, e2] : {std::pair{0.1, 0.1}, {0.5, 0.5}, {0.5, 0.1}}) {
        auto cfg = base_config(SchemeId::RLNC, 0.0, 2);
        cfg.channel.loss = {e1, e2};
        const auto st = run_many(cfg, 4000, 11);
        const double theory = expected_slots_two_hop(64, 0, e1, e2);
        CHECK(st.mean_slots == Approx(theory).epsilon(0.02));
    }
}

TEST_CASE("EXACT fidelity stays close to DOF") {
    auto cfg = base_config(SchemeId::RLNC, 0.3, 3);
    const auto dof = run_many(cfg, 1500, 5);
    cfg.fidelity = Fidelity::EXACT;
    const auto exact = run_many(cfg, 1500, 5);
    // GF(256) dependence adds well under a percent.
    CHECK(exact.mean_total_packets ==
          Approx(dof.mean_total_packets).epsilon(0.015));
    CHECK(exact.mean_slots >= dof.mean_slots * 0.99);
}

TEST_CASE("config validation rejects nonsense") {
    SplitMix64 rng(1);
    auto cfg = base_config(SchemeId::RLNC, 0.1, 2);
    cfg.generation_size = 0;
    CHECK_THROWS_AS(static_cast<void>(simulate(cfg, rng)), Error);
    cfg = base_config(SchemeId::RLNC, 0.1, 2);
    cfg.packet_bytes = 0;
    CHECK_THROWS_AS(static_cast<void>(simulate(cfg, rng)), Error);
    CHECK_THROWS_AS(run_many(base_config(SchemeId::RLNC, 0.1, 2), 0, 1), Error);
}
