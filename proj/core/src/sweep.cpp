#include "ncaas/sweep.hpp"

#include <cstdio>
#include <ostream>

namespace ncaas {

namespace {

constexpr SchemeId kSchemes[] = {SchemeId::E2E, SchemeId::HbH, SchemeId::RLNC};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

std::vector<SweepRow> sweep(const SweepGrid& grid, unsigned n_runs, uint64_t master_seed) {
    if (grid.points() == 0)
        throw Error(Errc::EmptyGrid, "sweep grid has no points");
    if (n_runs < 1)
        throw Error(Errc::DomainError, "n_runs must be >= 1");

    std::vector<SweepRow> rows;
    rows.reserve(grid.points() * 3);
    uint64_t point_index = 0;
    for (unsigned G : grid.generation_sizes)
        for (unsigned L : grid.packet_bytes)
            for (unsigned H : grid.hops)
                for (double rate : grid.rates_bps)
                    for (double e : grid.eps) {
                        const ChannelModel ch = ChannelModel::uniform(
                            e, H, inter_packet_time(L, rate), grid.link_delay);

                        RunStatistics per_scheme[3];
                        for (int s = 0; s < 3; ++s) {
                            ScenarioConfig cfg;
                            cfg.scheme = kSchemes[s];
                            cfg.generation_size = G;
                            cfg.packet_bytes = L;
                            cfg.channel = ch;
                            cfg.fidelity = grid.fidelity;
                            cfg.field = grid.field;
                            per_scheme[s] =
                                run_many(cfg, n_runs, mix_seed(master_seed, point_index * 3 + s));
                        }
                        const double rlnc_latency = per_scheme[2].mean_latency_s;

                        for (int s = 0; s < 3; ++s) {
                            SweepRow row;
                            row.scheme = kSchemes[s];
                            row.generation_size = G;
                            row.packet_bytes = L;
                            row.hop_count = H;
                            row.rate_bps = rate;
                            row.eps = ch.loss;
                            row.n_runs = n_runs;
                            row.stats = per_scheme[s];
                            row.theory_packets = theory_packets(kSchemes[s], G, ch);
                            row.theory_latency_s = theory_latency(kSchemes[s], G, ch);
                            row.gain_vs_rlnc =
                                gain(per_scheme[s].mean_latency_s, rlnc_latency);
                            rows.push_back(std::move(row));
                        }
                        ++point_index;
                    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "scheme,G,L_bytes,H,rate_bps,eps,n_runs,mean_total_packets,"
           "sd_total_packets,mean_latency_s,sd_latency_s,theory_packets,"
           "theory_latency_s,gain_vs_rlnc\n";
    for (const auto& r : rows) {
        out << scheme_name(r.scheme) << ',' << r.generation_size << ',' << r.packet_bytes
            << ',' << r.hop_count << ',' << fmt_double(r.rate_bps) << ',';
        for (size_t i = 0; i < r.eps.size(); ++i) {
            if (i) out << ';';
            out << fmt_double(r.eps[i]);
        }
        out << ',' << r.n_runs << ',' << fmt_double(r.stats.mean_total_packets) << ','
            << fmt_double(r.stats.sd_total_packets) << ','
            << fmt_double(r.stats.mean_latency_s) << ','
            << fmt_double(r.stats.sd_latency_s) << ',' << fmt_double(r.theory_packets)
            << ',' << fmt_double(r.theory_latency_s) << ',' << fmt_double(r.gain_vs_rlnc)
            << '\n';
    }
}

SweepGrid preset_grid(const std::string& name) {
    const std::vector<double> all_eps{0.1, 0.2, 0.3, 0.4, 0.5};
    const std::vector<double> all_rates{0.25e6, 0.5e6, 1e6, 2e6, 4e6, 8e6};
    const std::vector<unsigned> all_sizes{250, 500, 750, 1000, 1450};
    const std::vector<unsigned> all_hops{2, 3, 4, 5, 6, 7};

    SweepGrid g;
    if (name == "fig3") {
        // Packet counts vs loss: G 64, 250 B, 3 hops.
        g.eps = all_eps;
        g.packet_bytes = {250};
        g.generation_sizes = {64};
        g.hops = {3};
        g.rates_bps = {0.25e6};
    } else if (name == "fig4") {
        // Latency vs rate, lossless: G 64, 1450 B, 3 hops.
        g.eps = {0.0};
        g.packet_bytes = {1450};
        g.generation_sizes = {64};
        g.hops = {3};
        g.rates_bps = all_rates;
    } else if (name == "fig5") {
        // Latency vs rate at 50% loss.
        g.eps = {0.5};
        g.packet_bytes = {1450};
        g.generation_sizes = {64};
        g.hops = {3};
        g.rates_bps = all_rates;
    } else if (name == "fig6" || name == "fig7") {
        // Hops x loss surface; fig7 reads the gain columns of the same rows.
        g.eps = all_eps;
        g.packet_bytes = {250};
        g.generation_sizes = {64};
        g.hops = all_hops;
        g.rates_bps = {0.25e6};
    } else if (name == "fig8") {
        // Hops x packet size at 10% loss.
        g.eps = {0.1};
        g.packet_bytes = all_sizes;
        g.generation_sizes = {64};
        g.hops = all_hops;
        g.rates_bps = {0.25e6};
    } else if (name == "table1") {
        g.eps = all_eps;
        g.packet_bytes = all_sizes;
        g.generation_sizes = {16, 32, 64, 128};
        g.hops = all_hops;
        g.rates_bps = all_rates;
    } else {
        throw Error(Errc::DomainError, "unknown preset '" + name + "'");
    }
    return g;
}

std::vector<std::string> preset_names() {
    return {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "table1"};
}

} // namespace ncaas
