#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ncaas/simulator.hpp"

namespace ncaas {

/// Cartesian parameter grid. Each point applies the same loss
/// probability on every link (the measurement setup the latency model
/// assumes).
struct SweepGrid {
    std::vector<double> eps;
    std::vector<unsigned> packet_bytes;
    std::vector<unsigned> generation_sizes;
    std::vector<unsigned> hops;
    std::vector<double> rates_bps;
    double link_delay = 0.0;
    Fidelity fidelity = Fidelity::DOF;
    gf::FieldSpec field = gf::FieldSpec{256, 8};

    size_t points() const {
        return eps.size() * packet_bytes.size() * generation_sizes.size() * hops.size() *
               rates_bps.size();
    }
};

struct SweepRow {
    SchemeId scheme;
    unsigned generation_size;
    unsigned packet_bytes;
    unsigned hop_count;
    double rate_bps;
    std::vector<double> eps; // per link
    unsigned n_runs;
    RunStatistics stats;
    double theory_packets;
    double theory_latency_s;
    double gain_vs_rlnc;
};

/// Evaluate the grid: one row per (point, scheme), three schemes per
/// point, in canonical grid order (G, L, H, rate, eps outermost to
/// innermost). Per-point seeds derive from master_seed and the point
/// index, so identical inputs give identical tables.
std::vector<SweepRow> sweep(const SweepGrid& grid, unsigned n_runs, uint64_t master_seed);

/// CSV schema: scheme,G,L_bytes,H,rate_bps,eps,n_runs,
/// mean_total_packets,sd_total_packets,mean_latency_s,sd_latency_s,
/// theory_packets,theory_latency_s,gain_vs_rlnc.
/// eps holds the per-link values semicolon-joined.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Named presets: fig3, fig4, fig5, fig6, fig7, fig8, table1.
SweepGrid preset_grid(const std::string& name);
std::vector<std::string> preset_names();

} // namespace ncaas
