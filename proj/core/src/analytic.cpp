#include "ncaas/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace ncaas {

void ChannelModel::validate() const {
    if (loss.empty())
        throw Error(Errc::DomainError, "channel needs at least one link");
    for (double e : loss)
        if (!(e >= 0.0 && e < 1.0))
            throw Error(Errc::DomainError,
                        "loss probability must be in [0, 1), got " + std::to_string(e));
    if (!(inter_packet_time > 0.0))
        throw Error(Errc::DomainError, "inter-packet time must be positive");
    if (link_delay < 0.0)
        throw Error(Errc::DomainError, "link delay must be non-negative");
}

ChannelModel ChannelModel::uniform(double eps, size_t hops, double tau_p, double tau_l) {
    ChannelModel ch{std::vector<double>(hops, eps), tau_p, tau_l};
    ch.validate();
    return ch;
}

double inter_packet_time(unsigned payload_bytes, double rate_bps) {
    if (!(rate_bps > 0.0))
        throw Error(Errc::DomainError, "channel rate must be positive");
    if (payload_bytes == 0)
        throw Error(Errc::DomainError, "payload size must be positive");
    return payload_bytes * 8.0 / rate_bps;
}

const char* scheme_name(SchemeId s) {
    switch (s) {
    case SchemeId::E2E: return "E2E";
    case SchemeId::HbH: return "HbH";
    case SchemeId::RLNC: return "RLNC";
    }
    return "?";
}

SchemeId parse_scheme(const std::string& name) {
    if (name == "E2E" || name == "e2e") return SchemeId::E2E;
    if (name == "HbH" || name == "hbh") return SchemeId::HbH;
    if (name == "RLNC" || name == "rlnc") return SchemeId::RLNC;
    throw Error(Errc::DomainError, "unknown scheme '" + name + "'");
}

double packets_e2e(unsigned G, const ChannelModel& ch) {
    ch.validate();
    const size_t H = ch.hops();
    double total = 0.0;
    for (size_t h = 0; h < H; ++h) {
        double prod = 1.0;
        for (size_t i = h; i < H; ++i) prod /= 1.0 - ch.loss[i];
        total += G * prod;
    }
    return total;
}

double packets_hbh(unsigned G, const ChannelModel& ch) {
    ch.validate();
    double sum = 0.0;
    for (double e : ch.loss) sum += 1.0 / (1.0 - e);
    return G * sum;
}

double latency_e2e(unsigned G, const ChannelModel& ch) {
    ch.validate();
    double prod = 1.0;
    for (double e : ch.loss) prod /= 1.0 - e;
    return G * prod * ch.inter_packet_time + ch.hops() * ch.link_delay;
}

double latency_hbh(unsigned G, const ChannelModel& ch) {
    ch.validate();
    double sum = 0.0;
    for (double e : ch.loss) sum += 1.0 / (1.0 - e);
    return G * ch.inter_packet_time * sum + ch.hops() * ch.link_delay;
}

double latency_rlnc(unsigned G, const ChannelModel& ch) {
    ch.validate();
    const double worst = *std::max_element(ch.loss.begin(), ch.loss.end());
    return G * ch.inter_packet_time / (1.0 - worst) + ch.hops() * ch.link_delay;
}

double theory_packets(SchemeId s, unsigned G, const ChannelModel& ch) {
    return s == SchemeId::E2E ? packets_e2e(G, ch) : packets_hbh(G, ch);
}

double theory_latency(SchemeId s, unsigned G, const ChannelModel& ch) {
    switch (s) {
    case SchemeId::E2E: return latency_e2e(G, ch);
    case SchemeId::HbH: return latency_hbh(G, ch);
    default: return latency_rlnc(G, ch);
    }
}

double expected_slots_two_hop(unsigned g, unsigned r, double eps1, double eps2) {
    if (r > g)
        throw Error(Errc::DomainError, "recoder surplus r exceeds remaining packets g");
    if (!(eps1 >= 0.0 && eps1 < 1.0) || !(eps2 >= 0.0 && eps2 < 1.0))
        throw Error(Errc::DomainError, "loss probabilities must be in [0, 1)");
    if (g == 0) return 0.0;

    // Table over states (gg, rr) with 0 <= rr <= gg <= g. Entries for a
    // fixed gg depend on gg-1 and on higher rr at the same gg, so fill
    // gg ascending and rr descending.
    std::vector<std::vector<double>> E(g + 1);
    E[0] = {0.0};
    const double q1 = 1.0 - eps1;
    const double q2 = 1.0 - eps2;
    for (unsigned gg = 1; gg <= g; ++gg) {
        E[gg].assign(gg + 1, 0.0);
        E[gg][gg] = gg / q2;
        for (unsigned rr = gg - 1; rr >= 1; --rr) {
            const double denom = 1.0 - eps1 * eps2;
            E[gg][rr] = (1.0 + q1 * q2 * E[gg - 1][rr] + q1 * eps2 * E[gg][rr + 1] +
                         eps1 * q2 * E[gg - 1][rr - 1]) /
                        denom;
        }
        E[gg][0] = 1.0 / q1 + q2 * E[gg - 1][0] + eps2 * E[gg][1];
    }
    return E[g][r];
}

double gain(double scheme_latency, double rlnc_latency) {
    if (rlnc_latency <= 0.0)
        throw Error(Errc::DivisionByZero, "RLNC latency must be positive");
    return scheme_latency / rlnc_latency;
}

} // namespace ncaas
