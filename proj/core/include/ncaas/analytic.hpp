#pragma once

#include <string>
#include <vector>

#include "ncaas/errors.hpp"

namespace ncaas {

/// An H-hop erasure channel: one loss probability per link, the
/// inter-packet time tau_P and a per-link forwarding delay tau_L.
struct ChannelModel {
    std::vector<double> loss;  // eps_1 .. eps_H, each in [0, 1)
    double inter_packet_time;  // tau_P, seconds
    double link_delay = 0.0;   // tau_L, seconds

    size_t hops() const { return loss.size(); }
    void validate() const;

    static ChannelModel uniform(double eps, size_t hops, double tau_p, double tau_l = 0.0);
};

/// tau_P from payload size and channel rate. Uses the payload bytes
/// only; frame overhead is excluded so the values line up with the
/// closed-form latency curves.
double inter_packet_time(unsigned payload_bytes, double rate_bps);

enum class SchemeId { E2E, HbH, RLNC };

const char* scheme_name(SchemeId s);
SchemeId parse_scheme(const std::string& name);

// Expected packet counts over the whole channel until the sink decodes.
double packets_e2e(unsigned generation_size, const ChannelModel& ch);
double packets_hbh(unsigned generation_size, const ChannelModel& ch); // also RLNC's count

// Expected latencies.
double latency_e2e(unsigned generation_size, const ChannelModel& ch);
double latency_hbh(unsigned generation_size, const ChannelModel& ch);
double latency_rlnc(unsigned generation_size, const ChannelModel& ch);

double theory_packets(SchemeId s, unsigned generation_size, const ChannelModel& ch);
double theory_latency(SchemeId s, unsigned generation_size, const ChannelModel& ch);

/// Expected slots for the two-hop encoder/recoder/decoder chain to
/// deliver the remaining g packets when the recoder holds a surplus of
/// r linearly independent packets. Memoized over the (g+1)^2 states.
double expected_slots_two_hop(unsigned g, unsigned r, double eps1, double eps2);

/// Latency ratio of a scheme against RLNC.
double gain(double scheme_latency, double rlnc_latency);

} // namespace ncaas
