#pragma once

#include <cstdint>
#include <string>

#include "ncaas/codec.hpp"

namespace ncaas::node {

enum class Role { Encode, Recode, Decode };

struct NodeConfig {
    Role role = Role::Recode;
    std::string listen;  // host:port, recode/decode
    std::string forward; // host:port, encode/recode
    std::string in_path;  // encode: raw payload source
    std::string out_path; // decode: recovered payload sink ("-" = stdout)
    CodingParams params{};
    double loss = 0.0; // i.i.d. drop probability on outgoing datagrams
    uint64_t seed = 1;
    unsigned pace_us = 200;        // gap between sent datagrams (encode)
    unsigned trailer_repeats = 20; // end-of-stream datagram copies
    double max_wait_s = 30.0;      // decode: give up after this long
};

/// Runs one chain role until it finishes (encode: input sent,
/// decode: payload recovered or timeout) or a termination signal
/// arrives. Returns the process exit code.
int run_node(const NodeConfig& cfg);

} // namespace ncaas::node
