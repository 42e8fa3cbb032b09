#include "node.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "ncaas/framing.hpp"
#include "ncaas/ncap.hpp"
#include "ncaas/random.hpp"

namespace ncaas::node {

namespace {

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

struct Stats {
    uint64_t in = 0;
    uint64_t out = 0;
    uint64_t innovative = 0;
    uint64_t malformed = 0;
    uint64_t dropped = 0;
};

void print_stats(const char* role, const Stats& s) {
    std::cerr << role << ": packets_in=" << s.in << " packets_out=" << s.out
              << " innovative=" << s.innovative << " malformed=" << s.malformed
              << " dropped=" << s.dropped << '\n';
}

sockaddr_in resolve(const std::string& hostport) {
    const auto colon = hostport.rfind(':');
    if (colon == std::string::npos)
        throw Error(Errc::DomainError, "address must be host:port, got '" + hostport + "'");
    const std::string host = hostport.substr(0, colon);
    const std::string port = hostport.substr(colon + 1);

    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_DGRAM;
    addrinfo* res = nullptr;
    if (getaddrinfo(host.c_str(), port.c_str(), &hints, &res) != 0 || !res)
        throw Error(Errc::DomainError, "cannot resolve '" + hostport + "'");
    sockaddr_in addr{};
    std::memcpy(&addr, res->ai_addr, sizeof(addr));
    freeaddrinfo(res);
    return addr;
}

class UdpSocket {
public:
    UdpSocket() : fd_(::socket(AF_INET, SOCK_DGRAM, 0)) {
        if (fd_ < 0) throw Error(Errc::DomainError, "socket() failed");
        const int buf = 4 << 20;
        ::setsockopt(fd_, SOL_SOCKET, SO_RCVBUF, &buf, sizeof(buf));
    }
    ~UdpSocket() { ::close(fd_); }
    UdpSocket(const UdpSocket&) = delete;
    UdpSocket& operator=(const UdpSocket&) = delete;

    void bind(const std::string& hostport) {
        const sockaddr_in addr = resolve(hostport);
        if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0)
            throw Error(Errc::DomainError, "cannot bind '" + hostport + "'");
    }

    void set_recv_timeout_ms(unsigned ms) {
        timeval tv{static_cast<time_t>(ms / 1000),
                   static_cast<suseconds_t>(ms % 1000 * 1000)};
        ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
    }

    void send_to(std::span<const uint8_t> data, const sockaddr_in& dest) {
        ::sendto(fd_, data.data(), data.size(), 0,
                 reinterpret_cast<const sockaddr*>(&dest), sizeof(dest));
    }

    /// Returns the datagram, or empty on timeout.
    std::vector<uint8_t> recv() {
        std::vector<uint8_t> buf(65536);
        const ssize_t n = ::recv(fd_, buf.data(), buf.size(), 0);
        if (n <= 0) return {};
        buf.resize(static_cast<size_t>(n));
        return buf;
    }

private:
    int fd_;
};

class LossInjector {
public:
    LossInjector(double p, uint64_t seed) : p_(p), rng_(seed) {}
    bool drop() { return p_ > 0.0 && rng_.bernoulli(p_); }

private:
    double p_;
    SplitMix64 rng_;
};

int run_encode(const NodeConfig& cfg) {
    std::ifstream in(cfg.in_path, std::ios::binary);
    if (!in) throw Error(Errc::DomainError, "cannot open input '" + cfg.in_path + "'");
    std::vector<uint8_t> payload(std::istreambuf_iterator<char>(in), {});

    UdpSocket sock;
    const sockaddr_in dest = resolve(cfg.forward);
    SplitMix64 rng(cfg.seed);
    LossInjector loss(cfg.loss, mix_seed(cfg.seed, 0x10c));
    Stats stats;

    const auto pace = std::chrono::microseconds(cfg.pace_us);
    const size_t gen_bytes = cfg.params.generation_bytes();
    const uint64_t n_gens = (payload.size() + gen_bytes - 1) / gen_bytes;
    const auto per_gen = static_cast<unsigned>(
        std::ceil(cfg.params.symbols * (1.0 + cfg.params.extra)));

    for (uint64_t id = 0; id < n_gens && !g_stop; ++id) {
        Generation gen;
        gen.id = static_cast<uint32_t>(id);
        const size_t off = id * gen_bytes;
        const size_t take = std::min(gen_bytes, payload.size() - off);
        gen.data.assign(payload.begin() + off, payload.begin() + off + take);
        gen.data.resize(gen_bytes, 0);

        auto enc = CoderState::encoder(gen, cfg.params);
        auto tracker = CoderState::decoder(gen.id, cfg.params);
        for (unsigned k = 0; k < per_gen && !g_stop; ++k) {
            const auto frame = framing::serialize(emit_innovative(enc, tracker, rng));
            if (loss.drop()) {
                ++stats.dropped;
            } else {
                sock.send_to(frame, dest);
                ++stats.out;
            }
            std::this_thread::sleep_for(pace);
        }
    }

    const auto trailer = ncap::make_trailer(payload.size());
    for (unsigned k = 0; k < cfg.trailer_repeats && !g_stop; ++k) {
        if (loss.drop()) {
            ++stats.dropped;
        } else {
            sock.send_to(trailer, dest);
            ++stats.out;
        }
        std::this_thread::sleep_for(pace);
    }
    print_stats("encode", stats);
    return 0;
}

int run_recode(const NodeConfig& cfg) {
    UdpSocket sock;
    sock.bind(cfg.listen);
    sock.set_recv_timeout_ms(100);
    const sockaddr_in dest = resolve(cfg.forward);
    SplitMix64 rng(cfg.seed);
    LossInjector loss(cfg.loss, mix_seed(cfg.seed, 0x10c));
    Stats stats;

    struct GenPair {
        CoderState state;
        CoderState sent; // tracker for already-forwarded rank
    };
    std::map<uint32_t, GenPair> gens;
    while (!g_stop) {
        const auto datagram = sock.recv();
        if (datagram.empty()) continue;
        ++stats.in;

        if (ncap::parse_trailer(datagram)) {
            // End-of-stream marker passes through unchanged.
            if (loss.drop()) {
                ++stats.dropped;
            } else {
                sock.send_to(datagram, dest);
                ++stats.out;
            }
            continue;
        }

        CodedPacket pkt;
        try {
            pkt = framing::deserialize(datagram);
        } catch (const Error& e) {
            ++stats.malformed;
            std::cerr << "recode: skipping datagram (" << e.what() << ")\n";
            continue;
        }

        auto it = gens.find(pkt.generation_id);
        if (it == gens.end())
            it = gens.emplace(pkt.generation_id,
                              GenPair{CoderState::recoder(pkt.generation_id, pkt.params),
                                      CoderState::decoder(pkt.generation_id, pkt.params)})
                     .first;
        if (it->second.state.consume(pkt)) ++stats.innovative;

        // The tracker mirrors what was already forwarded; recoded
        // packets always carry fresh information while any is left,
        // otherwise a lossless chain could strand the decoder.
        const auto frame =
            framing::serialize(emit_innovative(it->second.state, it->second.sent, rng));
        if (loss.drop()) {
            ++stats.dropped;
        } else {
            sock.send_to(frame, dest);
            ++stats.out;
        }
    }
    print_stats("recode", stats);
    return 0;
}

int run_decode(const NodeConfig& cfg) {
    UdpSocket sock;
    sock.bind(cfg.listen);
    sock.set_recv_timeout_ms(100);
    Stats stats;

    std::map<uint32_t, CoderState> gens;
    std::optional<CodingParams> params;
    std::optional<uint64_t> total_length;
    const auto deadline =
        std::chrono::steady_clock::now() +
        std::chrono::milliseconds(static_cast<long>(cfg.max_wait_s * 1000));

    auto done = [&] {
        if (!total_length) return false;
        if (*total_length == 0) return true;
        if (!params) return false;
        const size_t gen_bytes = params->generation_bytes();
        const uint64_t n_gens = (*total_length + gen_bytes - 1) / gen_bytes;
        for (uint64_t id = 0; id < n_gens; ++id) {
            const auto it = gens.find(static_cast<uint32_t>(id));
            if (it == gens.end() || !it->second.complete()) return false;
        }
        return true;
    };

    while (!g_stop && std::chrono::steady_clock::now() < deadline) {
        const auto datagram = sock.recv();
        if (datagram.empty()) {
            if (done()) break;
            continue;
        }
        ++stats.in;

        if (const auto len = ncap::parse_trailer(datagram)) {
            total_length = *len;
            if (done()) break;
            continue;
        }

        CodedPacket pkt;
        try {
            pkt = framing::deserialize(datagram);
        } catch (const Error& e) {
            ++stats.malformed;
            std::cerr << "decode: skipping datagram (" << e.what() << ")\n";
            continue;
        }
        if (!params) params = pkt.params;

        auto it = gens.find(pkt.generation_id);
        if (it == gens.end())
            it = gens.emplace(pkt.generation_id,
                              CoderState::decoder(pkt.generation_id, pkt.params))
                     .first;
        if (it->second.consume(pkt)) ++stats.innovative;
        if (done()) break;
    }

    if (!done()) {
        print_stats("decode", stats);
        std::cerr << "decode: payload not recovered\n";
        return 1;
    }

    std::ofstream file_out;
    std::ostream* out = &std::cout;
    if (cfg.out_path != "-") {
        file_out.open(cfg.out_path, std::ios::binary);
        if (!file_out)
            throw Error(Errc::DomainError, "cannot open output '" + cfg.out_path + "'");
        out = &file_out;
    }
    const uint64_t n_gens =
        *total_length == 0
            ? 0
            : (*total_length + params->generation_bytes() - 1) / params->generation_bytes();
    uint64_t written = 0;
    for (uint64_t id = 0; id < n_gens; ++id) {
        Generation gen = gens.at(static_cast<uint32_t>(id)).extract();
        const uint64_t take = std::min<uint64_t>(gen.data.size(), *total_length - written);
        out->write(reinterpret_cast<const char*>(gen.data.data()),
                   static_cast<std::streamsize>(take));
        written += take;
    }
    out->flush();
    print_stats("decode", stats);
    return 0;
}

} // namespace

int run_node(const NodeConfig& cfg) {
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    switch (cfg.role) {
    case Role::Encode: return run_encode(cfg);
    case Role::Recode: return run_recode(cfg);
    default: return run_decode(cfg);
    }
}

} // namespace ncaas::node
