#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncaas/analytic.hpp"
#include "ncaas/ncap.hpp"
#include "ncaas/simulator.hpp"
#include "ncaas/sweep.hpp"
#include "node.hpp"

namespace {

using namespace ncaas;

gf::FieldSpec field_from_flag(unsigned gf_size) {
    if (gf_size == 8)
        throw Error(Errc::DomainError,
                    "gf_size 8 is not supported; did you mean 2^8 = 256?");
    return gf::FieldSpec::of(gf_size);
}

struct AnalyticArgs {
    unsigned g = 64;
    unsigned hops = 3;
    std::vector<double> eps;
    unsigned size = 250;
    double rate = 1e6;
    double tau_l = 0.0;
    std::string scheme; // empty = all
    bool csv = false;
};

int cmd_analytic(const AnalyticArgs& a) {
    if (a.eps.size() != a.hops)
        throw CLI::ValidationError("--eps needs exactly --hops values, got " +
                                   std::to_string(a.eps.size()));
    ChannelModel ch{a.eps, inter_packet_time(a.size, a.rate), a.tau_l};
    ch.validate();

    const SchemeId all[] = {SchemeId::E2E, SchemeId::HbH, SchemeId::RLNC};
    const double rlnc = latency_rlnc(a.g, ch);

    if (a.csv) {
        std::cout << "scheme,packets,latency_s,gain_vs_rlnc\n";
    } else {
        std::printf("%-6s %14s %14s %10s\n", "scheme", "packets", "latency_s", "gain");
    }
    for (SchemeId s : all) {
        if (!a.scheme.empty() && parse_scheme(a.scheme) != s) continue;
        const double p = theory_packets(s, a.g, ch);
        const double d = theory_latency(s, a.g, ch);
        if (a.csv)
            std::printf("%s,%.9g,%.9g,%.9g\n", scheme_name(s), p, d, gain(d, rlnc));
        else
            std::printf("%-6s %14.4f %14.6f %10.4f\n", scheme_name(s), p, d, gain(d, rlnc));
    }
    if (a.hops == 2 && a.scheme.empty()) {
        const double slots = expected_slots_two_hop(a.g, 0, a.eps[0], a.eps[1]);
        const double latency = slots * ch.inter_packet_time + 2 * ch.link_delay;
        if (a.csv)
            std::printf("RLNC-recursive,%.9g,%.9g,%.9g\n", packets_hbh(a.g, ch), latency,
                        gain(latency, rlnc));
        else
            std::printf("%-6s %14.4f %14.6f %10.4f  (two-hop recursion)\n", "RLNC*",
                        packets_hbh(a.g, ch), latency, gain(latency, rlnc));
    }
    return 0;
}

struct SweepArgs {
    std::string preset;
    std::vector<double> eps{0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<unsigned> sizes{250};
    std::vector<unsigned> gens{64};
    std::vector<unsigned> hops{3};
    std::vector<double> rates{0.25e6};
    double tau_l = 0.0;
    std::string fidelity = "dof";
    unsigned gf_size = 256;
    unsigned runs = 100;
    uint64_t seed = 1;
    std::string out = "-";
};

int cmd_sweep(const SweepArgs& a) {
    SweepGrid grid;
    if (!a.preset.empty()) {
        grid = preset_grid(a.preset);
    } else {
        grid.eps = a.eps;
        grid.packet_bytes = a.sizes;
        grid.generation_sizes = a.gens;
        grid.hops = a.hops;
        grid.rates_bps = a.rates;
    }
    grid.link_delay = a.tau_l;
    grid.fidelity = a.fidelity == "exact" ? Fidelity::EXACT : Fidelity::DOF;
    grid.field = field_from_flag(a.gf_size);

    const auto rows = sweep(grid, a.runs, a.seed);
    if (a.out == "-") {
        write_csv(std::cout, rows);
    } else {
        std::ofstream f(a.out, std::ios::binary);
        if (!f) throw Error(Errc::DomainError, "cannot open output '" + a.out + "'");
        write_csv(f, rows);
    }
    return 0;
}

struct CodeArgs {
    std::string mode;
    std::string in_path;
    std::string out_path;
    unsigned symbols = 16;
    unsigned symbol_size = 250;
    unsigned gf_size = 256;
    double extra = 0.0;
    uint64_t seed = 1;
};

int cmd_code(const CodeArgs& a) {
    std::ifstream in(a.in_path, std::ios::binary);
    if (!in) throw Error(Errc::DomainError, "cannot open input '" + a.in_path + "'");
    std::ofstream out(a.out_path, std::ios::binary);
    if (!out) throw Error(Errc::DomainError, "cannot open output '" + a.out_path + "'");

    if (a.mode == "encode") {
        CodingParams p;
        p.symbols = static_cast<uint16_t>(a.symbols);
        p.symbol_size = static_cast<uint16_t>(a.symbol_size);
        p.field = field_from_flag(a.gf_size);
        p.extra = a.extra;
        ncap::encode_file(in, out, p, a.seed);
    } else if (a.mode == "recode") {
        ncap::recode_file(in, out, a.seed);
    } else {
        ncap::decode_file(in, out);
    }
    return 0;
}

uint64_t default_seed() {
    if (const char* env = std::getenv("NCAAS_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RLNC multi-hop coding toolkit: closed-form latency/packet models, "
                 "slot-based simulation of E2E/HbH/RLNC forwarding, capture-file "
                 "coding and a UDP encoder/recoder/decoder chain."};
    app.require_subcommand(1);
    app.set_config("--config")->description("flat key=value config file, '#' comments");

    const uint64_t env_seed = default_seed();

    AnalyticArgs an;
    auto* analytic = app.add_subcommand("analytic", "Evaluate the closed-form models");
    analytic->add_option("--g", an.g, "generation size")->check(CLI::PositiveNumber);
    analytic->add_option("--hops", an.hops, "number of links")->check(CLI::PositiveNumber);
    analytic->add_option("--eps", an.eps, "per-link loss probabilities (comma separated)")
        ->required()
        ->delimiter(',');
    analytic->add_option("--size", an.size, "payload size L in bytes");
    analytic->add_option("--rate", an.rate, "channel rate in bit/s");
    analytic->add_option("--tau-l", an.tau_l, "per-link delay in seconds");
    analytic->add_option("--scheme", an.scheme, "restrict to one scheme (E2E|HbH|RLNC)");
    analytic->add_flag("--csv", an.csv, "machine-readable output");

    SweepArgs sw;
    sw.seed = env_seed;
    auto* sweep_cmd = app.add_subcommand("sweep", "Simulate a parameter grid to CSV");
    sweep_cmd->add_option("--preset", sw.preset,
                          "fig3|fig4|fig5|fig6|fig7|fig8|table1");
    sweep_cmd->add_option("--eps", sw.eps, "loss values")->delimiter(',');
    sweep_cmd->add_option("--sizes", sw.sizes, "payload sizes in bytes")->delimiter(',');
    sweep_cmd->add_option("--g", sw.gens, "generation sizes")->delimiter(',');
    sweep_cmd->add_option("--hops", sw.hops, "hop counts")->delimiter(',');
    sweep_cmd->add_option("--rates", sw.rates, "channel rates in bit/s")->delimiter(',');
    sweep_cmd->add_option("--tau-l", sw.tau_l, "per-link delay in seconds");
    sweep_cmd->add_option("--fidelity", sw.fidelity, "dof|exact")
        ->check(CLI::IsMember({"dof", "exact"}));
    sweep_cmd->add_option("--gf", sw.gf_size, "field size for exact fidelity");
    sweep_cmd->add_option("--runs", sw.runs, "runs per point")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sw.seed, "master seed (default $NCAAS_SEED)");
    sweep_cmd->add_option("--out", sw.out, "output CSV path, '-' for stdout");

    CodeArgs co;
    co.seed = env_seed;
    auto* code = app.add_subcommand("code", "Encode/recode/decode capture files");
    code->add_option("--mode", co.mode, "encode|recode|decode")
        ->required()
        ->check(CLI::IsMember({"encode", "recode", "decode"}));
    code->add_option("--in", co.in_path, "input path")->required();
    code->add_option("--out", co.out_path, "output path")->required();
    code->add_option("--symbols", co.symbols, "generation size g");
    code->add_option("--symbol-size", co.symbol_size, "bytes per symbol");
    code->add_option("--gf", co.gf_size, "field size (2|16|256)");
    code->add_option("--extra", co.extra, "redundancy ratio >= 0");
    code->add_option("--seed", co.seed, "coding seed (default $NCAAS_SEED)");

    node::NodeConfig nc;
    nc.seed = env_seed;
    std::string role_str;
    unsigned nsymbols = 16, nsymbol_size = 250, ngf = 256;
    double nextra = 0.0;
    auto* node_cmd = app.add_subcommand("node", "Run one UDP chain role");
    node_cmd->add_option("--role", role_str, "encode|recode|decode")
        ->required()
        ->check(CLI::IsMember({"encode", "recode", "decode"}));
    node_cmd->add_option("--listen", nc.listen, "host:port to receive on");
    node_cmd->add_option("--forward", nc.forward, "host:port to send to");
    node_cmd->add_option("--in", nc.in_path, "payload file (encode role)");
    node_cmd->add_option("--out", nc.out_path, "recovered payload path, '-' for stdout");
    node_cmd->add_option("--symbols", nsymbols, "generation size g");
    node_cmd->add_option("--symbol-size", nsymbol_size, "bytes per symbol");
    node_cmd->add_option("--gf", ngf, "field size (2|16|256)");
    node_cmd->add_option("--extra", nextra, "redundancy ratio >= 0");
    node_cmd->add_option("--loss", nc.loss, "drop probability for outgoing datagrams")
        ->check(CLI::Range(0.0, 1.0));
    node_cmd->add_option("--seed", nc.seed, "coding/loss seed (default $NCAAS_SEED)");
    node_cmd->add_option("--pace-us", nc.pace_us, "delay between sent datagrams");
    node_cmd->add_option("--trailer-repeats", nc.trailer_repeats,
                         "end-of-stream datagram copies");
    node_cmd->add_option("--max-wait", nc.max_wait_s, "decode: timeout in seconds");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analytic) return cmd_analytic(an);
        if (*sweep_cmd) return cmd_sweep(sw);
        if (*code) return cmd_code(co);
        if (*node_cmd) {
            nc.role = role_str == "encode"   ? node::Role::Encode
                      : role_str == "recode" ? node::Role::Recode
                                             : node::Role::Decode;
            nc.params.symbols = static_cast<uint16_t>(nsymbols);
            nc.params.symbol_size = static_cast<uint16_t>(nsymbol_size);
            nc.params.field = field_from_flag(ngf);
            nc.params.extra = nextra;
            nc.params.validate();
            if (nc.role == node::Role::Encode && nc.in_path.empty())
                throw CLI::ValidationError("encode role requires --in");
            if (nc.role == node::Role::Decode && nc.out_path.empty())
                throw CLI::ValidationError("decode role requires --out");
            if (nc.role != node::Role::Decode && nc.forward.empty())
                throw CLI::ValidationError("this role requires --forward");
            if (nc.role != node::Role::Encode && nc.listen.empty())
                throw CLI::ValidationError("this role requires --listen");
            return node::run_node(nc);
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
