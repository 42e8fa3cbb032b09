#include "ncaas/ncap.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>

#include "ncaas/random.hpp"

namespace ncaas::ncap {

namespace {

constexpr size_t kMaxFrame = 1 << 20;

void put_u32be(std::ostream& out, uint32_t v) {
    const uint8_t b[4] = {static_cast<uint8_t>(v >> 24), static_cast<uint8_t>(v >> 16),
                          static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64be(std::ostream& out, uint64_t v) {
    for (int i = 7; i >= 0; --i)
        out.put(static_cast<char>(v >> (8 * i)));
}

uint64_t read_be(std::istream& in, size_t n) {
    uint64_t v = 0;
    for (size_t i = 0; i < n; ++i) {
        const int c = in.get();
        if (c == EOF) throw Error(Errc::Truncated, "unexpected end of capture");
        v = v << 8 | static_cast<uint8_t>(c);
    }
    return v;
}

unsigned frames_per_generation(const CodingParams& p) {
    return static_cast<unsigned>(std::ceil(p.symbols * (1.0 + p.extra)));
}

} // namespace

void write_magic(std::ostream& out) {
    out.write(reinterpret_cast<const char*>(kMagic.data()), kMagic.size());
}

void read_magic(std::istream& in) {
    std::array<uint8_t, 8> buf{};
    in.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (in.gcount() != static_cast<std::streamsize>(buf.size()) || buf != kMagic)
        throw Error(Errc::BadMagic, "not an ncap capture");
}

void write_frame(std::ostream& out, std::span<const uint8_t> frame) {
    put_u32be(out, static_cast<uint32_t>(frame.size()));
    out.write(reinterpret_cast<const char*>(frame.data()),
              static_cast<std::streamsize>(frame.size()));
}

std::optional<std::vector<uint8_t>> read_record(std::istream& in,
                                                uint64_t& original_length) {
    const uint32_t len = static_cast<uint32_t>(read_be(in, 4));
    if (len == 0) {
        original_length = read_be(in, 8);
        return std::nullopt;
    }
    if (len > kMaxFrame)
        throw Error(Errc::LengthMismatch, "frame record of " + std::to_string(len) +
                                              " bytes exceeds the limit");
    std::vector<uint8_t> frame(len);
    in.read(reinterpret_cast<char*>(frame.data()), len);
    if (in.gcount() != static_cast<std::streamsize>(len))
        throw Error(Errc::Truncated, "frame record cut short");
    return frame;
}

std::vector<uint8_t> make_trailer(uint64_t original_length) {
    std::vector<uint8_t> out(12, 0);
    for (int i = 0; i < 8; ++i)
        out[4 + i] = static_cast<uint8_t>(original_length >> (8 * (7 - i)));
    return out;
}

std::optional<uint64_t> parse_trailer(std::span<const uint8_t> bytes) {
    if (bytes.size() != 12) return std::nullopt;
    if (bytes[0] || bytes[1] || bytes[2] || bytes[3]) return std::nullopt;
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | bytes[4 + i];
    return v;
}

void encode_file(std::istream& raw, std::ostream& out, const CodingParams& params,
                 uint64_t seed) {
    params.validate();
    std::vector<uint8_t> payload(std::istreambuf_iterator<char>(raw), {});

    write_magic(out);
    SplitMix64 rng(seed);
    const size_t gen_bytes = params.generation_bytes();
    const uint64_t n_gens = (payload.size() + gen_bytes - 1) / gen_bytes;
    const unsigned per_gen = frames_per_generation(params);

    for (uint64_t id = 0; id < n_gens; ++id) {
        Generation gen;
        gen.id = static_cast<uint32_t>(id);
        const size_t off = id * gen_bytes;
        const size_t take = std::min(gen_bytes, payload.size() - off);
        gen.data.assign(payload.begin() + off, payload.begin() + off + take);
        gen.data.resize(gen_bytes, 0);

        auto enc = CoderState::encoder(gen, params);
        // The tracker keeps the first g frames linearly independent, so
        // a lossless path decodes even with extra = 0.
        auto tracker = CoderState::decoder(gen.id, params);
        for (unsigned k = 0; k < per_gen; ++k)
            write_frame(out, framing::serialize(emit_innovative(enc, tracker, rng)));
    }
    write_frame(out, {}); // length 0 opens the trailer
    put_u64be(out, payload.size());
}

void recode_file(std::istream& in, std::ostream& out, uint64_t seed) {
    read_magic(in);
    SplitMix64 rng(seed);

    struct GenInfo {
        CoderState state;
        unsigned frames = 0;
    };
    std::map<uint32_t, GenInfo> gens; // keyed by generation id, ascending
    uint64_t original_length = 0;
    bool saw_trailer = false;
    while (!saw_trailer) {
        auto frame = read_record(in, original_length);
        if (!frame) {
            saw_trailer = true;
            break;
        }
        CodedPacket pkt = framing::deserialize(*frame);
        auto it = gens.find(pkt.generation_id);
        if (it == gens.end())
            it = gens.emplace(pkt.generation_id,
                              GenInfo{CoderState::recoder(pkt.generation_id, pkt.params), 0})
                     .first;
        it->second.state.consume(pkt);
        ++it->second.frames;
    }

    write_magic(out);
    for (auto& [id, info] : gens) {
        if (info.state.rank() == 0) continue;
        auto tracker = CoderState::decoder(id, info.state.params());
        for (unsigned k = 0; k < info.frames; ++k)
            write_frame(out, framing::serialize(emit_innovative(info.state, tracker, rng)));
    }
    write_frame(out, {});
    put_u64be(out, original_length);
}

void decode_file(std::istream& in, std::ostream& raw_out) {
    read_magic(in);

    std::map<uint32_t, CoderState> gens;
    std::optional<CodingParams> params;
    uint64_t original_length = 0;
    while (true) {
        auto frame = read_record(in, original_length);
        if (!frame) break;
        CodedPacket pkt = framing::deserialize(*frame);
        if (!params) params = pkt.params;
        auto it = gens.find(pkt.generation_id);
        if (it == gens.end())
            it = gens.emplace(pkt.generation_id,
                              CoderState::decoder(pkt.generation_id, pkt.params))
                     .first;
        it->second.consume(pkt);
    }

    if (original_length == 0) return;
    if (!params)
        throw Error(Errc::Incomplete, "capture holds no frames but claims payload");

    const size_t gen_bytes = params->generation_bytes();
    const uint64_t n_gens = (original_length + gen_bytes - 1) / gen_bytes;
    uint64_t written = 0;
    for (uint64_t id = 0; id < n_gens; ++id) {
        const auto it = gens.find(static_cast<uint32_t>(id));
        if (it == gens.end())
            throw Error(Errc::Incomplete,
                        "generation " + std::to_string(id) + " missing from capture");
        Generation gen = it->second.extract(); // throws Incomplete on low rank
        const uint64_t take =
            std::min<uint64_t>(gen.data.size(), original_length - written);
        raw_out.write(reinterpret_cast<const char*>(gen.data.data()),
                      static_cast<std::streamsize>(take));
        written += take;
    }
}

} // namespace ncaas::ncap
