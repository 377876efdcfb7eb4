#include "lsbseq/seq.hpp"

#include <bit>
#include <cstring>

#include <json.hpp>

namespace lsbseq {

namespace {

constexpr char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<uint8_t>& in) {
    std::string out;
    out.reserve((in.size() + 2) / 3 * 4);
    for (size_t i = 0; i < in.size(); i += 3) {
        uint32_t v = in[i] << 16;
        if (i + 1 < in.size()) v |= in[i + 1] << 8;
        if (i + 2 < in.size()) v |= in[i + 2];
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back(i + 1 < in.size() ? kB64Alphabet[(v >> 6) & 63] : '=');
        out.push_back(i + 2 < in.size() ? kB64Alphabet[v & 63] : '=');
    }
    return out;
}

std::vector<uint8_t> base64_decode(const std::string& in) {
    auto val = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    std::vector<uint8_t> out;
    uint32_t buf = 0;
    int bits = 0;
    for (char c : in) {
        int v = val(c);
        if (v < 0) continue;  // padding / whitespace
        buf = (buf << 6) | v;
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<uint8_t>((buf >> bits) & 0xff));
        }
    }
    return out;
}

const char* provenance_tag(Provenance p) {
    switch (p) {
        case Provenance::lsb: return "lsb";
        case Provenance::bit_component: return "bit-component";
        case Provenance::b_seq: return "b-seq";
        default: return "external";
    }
}

Provenance provenance_from_tag(const std::string& s) {
    if (s == "lsb") return Provenance::lsb;
    if (s == "bit-component") return Provenance::bit_component;
    if (s == "b-seq") return Provenance::b_seq;
    return Provenance::external;
}

}  // namespace

BinarySequence::BinarySequence(uint64_t n_bits, Provenance prov)
    : provenance(prov), n_bits_(n_bits), words_((n_bits + 63) / 64, 0) {}

BinarySequence BinarySequence::from_bits(const std::vector<uint8_t>& bits, Provenance prov) {
    BinarySequence s(bits.size(), prov);
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) s.set(i, true);
    return s;
}

void BinarySequence::set(uint64_t i, bool v) {
    uint64_t mask = uint64_t(1) << (i & 63);
    if (v)
        words_[i >> 6] |= mask;
    else
        words_[i >> 6] &= ~mask;
}

uint64_t BinarySequence::weight() const {
    uint64_t w = 0;
    for (uint64_t word : words_) w += std::popcount(word);
    return w;
}

std::vector<uint8_t> BinarySequence::unpacked() const {
    std::vector<uint8_t> out(n_bits_);
    for (uint64_t i = 0; i < n_bits_; ++i) out[i] = get(i);
    return out;
}

PArySequence m_sequence(const FieldContext& ctx, uint64_t max_period) {
    if (ctx.order > max_period)
        throw resource_limit_error("m_sequence: period exceeds the configured cap");
    if (ctx.p >= 256) throw std::invalid_argument("m_sequence: p must be below 256");
    PArySequence seq;
    seq.p = ctx.p;
    seq.values.resize(ctx.order);

    const auto mp = ctx.alpha_min_poly();
    const unsigned n = ctx.n;
    const uint64_t p = ctx.p;

    // a_t = Tr(alpha^t): seed the first n terms directly, then run the
    // recurrence a_{t+n} = -sum_i mp[i] a_{t+i}.
    ExtFieldElement pw = ctx.one();
    for (unsigned t = 0; t < n && t < ctx.order; ++t) {
        seq.values[t] = static_cast<uint8_t>(ctx.trace(pw));
        pw = ctx.mul(pw, ctx.alpha);
    }
    std::vector<uint64_t> neg(n);
    for (unsigned i = 0; i < n; ++i) neg[i] = (p - mp[i] % p) % p;
    for (uint64_t t = n; t < ctx.order; ++t) {
        uint64_t acc = 0;
        for (unsigned i = 0; i < n; ++i) acc += neg[i] * seq.values[t - n + i];
        seq.values[t] = static_cast<uint8_t>(acc % p);
    }
    return seq;
}

unsigned bits_per_symbol(uint64_t p) {
    unsigned k = 0;
    while ((uint64_t(1) << k) < p) ++k;
    return k == 0 ? 1 : k;
}

BinarySequence bit_component(const PArySequence& seq, unsigned i, bool zero_as_p) {
    unsigned k = bits_per_symbol(seq.p);
    if (i < 1 || i > k) throw std::invalid_argument("bit_component: index out of [1, ceil(log2 p)]");
    BinarySequence out(seq.period(), i == 1 ? Provenance::lsb : Provenance::bit_component);
    out.component_index = static_cast<int>(i);
    out.p = seq.p;
    for (uint64_t t = 0; t < seq.period(); ++t) {
        uint64_t v = seq.values[t];
        if (v == 0 && zero_as_p) v = seq.p;
        out.set(t, (v >> (i - 1)) & 1);
    }
    return out;
}

BinarySequence lsb_sequence(const PArySequence& seq) {
    BinarySequence out = bit_component(seq, 1);
    out.provenance = Provenance::lsb;
    return out;
}

BinarySequence b_sequence(uint64_t p, uint64_t beta) {
    if (!nt::is_primitive_root(beta, p))
        throw std::invalid_argument("b_sequence: beta is not a primitive root mod p");
    BinarySequence out(p - 1, Provenance::b_seq);
    out.p = p;
    out.beta = beta % p;
    uint64_t cur = 1;
    for (uint64_t j = 0; j < p - 1; ++j) {
        out.set(j, cur & 1);
        cur = nt::mul_mod(cur, beta, p);
    }
    return out;
}

BinarySequence cyclic_shift(const BinarySequence& seq, uint64_t tau) {
    uint64_t N = seq.period();
    BinarySequence out(N, seq.provenance);
    out.component_index = seq.component_index;
    out.p = seq.p;
    out.n = seq.n;
    out.beta = seq.beta;
    if (N == 0) return out;
    tau %= N;
    for (uint64_t t = 0; t < N; ++t) out.set(t, seq.get((t + tau) % N));
    return out;
}

std::optional<uint64_t> shift_offset(const BinarySequence& a, const BinarySequence& b) {
    if (a.period() != b.period()) throw std::invalid_argument("shift_offset: unequal periods");
    uint64_t N = a.period();
    if (N == 0) return 0;
    // KMP: find b in a+a; match at position tau means a[(t+tau) mod N] == b[t].
    std::vector<uint8_t> pat = b.unpacked();
    std::vector<uint64_t> fail(N, 0);
    for (uint64_t i = 1; i < N; ++i) {
        uint64_t j = fail[i - 1];
        while (j && pat[i] != pat[j]) j = fail[j - 1];
        fail[i] = (pat[i] == pat[j]) ? j + 1 : 0;
    }
    uint64_t j = 0;
    for (uint64_t i = 0; i < 2 * N - 1; ++i) {
        uint8_t c = a.get(i % N);
        while (j && c != pat[j]) j = fail[j - 1];
        if (c == pat[j]) ++j;
        if (j == N) return i + 1 - N;
    }
    return std::nullopt;
}

std::vector<uint8_t> to_raw_bytes(const BinarySequence& seq) {
    std::vector<uint8_t> out((seq.period() + 7) / 8, 0);
    const auto& words = seq.words();
    for (size_t i = 0; i < out.size(); ++i) out[i] = static_cast<uint8_t>(words[i / 8] >> (8 * (i % 8)));
    return out;
}

BinarySequence from_raw_bytes(const std::vector<uint8_t>& bytes, uint64_t n_bits) {
    if (bytes.size() < (n_bits + 7) / 8) throw std::invalid_argument("from_raw_bytes: too few bytes");
    BinarySequence out(n_bits, Provenance::external);
    for (uint64_t i = 0; i < n_bits; ++i)
        if ((bytes[i / 8] >> (i % 8)) & 1) out.set(i, true);
    return out;
}

std::string to_json(const BinarySequence& seq) {
    nlohmann::ordered_json j;
    if (seq.p)
        j["p"] = seq.p;
    else
        j["p"] = nullptr;
    if (seq.n)
        j["n"] = seq.n;
    else
        j["n"] = "external";
    j["N"] = seq.period();
    if (seq.beta)
        j["beta"] = seq.beta;
    else
        j["beta"] = nullptr;
    j["provenance"] = provenance_tag(seq.provenance);
    if (seq.provenance == Provenance::bit_component) j["component"] = seq.component_index;
    j["bits_base64"] = base64_encode(to_raw_bytes(seq));
    return j.dump();
}

BinarySequence binary_sequence_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    uint64_t N = j.at("N").get<uint64_t>();
    BinarySequence out = from_raw_bytes(base64_decode(j.at("bits_base64").get<std::string>()), N);
    if (j.contains("p") && j["p"].is_number()) out.p = j["p"].get<uint64_t>();
    if (j.contains("n") && j["n"].is_number()) out.n = j["n"].get<unsigned>();
    if (j.contains("beta") && j["beta"].is_number()) out.beta = j["beta"].get<uint64_t>();
    if (j.contains("provenance")) out.provenance = provenance_from_tag(j["provenance"].get<std::string>());
    if (j.contains("component")) out.component_index = j["component"].get<int>();
    return out;
}

}  // namespace lsbseq
