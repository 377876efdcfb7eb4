#include "lsbseq/autocorr.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace lsbseq {

namespace {

// Two copies of the sequence back to back so any rotation is a straight
// word-aligned window read.
struct DoubledBits {
    uint64_t N = 0;
    uint64_t n_words = 0;  // words covering one period
    uint64_t last_mask = ~uint64_t(0);
    std::vector<uint64_t> d;

    explicit DoubledBits(const BinarySequence& s) : N(s.period()) {
        n_words = (N + 63) / 64;
        if (N % 64) last_mask = (uint64_t(1) << (N % 64)) - 1;
        d.assign((2 * N + 63) / 64 + 1, 0);
        append(s.words(), 0);
        append(s.words(), N);
    }

    void append(const std::vector<uint64_t>& src, uint64_t off) {
        uint64_t q = off / 64, r = off % 64;
        for (uint64_t i = 0; i < n_words; ++i) {
            uint64_t w = src[i];
            if (i + 1 == n_words) w &= last_mask;
            d[q + i] |= r ? (w << r) : w;
            if (r) d[q + i + 1] |= w >> (64 - r);
        }
    }

    uint64_t disagreements(const std::vector<uint64_t>& base, uint64_t tau) const {
        uint64_t q = tau / 64, r = tau % 64;
        uint64_t count = 0;
        for (uint64_t i = 0; i < n_words; ++i) {
            uint64_t w = r ? ((d[q + i] >> r) | (d[q + i + 1] << (64 - r))) : d[q + i];
            uint64_t x = base[i] ^ w;
            if (i + 1 == n_words) x &= last_mask;
            count += std::popcount(x);
        }
        return count;
    }
};

}  // namespace

int64_t ac_at(const BinarySequence& seq, uint64_t tau) {
    uint64_t N = seq.period();
    if (N == 0) return 0;
    tau %= N;
    DoubledBits db(seq);
    uint64_t d = db.disagreements(seq.words(), tau);
    return static_cast<int64_t>(N) - 2 * static_cast<int64_t>(d);
}

AcProfile ac_profile(const BinarySequence& seq, uint64_t max_n2) {
    uint64_t N = seq.period();
    if (N > max_n2)
        throw resource_limit_error("ac_profile: period exceeds the brute-force cap; use sampled verification");
    AcProfile prof;
    prof.N = N;
    prof.method = AcMethod::brute;
    prof.values.assign(N, 0);
    if (N == 0) return prof;
    prof.values[0] = static_cast<int64_t>(N);
    DoubledBits db(seq);
    const auto& base = seq.words();

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<uint64_t>(workers, N));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (uint64_t tau = 1 + w; tau < N; tau += workers)
                prof.values[tau] =
                    static_cast<int64_t>(N) - 2 * static_cast<int64_t>(db.disagreements(base, tau));
        });
    }
    for (auto& t : pool) t.join();
    return prof;
}

uint64_t acb_index_size(uint64_t p) {
    return p % 4 == 1 ? (p - 5) / 4 : (p - 3) / 4;
}

AcbVector acb_vector(uint64_t p, uint64_t beta) {
    if (p < 3 || !nt::is_prime(p)) throw std::invalid_argument("acb_vector: p must be an odd prime");
    BinarySequence b = b_sequence(p, beta);
    AcProfile prof = ac_profile(b, std::max<uint64_t>(kDefaultBruteCap, p));
    const uint64_t half = (p - 1) / 2;

    // folding symmetries must hold exactly; a violation means an upstream bug
    for (uint64_t t = 1; t <= (p - 3) / 2; ++t)
        if (prof.at(p - 1 - t) != prof.at(t))
            throw std::logic_error("acb_vector: mirror symmetry violated");
    for (uint64_t t = 1; t < half; ++t)
        if (prof.at(half - t) != -prof.at(t))
            throw std::logic_error("acb_vector: midpoint antisymmetry violated");
    if (prof.at(half) != -static_cast<int64_t>(p - 1))
        throw std::logic_error("acb_vector: midpoint value violated");
    if (p % 4 == 1 && prof.at((p - 1) / 4) != 0)
        throw std::logic_error("acb_vector: quarter-point value violated");

    AcbVector out;
    out.p = p;
    out.beta = beta % p;
    out.acb.reserve(acb_index_size(p));
    for (uint64_t t = 1; t <= acb_index_size(p); ++t) out.acb.push_back(prof.at(t));
    return out;
}

int64_t acb_full(const AcbVector& acb, uint64_t tau_prime) {
    const uint64_t p = acb.p;
    uint64_t j = tau_prime % (p - 1);
    if (j == 0) return static_cast<int64_t>(p - 1);  // in-phase
    const uint64_t half = (p - 1) / 2;
    uint64_t j0 = std::min(j, p - 1 - j);
    if (j0 == half) return -static_cast<int64_t>(p - 1);
    if (p % 4 == 1 && j0 == (p - 1) / 4) return 0;
    if (j0 <= acb.acb.size()) return acb.acb[j0 - 1];
    uint64_t mirror = half - j0;  // lands in I
    return -acb.acb[mirror - 1];
}

namespace {

int64_t ipow(uint64_t base, unsigned e) {
    int64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= static_cast<int64_t>(base);
    return r;
}

}  // namespace

int64_t predicted_ac(const FieldContext& ctx, const AcbVector& acb, uint64_t tau) {
    if (ctx.n < 2) throw std::invalid_argument("predicted_ac: requires n >= 2");
    if (acb.p != ctx.p || acb.beta != ctx.beta)
        throw std::invalid_argument("predicted_ac: AC_b vector does not match the field context");
    tau %= ctx.order;
    if (tau == 0) return static_cast<int64_t>(ctx.order);
    if (tau % ctx.M != 0) return ipow(ctx.p, ctx.n - 2) - 1;
    return (acb_full(acb, tau / ctx.M) + 1) * ipow(ctx.p, ctx.n - 1) - 1;
}

ClosedFormReport verify_closed_form(const FieldContext& ctx, const BinarySequence& lsb,
                                    uint64_t brute_cap, uint64_t sample, uint64_t seed) {
    if (lsb.period() != ctx.order)
        throw std::invalid_argument("verify_closed_form: sequence period does not match the field");
    AcbVector acb = acb_vector(ctx.p, ctx.beta);
    ClosedFormReport rep;
    rep.N = ctx.order;
    if (ctx.order <= brute_cap) {
        AcProfile prof = ac_profile(lsb, brute_cap);
        for (uint64_t tau = 1; tau < ctx.order; ++tau) {
            if (prof.at(tau) != predicted_ac(ctx, acb, tau)) rep.mismatches.push_back(tau);
            ++rep.checked;
        }
        return rep;
    }
    rep.sampled = true;
    std::vector<uint64_t> taus;
    for (uint64_t t = 1; t <= ctx.p - 2; ++t) taus.push_back(t * ctx.M);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> dist(1, ctx.order - 1);
    std::unordered_set<uint64_t> seen;
    while (seen.size() < sample) {
        uint64_t t = dist(rng);
        if (t % ctx.M == 0) continue;
        if (seen.insert(t).second) taus.push_back(t);
    }
    for (uint64_t tau : taus) {
        if (ac_at(lsb, tau) != predicted_ac(ctx, acb, tau)) rep.mismatches.push_back(tau);
        ++rep.checked;
    }
    std::sort(rep.mismatches.begin(), rep.mismatches.end());
    return rep;
}

ClosedFormReport verify_closed_form(const FieldContext& ctx, uint64_t brute_cap, uint64_t sample,
                                    uint64_t seed) {
    return verify_closed_form(ctx, lsb_sequence(m_sequence(ctx)), brute_cap, sample, seed);
}

std::vector<AcbTableRow> acb_table(uint64_t p_max) {
    if (p_max > 1000) throw std::invalid_argument("acb_table: p_max must be <= 1000");
    std::vector<AcbTableRow> rows;
    const auto& ref = reference_acb_table();
    for (uint64_t p = 3; p <= p_max; p += 2) {
        if (!nt::is_prime(p)) continue;
        AcbTableRow row;
        row.p = p;
        auto it = std::find_if(ref.begin(), ref.end(), [&](const auto& r) { return r.p == p; });
        if (it != ref.end())
            row.betas = it->betas;
        else
            row.betas = {nt::least_primitive_root(p)};
        row.acb = acb_vector(p, row.betas.front()).acb;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<AcbTableDiff> acb_table_diff(uint64_t p_max) {
    std::vector<AcbTableDiff> diffs;
    for (const auto& ref : reference_acb_table()) {
        if (ref.p > p_max) continue;
        for (uint64_t beta : ref.betas) {
            auto computed = acb_vector(ref.p, beta).acb;
            if (computed.size() != ref.acb.size()) {
                diffs.push_back({ref.p, beta, 0, static_cast<int64_t>(computed.size()),
                                 static_cast<int64_t>(ref.acb.size())});
                continue;
            }
            for (size_t i = 0; i < computed.size(); ++i)
                if (computed[i] != ref.acb[i])
                    diffs.push_back({ref.p, beta, i + 1, computed[i], ref.acb[i]});
        }
    }
    return diffs;
}

bool acb_within_observed_range(const AcbVector& acb) {
    int64_t lim = static_cast<int64_t>(acb.p - 1) / 3;
    for (int64_t v : acb.acb)
        if (v < -lim || v > lim) return false;
    return true;
}

std::string to_csv(const AcProfile& profile) {
    std::ostringstream os;
    os << "tau,ac\n";
    for (uint64_t tau = 0; tau < profile.N; ++tau) os << tau << ',' << profile.values[tau] << '\n';
    return os.str();
}

}  // namespace lsbseq
