#include "lsbseq/twoadic.hpp"

#include <json.hpp>

namespace lsbseq {

namespace {

mpz_class import_words(const std::vector<uint64_t>& words) {
    mpz_class v;
    if (!words.empty())
        mpz_import(v.get_mpz_t(), words.size(), -1 /*LS word first*/, sizeof(uint64_t), 0, 0,
                   words.data());
    return v;
}

mpz_class mersenne(uint64_t N) {
    mpz_class m;
    mpz_setbit(m.get_mpz_t(), N);
    return m - 1;
}

// x mod (2^h - 1), folding 2^h = 1; x >= 0.
mpz_class fold_minus(mpz_class x, uint64_t h) {
    mpz_class lo, hi;
    while (mpz_sizeinbase(x.get_mpz_t(), 2) > h && x > 0) {
        mpz_fdiv_r_2exp(lo.get_mpz_t(), x.get_mpz_t(), h);
        mpz_fdiv_q_2exp(hi.get_mpz_t(), x.get_mpz_t(), h);
        x = lo + hi;
    }
    if (mpz_sizeinbase(x.get_mpz_t(), 2) == h && mpz_popcount(x.get_mpz_t()) == h)
        x = 0;  // x == 2^h - 1
    return x;
}

// x mod (2^h + 1), folding 2^h = -1; x >= 0.
mpz_class fold_plus(mpz_class x, uint64_t h) {
    mpz_class m = mersenne(h) + 2;  // 2^h + 1
    bool negate = false;
    mpz_class lo, hi;
    while (mpz_sizeinbase(x.get_mpz_t(), 2) > h && x > 0) {
        mpz_fdiv_r_2exp(lo.get_mpz_t(), x.get_mpz_t(), h);
        mpz_fdiv_q_2exp(hi.get_mpz_t(), x.get_mpz_t(), h);
        x = lo - hi;
        if (x < 0) {
            x = -x;
            negate = !negate;
        }
    }
    if (x >= m) x -= m;  // x could be exactly 2^h + ... only 2^h possible; guard anyway
    if (negate && x != 0) x = m - x;
    return x;
}

mpz_class mod_mersenne(const mpz_class& x, uint64_t N, const mpz_class& m) {
    mpz_class r = fold_minus(x >= 0 ? x : -x, N);
    if (x < 0 && r != 0) r = m - r;
    return r;
}

}  // namespace

mpz_class s_of_two(const BinarySequence& seq) { return import_words(seq.words()); }

mpz_class t_inverse_mod(const BinarySequence& seq) {
    const uint64_t N = seq.period();
    if (N < 2) throw std::invalid_argument("t_inverse_mod: requires N >= 2");
    // T(2^{-1}) = sum (1-2 s_t) 2^{(N-t) mod N}; the +1 terms sum with the -1
    // terms to 2^N-1 = 0, leaving -2 * sum_{s_t=1} 2^{(N-t) mod N}.
    BinarySequence rev(N);
    for (uint64_t t = 0; t < N; ++t)
        if (seq.get(t)) rev.set(t == 0 ? 0 : N - t, true);
    mpz_class b = import_words(rev.words());
    mpz_class m = mersenne(N);
    mpz_class r = (-2 * b) % m;
    if (r < 0) r += m;
    return r;
}

bool autocorrelation_congruence_holds(const BinarySequence& seq, const AcProfile& profile) {
    const uint64_t N = seq.period();
    if (N < 2 || profile.N != N)
        throw std::invalid_argument("autocorrelation_congruence_holds: profile/period mismatch");
    mpz_class m = mersenne(N);
    mpz_class lhs = mod_mersenne(-2 * s_of_two(seq) * t_inverse_mod(seq), N, m);
    // sum_{tau=1}^{N-1} AC(tau) 2^tau by Horner; the -T(2^{-1}) sum_t 2^t term
    // is a multiple of 2^N-1 and drops out.
    mpz_class acc = 0;
    for (uint64_t tau = N - 1; tau >= 1; --tau) {
        acc <<= 1;
        acc += profile.values[tau];
    }
    acc <<= 1;
    acc += static_cast<long>(N);
    mpz_class rhs = mod_mersenne(acc, N, m);
    return lhs == rhs;
}

int64_t exact_phi2(const BinarySequence& seq, uint64_t max_bits) {
    const uint64_t N = seq.period();
    if (N == 0) throw std::invalid_argument("exact_phi2: empty sequence");
    if (N > max_bits) throw resource_limit_error("exact_phi2: period exceeds the bit budget");
    mpz_class m = mersenne(N);
    mpz_class g;
    mpz_class s = s_of_two(seq);
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), s.get_mpz_t());
    mpz_class q = m / g;
    return static_cast<int64_t>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 1;
}

GcdHalves gcd_halves(const BinarySequence& seq) {
    const uint64_t N = seq.period();
    if (N % 2 != 0) throw std::invalid_argument("gcd_halves: requires even N");
    const uint64_t h = N / 2;
    mpz_class s = s_of_two(seq);
    mpz_class t = t_inverse_mod(seq);
    GcdHalves out;
    {
        mpz_class mp = mersenne(h) + 2;
        mpz_class u = fold_plus(fold_plus(s, h) * fold_plus(t, h), h);
        mpz_gcd(out.plus.get_mpz_t(), u.get_mpz_t(), mp.get_mpz_t());
    }
    {
        mpz_class mm = mersenne(h);
        mpz_class u = fold_minus(fold_minus(s, h) * fold_minus(t, h), h);
        mpz_gcd(out.minus.get_mpz_t(), u.get_mpz_t(), mm.get_mpz_t());
    }
    return out;
}

namespace {

// 1 + 2^M + ... + 2^{(k-1)M}
mpz_class repunit_pow2(uint64_t M, unsigned k) {
    mpz_class r;
    for (unsigned i = 0; i < k; ++i) mpz_setbit(r.get_mpz_t(), i * M);
    return r;
}

}  // namespace

GcdHalves predicted_gcd_halves(uint64_t p, unsigned n, uint64_t M) {
    if (n < 2) throw std::invalid_argument("predicted_gcd_halves: requires n >= 2");
    GcdHalves g;
    switch (p) {
        case 3:
            g.plus = (n % 2 == 1) ? 3 : 1;
            g.minus = (n % 2 == 0 && n != 2) ? 3 : 1;
            return g;
        case 5:
            g.plus = (n % 2 == 1) ? 5 : 1;
            g.minus = ((n % 4 == 0) ? 5 : 1) * (mersenne(M) + 2);
            return g;
        case 7:
            g.plus = 1;
            g.minus = ((n % 3 == 0) ? 7 : 1) * ((n % 2 == 0) ? 3 : 1) * repunit_pow2(M, 3);
            return g;
        case 11:
            g.plus = (n % 2 == 1) ? 33 : 1;
            g.minus = ((n % 10 == 0) ? 11 : 1) * ((n % 2 == 0) ? 5 : 1) * repunit_pow2(M, 5);
            return g;
        case 17:
            g.plus = 1;
            g.minus = ((n % 8 == 0) ? 17 : 1) * repunit_pow2(M, 8);
            return g;
        case 31:
            g.plus = (n % 6 == 3) ? 9 : ((n % 2 == 1) ? 3 : 1);
            g.minus = ((n % 5 == 0) ? 31 : 1) * ((n % 2 == 0) ? 15 : 1) * repunit_pow2(M, 15);
            return g;
        default:
            throw unsupported_prime_error("predicted_gcd_halves: no case table for this prime");
    }
}

mpz_class predicted_gcd(uint64_t p, unsigned n, uint64_t M) {
    return predicted_gcd_halves(p, n, M).full();
}

bool bound_supported(uint64_t p) {
    return p == 3 || p == 5 || p == 7 || p == 11 || p == 17 || p == 31;
}

BoundFormula bound_formula(uint64_t p, unsigned n) {
    BoundFormula f;
    f.p = p;
    switch (p) {
        case 3:
            f.numer = 1; f.denom = 1; f.constant = 3; f.case_label = "all n";
            return f;
        case 5:
            f.numer = 3; f.denom = 4;
            if (n % 4 == 2) { f.constant = 2; f.case_label = "n = 2 mod 4"; }
            else            { f.constant = 5; f.case_label = "otherwise"; }
            return f;
        case 7:
            f.numer = 2; f.denom = 3;
            if (n % 6 == 0)      { f.constant = 7; f.case_label = "n = 0 mod 6"; }
            else if (n % 2 == 0) { f.constant = 4; f.case_label = "n = 0 mod 2, n != 0 mod 3"; }
            else if (n % 3 == 0) { f.constant = 5; f.case_label = "n = 0 mod 3, n != 0 mod 2"; }
            else                 { f.constant = 2; f.case_label = "otherwise"; }
            return f;
        case 11:
            f.numer = 3; f.denom = 5;
            if (n % 2 == 1)       { f.constant = 8; f.case_label = "n odd"; }
            else if (n % 10 == 0) { f.constant = 8; f.case_label = "n = 0 mod 10"; }
            else {
                f.constant = 5; f.case_label = "n even, n != 0 mod 10";
                f.conservative_constant = true;  // derivation reaches -4
            }
            return f;
        case 17:
            f.numer = 9; f.denom = 16;
            if (n % 8 == 0) { f.constant = 7; f.case_label = "n = 0 mod 8"; }
            else            { f.constant = 2; f.case_label = "n != 0 mod 8"; }
            return f;
        case 31:
            f.numer = 8; f.denom = 15;
            if (n % 2 == 0) {
                if (n % 5 == 0) { f.constant = 10; f.case_label = "n = 0 mod 10"; }
                else            { f.constant = 5;  f.case_label = "n = 0 mod 2, n != 0 mod 5"; }
            } else if (n % 6 == 3) {
                if (n % 5 == 0) { f.constant = 10; f.case_label = "n = 0 mod 5, n = 3 mod 6"; }
                else            { f.constant = 5;  f.case_label = "n != 0 mod 5, n = 3 mod 6"; }
            } else {
                if (n % 5 == 0) { f.constant = 8;  f.case_label = "n odd, n = 0 mod 5, n != 3 mod 6"; }
                else            { f.constant = 3;  f.case_label = "n odd, n != 0 mod 5, n != 3 mod 6"; }
            }
            return f;
        default:
            throw unsupported_prime_error("bound_formula: no case table for this prime");
    }
}

int64_t phi2_lower_bound(uint64_t p, unsigned n, uint64_t N) {
    return bound_formula(p, n).value(N);
}

int64_t weakest_bound_constant(uint64_t p) {
    switch (p) {
        case 3: return 3;
        case 5: return 5;
        case 7: return 7;
        case 11: return 8;
        case 17: return 7;
        case 31: return 10;
        default: throw unsupported_prime_error("weakest_bound_constant: no case table for this prime");
    }
}

int64_t conjecture_main_part(uint64_t p, uint64_t N) {
    __int128 num = static_cast<__int128>(p + 1) * N;
    __int128 den = 2 * static_cast<__int128>(p - 1);
    return static_cast<int64_t>((num + den - 1) / den);
}

ConjectureReport conjecture_check(const BinarySequence& seq, uint64_t p, unsigned n,
                                  std::optional<int64_t> c_cap, uint64_t max_bits) {
    ConjectureReport rep;
    rep.p = p;
    rep.n = n;
    rep.N = seq.period();
    rep.phi2 = exact_phi2(seq, max_bits);
    rep.main_part = conjecture_main_part(p, rep.N);
    if (c_cap) {
        rep.c_cap = *c_cap;
    } else if (bound_supported(p)) {
        rep.c_cap = weakest_bound_constant(p);
    } else {
        rep.c_cap = kHeuristicConjectureCap;
        rep.cap_is_heuristic = true;
    }
    rep.slack = rep.phi2 - rep.main_part;
    rep.pass = rep.slack >= -rep.c_cap;
    return rep;
}

TwoAdicReport two_adic_report(const FieldContext& ctx, const BinarySequence& lsb,
                              uint64_t max_bits) {
    if (lsb.period() != ctx.order)
        throw std::invalid_argument("two_adic_report: sequence period does not match the field");
    if (ctx.order > max_bits)
        throw resource_limit_error("two_adic_report: period exceeds the bit budget");
    TwoAdicReport rep;
    rep.p = ctx.p;
    rep.n = ctx.n;
    rep.N = ctx.order;
    rep.M = ctx.M;
    rep.beta = ctx.beta;
    rep.s2 = s_of_two(lsb);

    mpz_class m = mersenne(rep.N);
    mpz_class u = mod_mersenne(rep.s2 * t_inverse_mod(lsb), rep.N, m);
    mpz_gcd(rep.g_full.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
    GcdHalves halves = gcd_halves(lsb);
    rep.g_plus = halves.plus;
    rep.g_minus = halves.minus;

    rep.phi2_exact = exact_phi2(lsb, max_bits);
    rep.conjecture = conjecture_check(lsb, ctx.p, ctx.n, std::nullopt, max_bits);

    bool beta_constrained = (ctx.p == 17 || ctx.p == 31);
    rep.gcd_predicted = ctx.n >= 2 && bound_supported(ctx.p) && (!beta_constrained || ctx.beta == 3);
    if (rep.gcd_predicted) {
        GcdHalves pred = predicted_gcd_halves(ctx.p, ctx.n, ctx.M);
        rep.gcd_matches =
            pred.plus == rep.g_plus && pred.minus == rep.g_minus && pred.full() == rep.g_full;
    }
    if (bound_supported(ctx.p)) {
        rep.bound_value = phi2_lower_bound(ctx.p, ctx.n, rep.N);
        // the plus-half derivation for the constrained primes assumes beta = 3
        rep.bound_is_proven = !beta_constrained || ctx.beta == 3;
    } else {
        rep.bound_value = rep.conjecture.main_part - rep.conjecture.c_cap;
        rep.bound_is_proven = false;
    }
    rep.pass = rep.phi2_exact >= rep.bound_value && (!rep.gcd_predicted || rep.gcd_matches);
    return rep;
}

std::string TwoAdicReport::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["n"] = n;
    j["N"] = N;
    j["M"] = M;
    j["beta"] = beta;
    j["S2_hex"] = s2.get_str(16);
    j["gcd_full_hex"] = g_full.get_str(16);
    j["gcd_plus_hex"] = g_plus.get_str(16);
    j["gcd_minus_hex"] = g_minus.get_str(16);
    j["phi2_exact"] = phi2_exact;
    j["bound_value"] = bound_value;
    j["bound_is_proven"] = bound_is_proven;
    j["gcd_predicted"] = gcd_predicted;
    if (gcd_predicted) j["gcd_matches"] = gcd_matches;
    j["conjecture"] = {{"main_part", conjecture.main_part},
                       {"c_cap", conjecture.c_cap},
                       {"cap_is_heuristic", conjecture.cap_is_heuristic},
                       {"slack", conjecture.slack},
                       {"pass", conjecture.pass}};
    j["pass"] = pass;
    return j.dump();
}

}  // namespace lsbseq
