#include <doctest.h>

#include <random>

#include "lsbseq/twoadic.hpp"

using namespace lsbseq;

namespace {

BinarySequence from_bits(std::initializer_list<int> bits) {
    BinarySequence s(bits.size());
    uint64_t i = 0;
    for (int b : bits) s.set(i++, b != 0);
    return s;
}

BinarySequence random_sequence(uint64_t N, std::mt19937_64& rng) {
    BinarySequence s(N);
    for (uint64_t i = 0; i < N; ++i) s.set(i, rng() & 1);
    return s;
}

mpz_class mersenne(uint64_t N) {
    mpz_class m;
    mpz_setbit(m.get_mpz_t(), N);
    return m - 1;
}

// independent oracle: term-by-term evaluation with full-width powers
mpz_class t_inverse_oracle(const BinarySequence& s) {
    uint64_t N = s.period();
    mpz_class m = mersenne(N), acc = 0;
    for (uint64_t t = 0; t < N; ++t) {
        mpz_class pw;
        mpz_setbit(pw.get_mpz_t(), (N - t) % N);
        acc += (s.get(t) ? -pw : pw);
    }
    acc %= m;
    if (acc < 0) acc += m;
    return acc;
}

}  // namespace

TEST_CASE("s_of_two worked values") {
    CHECK(s_of_two(BinarySequence(8)) == 0);
    CHECK(s_of_two(from_bits({1, 0})) == 1);
    CHECK(s_of_two(b_sequence(7, 3)) == 35);  // bits 1,1,0,0,0,1
}

TEST_CASE("t_inverse_mod worked values and oracle") {
    CHECK(t_inverse_mod(from_bits({1, 0})) == 1);  // -1 + 2 mod 3
    CHECK(t_inverse_mod(BinarySequence(4)) == 0);  // geometric sum collapses
    CHECK(t_inverse_mod(b_sequence(7, 3)) == 56);
    CHECK_THROWS_AS(t_inverse_mod(BinarySequence(1)), std::invalid_argument);

    std::mt19937_64 rng(2024);
    for (int it = 0; it < 60; ++it) {
        auto s = random_sequence(2 + rng() % 200, rng);
        CHECK(t_inverse_mod(s) == t_inverse_oracle(s));
    }
    // scaled-rational route: T(2^{-1}) = 2 * sum (-1)^{s_t} 2^{N-1-t} mod 2^N-1
    for (int it = 0; it < 20; ++it) {
        auto s = random_sequence(2 + rng() % 64, rng);
        uint64_t N = s.period();
        mpz_class u = 0;
        for (uint64_t t = 0; t < N; ++t) {
            mpz_class pw;
            mpz_setbit(pw.get_mpz_t(), N - 1 - t);
            u += s.get(t) ? -pw : pw;
        }
        mpz_class m = mersenne(N);
        mpz_class expect = (2 * u) % m;
        if (expect < 0) expect += m;
        CHECK(t_inverse_mod(s) == expect);
    }
}

TEST_CASE("correlation congruence holds universally") {
    auto s10 = from_bits({1, 0});
    CHECK(autocorrelation_congruence_holds(s10, ac_profile(s10)));
    BinarySequence zeros(4);
    CHECK(autocorrelation_congruence_holds(zeros, ac_profile(zeros)));
    auto lsb = lsb_sequence(m_sequence(build_field(3, 2)));
    CHECK(autocorrelation_congruence_holds(lsb, ac_profile(lsb)));

    std::mt19937_64 rng(606);
    for (int it = 0; it < 100; ++it) {
        auto s = random_sequence(2 + rng() % 255, rng);
        CHECK(autocorrelation_congruence_holds(s, ac_profile(s)));
    }
    // a wrong profile must be detected
    auto prof = ac_profile(s10);
    prof.values[1] += 2;
    CHECK_FALSE(autocorrelation_congruence_holds(s10, prof));
}

TEST_CASE("exact_phi2 worked values") {
    BinarySequence ones(6);
    for (int i = 0; i < 6; ++i) ones.set(i, true);
    CHECK(exact_phi2(ones) == 0);  // S(2) = 2^N-1

    CHECK(exact_phi2(from_bits({1, 0})) == 1);  // gcd(1,3) = 1, floor(log2 3)

    auto lsb32 = lsb_sequence(m_sequence(build_field(3, 2)));
    CHECK(exact_phi2(lsb32) == 7);
    // direct gcd oracle
    mpz_class m = mersenne(8), g;
    mpz_class s2 = s_of_two(lsb32);
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), s2.get_mpz_t());
    CHECK(g == 1);
    CHECK(mpz_sizeinbase(mpz_class(m / g).get_mpz_t(), 2) - 1 == 7);

    CHECK_THROWS_AS(exact_phi2(BinarySequence(100), 50), resource_limit_error);
}

TEST_CASE("gcd halves worked values") {
    for (unsigned n = 2; n <= 4; ++n) {
        auto lsb = lsb_sequence(m_sequence(build_field(7, n)));
        CHECK(gcd_halves(lsb).plus == 1);
    }
    auto lsb112 = lsb_sequence(m_sequence(build_field(11, 2)));
    CHECK(gcd_halves(lsb112).plus == 1);  // n even
    auto lsb113 = lsb_sequence(m_sequence(build_field(11, 3)));
    CHECK(gcd_halves(lsb113).plus == 33);  // n odd

    BinarySequence odd(5);
    CHECK_THROWS_AS(gcd_halves(odd), std::invalid_argument);
}

TEST_CASE("plus and minus halves multiply to the full gcd") {
    std::mt19937_64 rng(11);
    auto check_product = [](const BinarySequence& s) {
        uint64_t N = s.period();
        auto h = gcd_halves(s);
        mpz_class m = mersenne(N);
        mpz_class u = s_of_two(s) * t_inverse_mod(s) % m;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
        CHECK(h.full() == g);
    };
    for (int it = 0; it < 40; ++it) check_product(random_sequence(2 * (1 + rng() % 100), rng));
    for (auto [p, n] : {std::pair<uint64_t, unsigned>{3, 4}, {5, 3}, {7, 2}, {11, 2}})
        check_product(lsb_sequence(m_sequence(build_field(p, n))));
}

TEST_CASE("predicted gcd worked values") {
    CHECK(predicted_gcd(3, 2, 4) == 1);
    CHECK(predicted_gcd(3, 5, 121) == 3);

    // p=7, n=5: full gcd is 1 + 2^M + 2^{2M}
    uint64_t M75 = (16807ull * 7 - 1) / 6 / 7;  // (7^5-1)/6 = 2801
    CHECK(M75 == 2801);
    mpz_class expect = 0;
    mpz_setbit(expect.get_mpz_t(), 0);
    mpz_setbit(expect.get_mpz_t(), M75);
    mpz_setbit(expect.get_mpz_t(), 2 * M75);
    CHECK(predicted_gcd(7, 5, M75) == expect);

    // p=17, n=2: (2^{8M}-1)/(2^M-1) with M = 18
    mpz_class q = mersenne(8 * 18) / mersenne(18);
    CHECK(predicted_gcd(17, 2, 18) == q);

    CHECK_THROWS_AS(predicted_gcd(13, 2, 14), unsupported_prime_error);
    CHECK_THROWS_AS(predicted_gcd(7, 1, 1), std::invalid_argument);
}

TEST_CASE("computed gcds match the case tables on small cells") {
    struct Cell { uint64_t p; unsigned n; bool retarget; };
    for (auto [p, n, retarget] : {Cell{3, 2, false}, {3, 3, false}, {5, 2, false}, {5, 3, false},
                                  {7, 2, false}, {11, 2, false}, {11, 3, false}, {17, 2, true},
                                  {31, 2, true}}) {
        auto ctx = build_field(p, n);
        if (retarget) ctx = retarget_beta(ctx, 3);
        auto lsb = lsb_sequence(m_sequence(ctx));
        auto got = gcd_halves(lsb);
        auto pred = predicted_gcd_halves(p, n, ctx.M);
        CHECK(got.plus == pred.plus);
        CHECK(got.minus == pred.minus);
    }
}

TEST_CASE("phi2 dominates the reduced-denominator chain") {
    for (auto [p, n] : {std::pair<uint64_t, unsigned>{3, 2}, {3, 4}, {7, 2}, {11, 2}}) {
        auto ctx = build_field(p, n);
        auto lsb = lsb_sequence(m_sequence(ctx));
        int64_t phi2 = exact_phi2(lsb);
        mpz_class q = mersenne(ctx.order) / predicted_gcd(p, n, ctx.M);
        int64_t floor_log = static_cast<int64_t>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 1;
        CHECK(phi2 >= floor_log);
    }
}

TEST_CASE("bound formulas") {
    CHECK(phi2_lower_bound(3, 4, 80) == 77);
    CHECK(phi2_lower_bound(7, 6, 117648) == 78425);
    CHECK(phi2_lower_bound(31, 2, 960) == 507);
    CHECK(phi2_lower_bound(5, 2, 24) == 16);   // n = 2 mod 4
    CHECK(phi2_lower_bound(5, 4, 624) == 463); // 3N/4 - 5
    CHECK(phi2_lower_bound(17, 2, 288) == 160);
    CHECK(phi2_lower_bound(11, 3, 1330) == 790);

    auto f = bound_formula(11, 2);
    CHECK(f.constant == 5);
    CHECK(f.conservative_constant);  // statement is weaker than the derivation
    CHECK_FALSE(bound_formula(11, 3).conservative_constant);

    CHECK(weakest_bound_constant(3) == 3);
    CHECK(weakest_bound_constant(5) == 5);
    CHECK(weakest_bound_constant(7) == 7);
    CHECK(weakest_bound_constant(11) == 8);
    CHECK(weakest_bound_constant(17) == 7);
    CHECK(weakest_bound_constant(31) == 10);
    CHECK_THROWS_AS(phi2_lower_bound(13, 2, 168), unsupported_prime_error);

    // every implemented coefficient equals the conjectured main-part slope
    for (uint64_t p : {3ull, 5ull, 7ull, 11ull, 17ull, 31ull}) {
        auto bf = bound_formula(p, 2);
        CHECK(bf.numer * 2 * (p - 1) == bf.denom * (p + 1));
    }
}

TEST_CASE("conjecture check worked values") {
    auto lsb32 = lsb_sequence(m_sequence(build_field(3, 2)));
    auto rep = conjecture_check(lsb32, 3, 2);
    CHECK(rep.phi2 == 7);
    CHECK(rep.main_part == 8);
    CHECK(rep.slack == -1);
    CHECK(rep.c_cap == 3);
    CHECK_FALSE(rep.cap_is_heuristic);
    CHECK(rep.pass);

    auto lsb72 = lsb_sequence(m_sequence(build_field(7, 2)));
    auto rep7 = conjecture_check(lsb72, 7, 2);
    CHECK(rep7.phi2 == 31);
    CHECK(rep7.main_part == 32);
    CHECK(rep7.pass);

    auto lsb132 = lsb_sequence(m_sequence(build_field(13, 2)));
    auto rep13 = conjecture_check(lsb132, 13, 2, std::nullopt);
    CHECK(rep13.phi2 == 97);
    CHECK(rep13.main_part == 98);
    CHECK(rep13.c_cap == kHeuristicConjectureCap);
    CHECK(rep13.cap_is_heuristic);
    CHECK(rep13.pass);
    auto rep13b = conjecture_check(lsb132, 13, 2, 0);
    CHECK_FALSE(rep13b.pass);  // slack is -1, cap 0
}

TEST_CASE("two-adic report for (3,2) and (7,2)") {
    auto ctx = build_field(3, 2);
    auto rep = two_adic_report(ctx, lsb_sequence(m_sequence(ctx)));
    CHECK(rep.phi2_exact == 7);
    CHECK(rep.bound_value == 5);  // N - 3
    CHECK(rep.bound_is_proven);
    CHECK(rep.gcd_predicted);
    CHECK(rep.gcd_matches);
    CHECK(rep.g_full == 1);
    CHECK(rep.pass);

    auto ctx7 = build_field(7, 2);
    auto rep7 = two_adic_report(ctx7, lsb_sequence(m_sequence(ctx7)));
    CHECK(rep7.g_plus == 1);
    CHECK(rep7.phi2_exact == 31);
    CHECK(rep7.bound_value == 28);  // 2N/3 - 4 for even n not divisible by 3
    CHECK(rep7.pass);

    auto js = rep7.to_json();
    CHECK(js.find("\"phi2_exact\":31") != std::string::npos);
    CHECK(js.find("S2_hex") != std::string::npos);
}

TEST_CASE("bound is flagged unproven off the certified beta") {
    auto ctx = retarget_beta(build_field(17, 2), 5);
    auto rep = two_adic_report(ctx, lsb_sequence(m_sequence(ctx)));
    CHECK_FALSE(rep.bound_is_proven);
    CHECK_FALSE(rep.gcd_predicted);

    auto ctx3 = retarget_beta(build_field(17, 2), 3);
    CHECK(two_adic_report(ctx3, lsb_sequence(m_sequence(ctx3))).bound_is_proven);
}

TEST_CASE("phi2 of the period-30 b-sequence depends on beta") {
    for (uint64_t beta : {3ull, 12ull, 17ull, 24ull}) CHECK(exact_phi2(b_sequence(31, beta)) == 11);
    for (uint64_t beta : {11ull, 13ull, 21ull, 22ull}) CHECK(exact_phi2(b_sequence(31, beta)) == 13);
}

TEST_CASE("report fields for an unsupported prime are exploratory") {
    auto ctx = build_field(13, 2);
    auto rep = two_adic_report(ctx, lsb_sequence(m_sequence(ctx)));
    CHECK_FALSE(rep.gcd_predicted);
    CHECK_FALSE(rep.bound_is_proven);
    CHECK(rep.conjecture.cap_is_heuristic);
    CHECK(rep.phi2_exact == 97);
}
