#include <doctest.h>

#include <random>

#include "lsbseq/numtheory.hpp"

using namespace lsbseq;

namespace {

// independent oracle: trial division
bool prime_by_trial_division(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// independent oracle: multiplicative order by enumeration
uint64_t order_by_enumeration(uint64_t a, uint64_t m) {
    uint64_t cur = a % m, d = 1;
    while (cur != 1) {
        cur = cur * a % m;  // m < 2^32 in tests
        ++d;
    }
    return d;
}

}  // namespace

TEST_CASE("mod_pow basics") {
    CHECK(nt::mod_pow(2, 0, 7) == 1);
    CHECK(nt::mod_pow(2, 10, 1000) == 24);
    CHECK_THROWS_AS(nt::mod_pow(2, 3, 1), std::invalid_argument);
    // Wieferich prime: 1093^2 divides 2^1092 - 1
    CHECK(nt::mod_pow(2, 1092, 1093ull * 1093) == 1);
    CHECK(nt::mod_pow(mpz_class(2), mpz_class(1092), mpz_class(1093) * 1093) == 1);
}

TEST_CASE("is_prime matches trial division") {
    CHECK_FALSE(nt::is_prime(uint64_t(1)));
    CHECK(nt::is_prime(uint64_t(31)));
    CHECK(nt::is_prime((uint64_t(1) << 31) - 1));
    CHECK(prime_by_trial_division((uint64_t(1) << 31) - 1));
    for (uint64_t n = 0; n < 2000; ++n) CHECK(nt::is_prime(n) == prime_by_trial_division(n));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        uint64_t n = rng() % 10'000'000;
        CHECK(nt::is_prime(n) == prime_by_trial_division(n));
    }
    // carmichael numbers are composite
    for (uint64_t c : {561ull, 1105ull, 1729ull, 2465ull, 294409ull}) CHECK_FALSE(nt::is_prime(c));
}

TEST_CASE("factorize worked values") {
    auto f = nt::factorize(15);
    CHECK(f.factors == std::vector<std::pair<uint64_t, unsigned>>{{3, 1}, {5, 1}});
    f = nt::factorize(960);
    CHECK(f.factors == std::vector<std::pair<uint64_t, unsigned>>{{2, 6}, {3, 1}, {5, 1}});
    f = nt::factorize(2400);  // 7^4 - 1
    CHECK(f.factors == std::vector<std::pair<uint64_t, unsigned>>{{2, 5}, {3, 1}, {5, 2}});
    CHECK_THROWS_AS(nt::factorize(1), std::invalid_argument);
}

TEST_CASE("factorize round-trips on random inputs") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<uint64_t> dist(2, 1'000'000'000'000ull);
    for (int i = 0; i < 10'000; ++i) {
        uint64_t n = dist(rng);
        auto f = nt::factorize(n);
        CHECK(f.reconstruct() == n);
        uint64_t prev = 0;
        for (auto [q, e] : f.factors) {
            CHECK(q > prev);
            prev = q;
            CHECK(nt::is_prime(q));
            CHECK(e >= 1);
        }
    }
}

TEST_CASE("mult_order worked values and enumeration oracle") {
    CHECK(nt::mult_order(2, 7, 6) == 3);
    CHECK(nt::mult_order(2, 11, 10) == 10);
    CHECK(nt::mult_order(1, 13, 12) == 1);
    CHECK_THROWS_AS(nt::mult_order(6, 9, 6), std::invalid_argument);  // gcd != 1
    for (uint64_t m : {3ull, 5ull, 7ull, 97ull, 101ull, 243ull, 625ull, 997ull}) {
        uint64_t group = m;
        // group order: p-1 for prime, p^k - p^{k-1} for the prime powers here
        if (m == 243) group = 162;
        else if (m == 625) group = 500;
        else group = m - 1;
        for (uint64_t a = 2; a < std::min<uint64_t>(m, 30); ++a) {
            if (nt::gcd_u64(a, m) != 1) continue;
            CHECK(nt::mult_order(a, m, group) == order_by_enumeration(a, m));
        }
    }
}

TEST_CASE("discrete_log worked values and enumeration oracle") {
    CHECK(nt::discrete_log(3, 1, 7) == 0);
    CHECK(nt::discrete_log(3, 2, 7) == 2);
    CHECK(nt::discrete_log(3, 6, 7) == 3);
    // 2 generates only {1,2,4} mod 7
    CHECK_FALSE(nt::discrete_log(2, 3, 7).has_value());

    for (uint64_t p : {11ull, 101ull, 977ull}) {
        uint64_t g = nt::least_primitive_root(p);
        uint64_t cur = 1;
        for (uint64_t e = 0; e < p - 1; ++e) {
            auto got = nt::discrete_log(g, cur, p);
            REQUIRE(got.has_value());
            CHECK(*got == e);
            cur = cur * g % p;
        }
    }
}

TEST_CASE("primitive roots") {
    CHECK(nt::least_primitive_root(3) == 2);
    CHECK(nt::least_primitive_root(7) == 3);
    CHECK(nt::least_primitive_root(31) == 3);
    CHECK(nt::primitive_roots(7) == std::vector<uint64_t>{3, 5});
    CHECK(nt::primitive_roots(11) == std::vector<uint64_t>{2, 6, 7, 8});
    CHECK(nt::is_primitive_root(3, 17));
    CHECK_FALSE(nt::is_primitive_root(2, 17));
}

TEST_CASE("two-power divisibility across prime powers") {
    // p | 2^{p^n-1}-1 always; p^2 | 2^{p^n-1}-1 exactly when p^2 | 2^{p-1}-1
    for (uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
        bool wieferich = nt::mod_pow(2, p - 1, p * p) == 1;
        CHECK_FALSE(wieferich);  // none below 1093
        uint64_t pn = 1;
        for (unsigned n = 1; n <= 4; ++n) {
            pn *= p;
            CHECK(nt::mod_pow(2, pn - 1, p) == 1);
            CHECK((nt::mod_pow(2, pn - 1, p * p) == 1) == wieferich);
        }
    }
    // positive control at the first Wieferich prime
    CHECK(nt::mod_pow(2, 1092, 1093ull * 1093) == 1);
    // 2^k-1 with odd k: p divides 2^{(p^n-1)/2}-1 but not 2^{(p^n-1)/2}+1
    for (uint64_t p : {7ull, 31ull}) {
        uint64_t pn = 1;
        for (unsigned n = 1; n <= 4; ++n) {
            pn *= p;
            uint64_t half = (pn - 1) / 2;
            CHECK(nt::mod_pow(2, half, p) == 1);
            CHECK(nt::mod_pow(2, half, p * p) != 1);
            CHECK((nt::mod_pow(2, half, p) + 1) % p != 0);
        }
    }
}
