#include "lsbseq/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace lsbseq::nt {

std::vector<uint64_t> Factorization::primes() const {
    std::vector<uint64_t> out;
    out.reserve(factors.size());
    for (const auto& [q, e] : factors) out.push_back(q);
    return out;
}

uint64_t Factorization::reconstruct() const {
    uint64_t v = 1;
    for (const auto& [q, e] : factors)
        for (unsigned i = 0; i < e; ++i) v *= q;
    return v;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t modulus) {
    if (modulus < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
    uint64_t r = 1 % modulus;
    base %= modulus;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, modulus);
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    return r;
}

mpz_class mod_pow(const mpz_class& base, const mpz_class& exp, const mpz_class& modulus) {
    if (modulus < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
    if (exp < 0) throw std::invalid_argument("mod_pow: negative exponent");
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

namespace {

bool miller_rabin_u64(uint64_t n, uint64_t a) {
    if (a % n == 0) return true;
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    uint64_t x = mod_pow(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Witness set deterministic for all n < 3.3e24, in particular below 2^64.
constexpr uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    for (uint64_t a : kWitnesses)
        if (!miller_rabin_u64(n, a)) return false;
    return true;
}

bool is_prime(const mpz_class& n) {
    if (n.fits_ulong_p()) return is_prime(static_cast<uint64_t>(n.get_ui()));
    if (n < 2 || mpz_even_p(n.get_mpz_t())) return false;
    // 64 fixed prime bases: reproducible, error < 2^-128.
    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    uint64_t base = 2;
    for (int round = 0; round < 64; ++round) {
        while (!is_prime(base)) ++base;
        if (mpz_divisible_ui_p(n.get_mpz_t(), base)) return false;
        mpz_class x = mod_pow(mpz_class(base), d, n);
        if (x != 1 && x != n - 1) {
            bool witness = true;
            for (unsigned long i = 1; i < s && witness; ++i) {
                x = x * x % n;
                if (x == n - 1) witness = false;
            }
            if (witness) return false;
        }
        ++base;
    }
    return true;
}

namespace {

// Brent-cycle rho with batched gcd; deterministic (x0 = 2, c = 1, 2, ...).
uint64_t pollard_brent(uint64_t n, uint64_t rho_cap) {
    uint64_t spent = 0;
    for (uint64_t c = 1;; ++c) {
        if (c >= n) throw resource_limit_error("factorize: exhausted rho increments");
        uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        const uint64_t m = 128;
        while (g == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = (mul_mod(y, y, n) + c) % n;
            for (uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                uint64_t lim = std::min(m, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    y = (mul_mod(y, y, n) + c) % n;
                    uint64_t diff = x > y ? x - y : y - x;
                    q = mul_mod(q, diff ? diff : 1, n);
                }
                g = gcd_u64(q, n);
                spent += lim;
                if (spent > rho_cap)
                    throw resource_limit_error("factorize: rho iteration cap exceeded");
            }
            r <<= 1;
        }
        if (g == n) {
            // redo the last block one step at a time
            g = 1;
            while (g == 1) {
                ys = (mul_mod(ys, ys, n) + c) % n;
                uint64_t diff = x > ys ? x - ys : ys - x;
                g = gcd_u64(diff ? diff : n, n);
            }
        }
        if (g != n) return g;
    }
}

void factor_rec(uint64_t n, std::unordered_map<uint64_t, unsigned>& acc, uint64_t rho_cap) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++acc[n];
        return;
    }
    uint64_t d = pollard_brent(n, rho_cap);
    factor_rec(d, acc, rho_cap);
    factor_rec(n / d, acc, rho_cap);
}

}  // namespace

Factorization factorize(uint64_t n, uint64_t rho_cap) {
    if (n < 2) throw std::invalid_argument("factorize: n must be >= 2");
    Factorization f;
    f.value = n;
    std::unordered_map<uint64_t, unsigned> acc;
    for (uint64_t d : {2ull, 3ull, 5ull}) {
        while (n % d == 0) {
            ++acc[d];
            n /= d;
        }
    }
    // trial division to 10^6 on a mod-30 wheel, then rho for what survives
    static constexpr uint64_t wheel[] = {7, 11, 13, 17, 19, 23, 29, 31};
    uint64_t base = 0;
    size_t wi = 0;
    while (n > 1) {
        if (is_prime(n)) {
            ++acc[n];
            n = 1;
            break;
        }
        uint64_t d = base + wheel[wi];
        if (d > 1'000'000 || d * d > n) {
            factor_rec(n, acc, rho_cap);  // composite with no small factor
            n = 1;
            break;
        }
        if (n % d == 0) {
            while (n % d == 0) {
                ++acc[d];
                n /= d;
            }
            continue;  // re-test primality of the cofactor before moving on
        }
        if (++wi == std::size(wheel)) {
            wi = 0;
            base += 30;
        }
    }
    f.factors.assign(acc.begin(), acc.end());
    std::sort(f.factors.begin(), f.factors.end());
    return f;
}

uint64_t mult_order(uint64_t a, uint64_t modulus, uint64_t group_order) {
    if (modulus < 2) throw std::invalid_argument("mult_order: modulus must be >= 2");
    if (group_order == 0) throw std::invalid_argument("mult_order: group_order must be positive");
    if (gcd_u64(a % modulus, modulus) != 1)
        throw std::invalid_argument("mult_order: a not invertible mod modulus");
    if (mod_pow(a, group_order, modulus) != 1)
        throw std::invalid_argument("mult_order: group_order is not a multiple of the order");
    uint64_t d = group_order;
    for (uint64_t q : factorize(group_order).primes()) {
        while (d % q == 0 && mod_pow(a, d / q, modulus) == 1) d /= q;
    }
    return d;
}

std::optional<uint64_t> discrete_log(uint64_t base, uint64_t target, uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("discrete_log: p must be prime");
    base %= p;
    target %= p;
    if (base == 0 || target == 0) throw std::invalid_argument("discrete_log: arguments must be units");
    if (target == 1) return 0;
    uint64_t m = static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(p - 1))));
    std::unordered_map<uint64_t, uint64_t> baby;  // value -> least exponent
    baby.reserve(m * 2);
    uint64_t cur = 1;
    for (uint64_t j = 0; j < m; ++j) {
        baby.emplace(cur, j);  // keeps the smallest j
        cur = mul_mod(cur, base, p);
    }
    uint64_t giant = mod_pow(base, p - 1 - (m % (p - 1)), p);  // base^{-m}
    uint64_t gamma = target;
    for (uint64_t i = 0; i <= m; ++i) {
        auto it = baby.find(gamma);
        if (it != baby.end()) return i * m + it->second;
        gamma = mul_mod(gamma, giant, p);
    }
    return std::nullopt;
}

bool is_primitive_root(uint64_t g, uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("is_primitive_root: p must be prime");
    g %= p;
    if (g == 0) return false;
    if (p == 2) return g == 1;
    for (uint64_t q : factorize(p - 1).primes())
        if (mod_pow(g, (p - 1) / q, p) == 1) return false;
    return true;
}

uint64_t least_primitive_root(uint64_t p) {
    if (p == 2) return 1;
    auto qs = factorize(p - 1).primes();
    for (uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (uint64_t q : qs)
            if (mod_pow(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::logic_error("least_primitive_root: none found");
}

std::vector<uint64_t> primitive_roots(uint64_t p) {
    std::vector<uint64_t> out;
    if (p == 2) return {1};
    auto qs = factorize(p - 1).primes();
    for (uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (uint64_t q : qs)
            if (mod_pow(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) out.push_back(g);
    }
    return out;
}

}  // namespace lsbseq::nt
