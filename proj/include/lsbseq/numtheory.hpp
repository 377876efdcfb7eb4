#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace lsbseq {

// Raised when a configured iteration/size budget is exhausted.
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace nt {

// Complete factorization of a 64-bit integer, primes strictly increasing.
struct Factorization {
    uint64_t value = 0;
    std::vector<std::pair<uint64_t, unsigned>> factors;

    std::vector<uint64_t> primes() const;
    uint64_t reconstruct() const;
};

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);

// base^exp mod modulus, modulus >= 2.
uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t modulus);
mpz_class mod_pow(const mpz_class& base, const mpz_class& exp, const mpz_class& modulus);

// Deterministic below 2^64 (fixed Miller-Rabin witness set); for larger
// inputs runs 64 fixed prime bases, error < 2^-128.
bool is_prime(uint64_t n);
bool is_prime(const mpz_class& n);

inline constexpr uint64_t kRhoIterationCap = 100'000'000;

// Trial division to 10^6, then Pollard rho with Brent cycle detection and a
// deterministic retry schedule. Throws resource_limit_error past the cap.
Factorization factorize(uint64_t n, uint64_t rho_cap = kRhoIterationCap);

// Least d > 0 with a^d = 1 (mod modulus); group_order must be a multiple of d.
uint64_t mult_order(uint64_t a, uint64_t modulus, uint64_t group_order);

// Baby-step/giant-step in F_p^*: least e >= 0 with base^e = target (mod p),
// or nullopt if target is outside the subgroup generated by base.
std::optional<uint64_t> discrete_log(uint64_t base, uint64_t target, uint64_t p);

bool is_primitive_root(uint64_t g, uint64_t p);
uint64_t least_primitive_root(uint64_t p);
std::vector<uint64_t> primitive_roots(uint64_t p);

uint64_t gcd_u64(uint64_t a, uint64_t b);

}  // namespace nt
}  // namespace lsbseq
