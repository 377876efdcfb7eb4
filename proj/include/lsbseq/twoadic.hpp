#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "lsbseq/autocorr.hpp"
#include "lsbseq/seq.hpp"

namespace lsbseq {

inline constexpr uint64_t kDefaultMaxBits = 2'000'000;

struct unsupported_prime_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// S(2) = sum s_t 2^t, exact.
mpz_class s_of_two(const BinarySequence& seq);

// T(x) = sum (-1)^{s_t} x^t evaluated at x = 2^{-1} = 2^{N-1} mod 2^N-1,
// reduced into [0, 2^N-1). Requires N >= 2.
mpz_class t_inverse_mod(const BinarySequence& seq);

// Universal identity tying the profile to S(2) and T(2^{-1}) mod 2^N-1:
//   -2 S(2) T(2^{-1}) = N + sum_{tau>=1} AC(tau) 2^tau - T(2^{-1}) sum_t 2^t.
// profile must be the exact brute-force profile of seq; a false return
// indicates an implementation bug somewhere upstream.
bool autocorrelation_congruence_holds(const BinarySequence& seq, const AcProfile& profile);

// Exact 2-adic complexity: floor(log2((2^N-1)/gcd(2^N-1, S(2)))).
int64_t exact_phi2(const BinarySequence& seq, uint64_t max_bits = kDefaultMaxBits);

struct GcdHalves {
    mpz_class plus;   // gcd(S(2)T(2^{-1}) mod 2^{N/2}+1, 2^{N/2}+1)
    mpz_class minus;  // gcd(S(2)T(2^{-1}) mod 2^{N/2}-1, 2^{N/2}-1)

    mpz_class full() const { return plus * minus; }
};

// Requires even N. Reductions use the fold 2^{N/2} = -+1.
GcdHalves gcd_halves(const BinarySequence& seq);

// gcd(S(2)T(2^{-1}), 2^N-1) case tables for p in {3,5,7,11,17,31} (beta = 3
// required upstream for p = 17, 31), split into the 2^{N/2}+1 and 2^{N/2}-1
// parts. Throws unsupported_prime_error otherwise.
GcdHalves predicted_gcd_halves(uint64_t p, unsigned n, uint64_t M);
mpz_class predicted_gcd(uint64_t p, unsigned n, uint64_t M);

// Proven lower bound on the 2-adic complexity, one case table per supported
// prime; bound = (numer/denom) N - constant, exact integer since (p-1) | N.
struct BoundFormula {
    uint64_t p = 0;
    int64_t numer = 0;
    int64_t denom = 1;
    int64_t constant = 0;
    std::string case_label;
    // The stated constant for this case is weaker than the one its derivation
    // reaches; the weaker value is used.
    bool conservative_constant = false;

    int64_t value(uint64_t N) const {
        return static_cast<int64_t>(numer * static_cast<__int128>(N) / denom) - constant;
    }
};

BoundFormula bound_formula(uint64_t p, unsigned n);
int64_t phi2_lower_bound(uint64_t p, unsigned n, uint64_t N);

bool bound_supported(uint64_t p);
// Weakest case constant C_p over all n, for the conjectured unified bound.
int64_t weakest_bound_constant(uint64_t p);

// ceil((p+1) N / (2(p-1))), the conjectured main part.
int64_t conjecture_main_part(uint64_t p, uint64_t N);

inline constexpr int64_t kHeuristicConjectureCap = 32;

struct ConjectureReport {
    uint64_t p = 0;
    unsigned n = 0;
    uint64_t N = 0;
    int64_t phi2 = 0;
    int64_t main_part = 0;
    int64_t c_cap = 0;
    bool cap_is_heuristic = false;
    int64_t slack = 0;  // phi2 - main_part
    bool pass = false;  // slack >= -c_cap
};

ConjectureReport conjecture_check(const BinarySequence& seq, uint64_t p, unsigned n,
                                  std::optional<int64_t> c_cap = std::nullopt,
                                  uint64_t max_bits = kDefaultMaxBits);

// Everything the 2-adic pipeline produces for one LSB sequence.
struct TwoAdicReport {
    uint64_t p = 0;
    unsigned n = 0;
    uint64_t N = 0;
    uint64_t M = 0;
    uint64_t beta = 0;
    mpz_class s2;
    mpz_class g_full;   // gcd(S(2)T(2^{-1}) mod 2^N-1, 2^N-1)
    mpz_class g_plus;
    mpz_class g_minus;
    int64_t phi2_exact = 0;
    int64_t bound_value = 0;        // proven bound when supported, else main - cap
    bool bound_is_proven = false;
    bool gcd_predicted = false;     // predicted_gcd available for this p
    bool gcd_matches = false;       // computed == predicted (when available)
    ConjectureReport conjecture;
    bool pass = false;  // phi2 >= bound, and gcd matches when predicted

    std::string to_json() const;  // big integers as hex strings
};

TwoAdicReport two_adic_report(const FieldContext& ctx, const BinarySequence& lsb,
                              uint64_t max_bits = kDefaultMaxBits);

}  // namespace lsbseq
