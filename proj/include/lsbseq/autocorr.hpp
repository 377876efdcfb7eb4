#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsbseq/seq.hpp"

namespace lsbseq {

inline constexpr uint64_t kDefaultBruteCap = 65536;
inline constexpr uint64_t kDefaultSampleSize = 1000;
inline constexpr uint64_t kDefaultSeed = 12345;

enum class AcMethod { brute, closed_form, hybrid };

// Full autocorrelation profile; values[tau] for tau in [0, N), values[0] = N.
struct AcProfile {
    uint64_t N = 0;
    std::vector<int64_t> values;
    AcMethod method = AcMethod::brute;

    int64_t at(uint64_t tau) const { return values[tau]; }
};

// AC(tau) = sum over one period of (-1)^{s_t + s_{t+tau}}; exact, word-parallel.
int64_t ac_at(const BinarySequence& seq, uint64_t tau);

// Brute-force profile for all tau; throws resource_limit_error above max_n2.
AcProfile ac_profile(const BinarySequence& seq, uint64_t max_n2 = kDefaultBruteCap);

// The independent autocorrelation values of the period-(p-1) b-sequence:
// AC_b(tau') for tau' in I = {1..(p-5)/4} (p = 1 mod 4) or {1..(p-3)/4}
// (p = 3 mod 4); empty for p in {3, 5}.
struct AcbVector {
    uint64_t p = 0;
    uint64_t beta = 0;
    std::vector<int64_t> acb;  // indexed by tau' - 1
};

uint64_t acb_index_size(uint64_t p);

// Brute-force AC_b over I. Validates the folding symmetries on the full
// profile first (throws std::logic_error on any violation):
//   AC_b(p-1-t) = AC_b(t),  AC_b((p-1)/2 - t) = -AC_b(t),
//   AC_b((p-1)/2) = -(p-1), and AC_b((p-1)/4) = 0 when p = 1 mod 4.
AcbVector acb_vector(uint64_t p, uint64_t beta);

// AC_b(tau') for any tau' in [1, p-2], reconstructed from the reduced vector.
int64_t acb_full(const AcbVector& acb, uint64_t tau_prime);

// Closed-form AC of the LSB sequence of the m-sequence on ctx (n >= 2):
// p^{n-2}-1 off the M-multiples, (AC_b(tau/M)+1)p^{n-1}-1 on them.
int64_t predicted_ac(const FieldContext& ctx, const AcbVector& acb, uint64_t tau);

struct ClosedFormReport {
    uint64_t N = 0;
    bool sampled = false;
    uint64_t checked = 0;
    std::vector<uint64_t> mismatches;  // tau values where brute != predicted
};

// Compare brute-force AC against the closed form: every tau when N fits the
// brute cap, otherwise all M-multiples plus a seeded random sample.
ClosedFormReport verify_closed_form(const FieldContext& ctx, const BinarySequence& lsb,
                                    uint64_t brute_cap = kDefaultBruteCap,
                                    uint64_t sample = kDefaultSampleSize,
                                    uint64_t seed = kDefaultSeed);
ClosedFormReport verify_closed_form(const FieldContext& ctx,
                                    uint64_t brute_cap = kDefaultBruteCap,
                                    uint64_t sample = kDefaultSampleSize,
                                    uint64_t seed = kDefaultSeed);

struct AcbTableRow {
    uint64_t p = 0;
    std::vector<uint64_t> betas;
    std::vector<int64_t> acb;
};

// Reduced-AC table rows for every odd prime p <= p_max, using the reference
// betas where the bundled table lists them and the least primitive root
// otherwise. Requires p_max <= 1000.
std::vector<AcbTableRow> acb_table(uint64_t p_max);

// Bundled reference table (all odd primes below 100).
const std::vector<AcbTableRow>& reference_acb_table();

struct AcbTableDiff {
    uint64_t p = 0;
    uint64_t beta = 0;
    uint64_t index = 0;  // 1-based position in AC_b(I), 0 = length mismatch
    int64_t computed = 0;
    int64_t reference = 0;
};

// Computed-vs-reference diff for all reference rows with p <= p_max.
std::vector<AcbTableDiff> acb_table_diff(uint64_t p_max);

// True when every |AC_b(tau')| <= (p-1)/3 off the midpoint (an observed
// range, reported rather than asserted).
bool acb_within_observed_range(const AcbVector& acb);

std::string to_csv(const AcProfile& profile);

}  // namespace lsbseq
