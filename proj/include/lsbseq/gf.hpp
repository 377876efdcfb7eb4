#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsbseq/numtheory.hpp"

namespace lsbseq {

// Element of GF(p^n) as a dense coefficient vector, coeffs[i] * x^i, all in [0, p).
struct ExtFieldElement {
    std::vector<uint32_t> coeffs;

    bool operator==(const ExtFieldElement&) const = default;
};

// GF(p^n) with a fixed primitive element alpha. Immutable after construction.
//
// The modulus is the first monic degree-n polynomial, ordered by its base-p
// coefficient value sum(c_i p^i), whose residue class x is primitive; for
// n = 1 the convention is alpha = least primitive root of p with modulus
// x - alpha. beta = alpha^M with M = (p^n-1)/(p-1) is a primitive root mod p.
class FieldContext {
public:
    uint64_t p = 0;
    unsigned n = 0;
    std::vector<uint32_t> modulus;  // length n+1, monic
    ExtFieldElement alpha;
    nt::Factorization order_factorization;  // of p^n - 1
    uint64_t order = 0;                     // p^n - 1
    uint64_t M = 0;                         // (p^n-1)/(p-1)
    uint64_t beta = 0;                      // alpha^M as an element of F_p
    uint64_t alpha_exponent = 1;            // alpha = (scan alpha)^alpha_exponent

    ExtFieldElement zero() const;
    ExtFieldElement one() const;
    ExtFieldElement from_constant(uint64_t c) const;
    ExtFieldElement x() const;

    ExtFieldElement add(const ExtFieldElement& a, const ExtFieldElement& b) const;
    ExtFieldElement sub(const ExtFieldElement& a, const ExtFieldElement& b) const;
    ExtFieldElement mul(const ExtFieldElement& a, const ExtFieldElement& b) const;
    ExtFieldElement pow(const ExtFieldElement& a, uint64_t e) const;
    ExtFieldElement inverse(const ExtFieldElement& a) const;
    bool is_one(const ExtFieldElement& a) const;
    bool is_zero(const ExtFieldElement& a) const;

    // Tr(x) = x + x^p + ... + x^{p^{n-1}}, value in [0, p).
    uint32_t trace(const ExtFieldElement& a) const;

    // Minimal polynomial of alpha (monic, length n+1); drives the m-sequence
    // recurrence. Equals `modulus` unless alpha was retargeted.
    std::vector<uint32_t> alpha_min_poly() const;

    std::string to_json() const;
};

FieldContext build_field(uint64_t p, unsigned n);

// Replace alpha by alpha^e so that the new beta equals beta_target (a
// primitive root mod p); e = c + k(p-1) for the smallest k >= 0 keeping
// alpha^e primitive, where beta^c = beta_target.
FieldContext retarget_beta(const FieldContext& ctx, uint64_t beta_target);

}  // namespace lsbseq
