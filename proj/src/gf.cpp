#include "lsbseq/gf.hpp"

#include <json.hpp>

namespace lsbseq {

namespace {

uint64_t checked_field_order(uint64_t p, unsigned n) {
    uint64_t order = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (order > (UINT64_MAX - 1) / p) throw std::invalid_argument("field order overflows 64 bits");
        order *= p;
    }
    return order - 1;
}

}  // namespace

ExtFieldElement FieldContext::zero() const { return {std::vector<uint32_t>(n, 0)}; }

ExtFieldElement FieldContext::one() const { return from_constant(1); }

ExtFieldElement FieldContext::from_constant(uint64_t c) const {
    auto e = zero();
    e.coeffs[0] = static_cast<uint32_t>(c % p);
    return e;
}

ExtFieldElement FieldContext::x() const {
    auto e = zero();
    if (n == 1)
        e.coeffs[0] = static_cast<uint32_t>((p - modulus[0] % p) % p);  // root of x + c0
    else
        e.coeffs[1] = 1;
    return e;
}

ExtFieldElement FieldContext::add(const ExtFieldElement& a, const ExtFieldElement& b) const {
    ExtFieldElement r = a;
    for (unsigned i = 0; i < n; ++i) r.coeffs[i] = static_cast<uint32_t>((uint64_t(a.coeffs[i]) + b.coeffs[i]) % p);
    return r;
}

ExtFieldElement FieldContext::sub(const ExtFieldElement& a, const ExtFieldElement& b) const {
    ExtFieldElement r = a;
    for (unsigned i = 0; i < n; ++i) r.coeffs[i] = static_cast<uint32_t>((uint64_t(a.coeffs[i]) + p - b.coeffs[i]) % p);
    return r;
}

ExtFieldElement FieldContext::mul(const ExtFieldElement& a, const ExtFieldElement& b) const {
    std::vector<uint64_t> prod(2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i) {
        if (!a.coeffs[i]) continue;
        for (unsigned j = 0; j < n; ++j)
            prod[i + j] = (prod[i + j] + uint64_t(a.coeffs[i]) * b.coeffs[j]) % p;
    }
    for (unsigned i = 2 * n - 2; i >= n && i < 2 * n; --i) {
        uint64_t c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < n; ++j)
            prod[i - n + j] = (prod[i - n + j] + (p - modulus[j] % p) * c) % p;
    }
    ExtFieldElement r = zero();
    for (unsigned i = 0; i < n; ++i) r.coeffs[i] = static_cast<uint32_t>(prod[i]);
    return r;
}

ExtFieldElement FieldContext::pow(const ExtFieldElement& a, uint64_t e) const {
    ExtFieldElement r = one();
    ExtFieldElement base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

ExtFieldElement FieldContext::inverse(const ExtFieldElement& a) const {
    if (is_zero(a)) throw std::invalid_argument("inverse of zero");
    return pow(a, order - 1);
}

bool FieldContext::is_one(const ExtFieldElement& a) const {
    if (a.coeffs[0] != 1) return false;
    for (unsigned i = 1; i < n; ++i)
        if (a.coeffs[i]) return false;
    return true;
}

bool FieldContext::is_zero(const ExtFieldElement& a) const {
    for (unsigned i = 0; i < n; ++i)
        if (a.coeffs[i]) return false;
    return true;
}

uint32_t FieldContext::trace(const ExtFieldElement& a) const {
    ExtFieldElement acc = a;
    ExtFieldElement t = a;
    for (unsigned i = 1; i < n; ++i) {
        t = pow(t, p);  // Frobenius
        acc = add(acc, t);
    }
    for (unsigned i = 1; i < n; ++i)
        if (acc.coeffs[i]) throw std::logic_error("trace did not land in the prime field");
    return acc.coeffs[0];
}

namespace {

bool has_full_order(const FieldContext& ctx, const ExtFieldElement& a) {
    if (!ctx.is_one(ctx.pow(a, ctx.order))) return false;
    for (uint64_t q : ctx.order_factorization.primes())
        if (ctx.is_one(ctx.pow(a, ctx.order / q))) return false;
    return true;
}

}  // namespace

std::vector<uint32_t> FieldContext::alpha_min_poly() const {
    if (alpha_exponent == 1) return modulus;
    // Solve sum_{j<n} c_j alpha^j = -alpha^n on the power basis of the scan root.
    std::vector<std::vector<uint64_t>> A(n, std::vector<uint64_t>(n + 1, 0));
    ExtFieldElement pw = one();
    for (unsigned j = 0; j < n; ++j) {
        for (unsigned i = 0; i < n; ++i) A[i][j] = pw.coeffs[i];
        pw = mul(pw, alpha);
    }
    for (unsigned i = 0; i < n; ++i) A[i][n] = (p - pw.coeffs[i] % p) % p;  // -alpha^n
    // Gaussian elimination mod p
    for (unsigned col = 0, row = 0; col < n; ++col, ++row) {
        unsigned piv = row;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("alpha powers are linearly dependent");
        std::swap(A[piv], A[row]);
        uint64_t inv = nt::mod_pow(A[row][col], p - 2, p);
        for (unsigned j = col; j <= n; ++j) A[row][j] = A[row][j] * inv % p;
        for (unsigned i = 0; i < n; ++i) {
            if (i == row || A[i][col] == 0) continue;
            uint64_t f = A[i][col];
            for (unsigned j = col; j <= n; ++j)
                A[i][j] = (A[i][j] + (p - A[row][j]) * f) % p;
        }
    }
    std::vector<uint32_t> mp(n + 1, 1);
    for (unsigned i = 0; i < n; ++i) mp[i] = static_cast<uint32_t>(A[i][n]);
    mp[n] = 1;
    return mp;
}

std::string FieldContext::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["n"] = n;
    j["modulus_poly"] = modulus;
    j["alpha_exponent_base_scan"] = alpha_exponent;
    j["beta"] = beta;
    return j.dump();
}

FieldContext build_field(uint64_t p, unsigned n) {
    if (!nt::is_prime(p) || p == 2) throw std::invalid_argument("build_field: p must be an odd prime");
    if (n < 1) throw std::invalid_argument("build_field: n must be >= 1");
    FieldContext ctx;
    ctx.p = p;
    ctx.n = n;
    ctx.order = checked_field_order(p, n);
    ctx.order_factorization = nt::factorize(ctx.order);
    ctx.M = ctx.order / (p - 1);
    ctx.alpha_exponent = 1;

    if (n == 1) {
        uint64_t g = nt::least_primitive_root(p);
        ctx.modulus = {static_cast<uint32_t>(p - g), 1};  // x - g
        ctx.alpha = ExtFieldElement{{static_cast<uint32_t>(g)}};
        ctx.beta = g;
        return ctx;
    }

    // Scan monic polys by base-p coefficient value; take the first whose
    // residue class x reaches full multiplicative order (which also certifies
    // irreducibility).
    for (uint64_t v = 0; v <= ctx.order; ++v) {
        uint64_t c0 = v % p;
        if (c0 == 0) continue;  // x | modulus
        ctx.modulus.assign(n + 1, 0);
        uint64_t vv = v;
        for (unsigned i = 0; i < n; ++i) {
            ctx.modulus[i] = static_cast<uint32_t>(vv % p);
            vv /= p;
        }
        ctx.modulus[n] = 1;
        ExtFieldElement cand = ctx.x();
        if (has_full_order(ctx, cand)) {
            ctx.alpha = cand;
            ExtFieldElement b = ctx.pow(cand, ctx.M);
            for (unsigned i = 1; i < n; ++i)
                if (b.coeffs[i]) throw std::logic_error("alpha^M is not in the prime field");
            ctx.beta = b.coeffs[0];
            return ctx;
        }
    }
    throw std::logic_error("build_field: no primitive polynomial found");
}

FieldContext retarget_beta(const FieldContext& ctx, uint64_t beta_target) {
    beta_target %= ctx.p;
    if (!nt::is_primitive_root(beta_target, ctx.p))
        throw std::invalid_argument("retarget_beta: target is not a primitive root mod p");
    auto c = nt::discrete_log(ctx.beta, beta_target, ctx.p);
    if (!c) throw std::logic_error("retarget_beta: discrete log not found");
    uint64_t e = *c;
    while (nt::gcd_u64(e, ctx.order) != 1) e += ctx.p - 1;
    FieldContext out = ctx;
    out.alpha = ctx.pow(ctx.alpha, e);
    out.alpha_exponent = nt::mul_mod(ctx.alpha_exponent, e, ctx.order);
    ExtFieldElement b = out.pow(out.alpha, out.M);
    for (unsigned i = 1; i < out.n; ++i)
        if (b.coeffs[i]) throw std::logic_error("retarget_beta: alpha^M left the prime field");
    out.beta = b.coeffs[0];
    if (out.beta != beta_target) throw std::logic_error("retarget_beta: exponent search failed");
    return out;
}

}  // namespace lsbseq
