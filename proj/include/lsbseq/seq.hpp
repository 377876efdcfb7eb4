#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsbseq/gf.hpp"

namespace lsbseq {

inline constexpr uint64_t kDefaultMaxPeriod = 10'000'000;

// Periodic sequence over F_p, one byte per symbol (p < 256 at working scale).
struct PArySequence {
    uint64_t p = 0;
    std::vector<uint8_t> values;

    uint64_t period() const { return values.size(); }
};

enum class Provenance { lsb, bit_component, b_seq, external };

// Bit-packed periodic binary sequence (LSB-first within 64-bit words).
class BinarySequence {
public:
    BinarySequence() = default;
    explicit BinarySequence(uint64_t n_bits, Provenance prov = Provenance::external);
    static BinarySequence from_bits(const std::vector<uint8_t>& bits,
                                    Provenance prov = Provenance::external);

    uint64_t period() const { return n_bits_; }
    bool get(uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(uint64_t i, bool v);
    uint64_t weight() const;
    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint8_t> unpacked() const;

    Provenance provenance = Provenance::external;
    int component_index = 0;  // i for bit_component provenance, else 0
    // Sequence origin, carried into exports when known.
    uint64_t p = 0;
    unsigned n = 0;
    uint64_t beta = 0;

    bool operator==(const BinarySequence& o) const {
        return n_bits_ == o.n_bits_ && words_ == o.words_;
    }

private:
    uint64_t n_bits_ = 0;
    std::vector<uint64_t> words_;
};

// a_t = Tr(alpha^t), t = 0..p^n-2, via the trace-linear recurrence on
// alpha's minimal polynomial.
PArySequence m_sequence(const FieldContext& ctx, uint64_t max_period = kDefaultMaxPeriod);

// Bit i-1 of the binary expansion of a_t, with 0 in F_p written as p
// (zero_as_p=false is the exploratory alternative, not used by any check).
BinarySequence bit_component(const PArySequence& seq, unsigned i, bool zero_as_p = true);

BinarySequence lsb_sequence(const PArySequence& seq);

// b_j = beta^j mod 2, period p-1, beta a primitive root mod p.
BinarySequence b_sequence(uint64_t p, uint64_t beta);

// Left cyclic shift: out[t] = in[(t + tau) mod N].
BinarySequence cyclic_shift(const BinarySequence& seq, uint64_t tau);

// Least tau with cyclic_shift(a, tau) == b, or nullopt. KMP on the doubled
// sequence, O(N).
std::optional<uint64_t> shift_offset(const BinarySequence& a, const BinarySequence& b);

unsigned bits_per_symbol(uint64_t p);  // ceil(log2 p)

// Raw bit files are LSB-first within bytes; JSON carries base64 bits plus origin.
std::vector<uint8_t> to_raw_bytes(const BinarySequence& seq);
BinarySequence from_raw_bytes(const std::vector<uint8_t>& bytes, uint64_t n_bits);
std::string to_json(const BinarySequence& seq);
BinarySequence binary_sequence_from_json(const std::string& text);

}  // namespace lsbseq
