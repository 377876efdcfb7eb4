#include "lsbseq/autocorr.hpp"

namespace lsbseq {

// Bundled reference values of AC_b(I) for all odd primes below 100, keyed by
// the primitive roots the reference lists for each prime.
const std::vector<AcbTableRow>& reference_acb_table() {
    static const std::vector<AcbTableRow> table = {
        {3, {2}, {}},
        {5, {2, 3}, {}},
        {7, {3, 5}, {2}},
        {11, {2, 6, 7, 8}, {-2, 2}},
        {13, {2, 6, 7, 11}, {0, -4}},
        {17, {3}, {4, 0, -4}},
        {19, {2}, {-2, 2, -2, -6}},
        {23, {5}, {2, -2, 2, -2, -6}},
        {29, {2}, {0, -4, 0, -4, 8, 4}},
        {31, {3}, {10, 6, 2, -2, -6, -2, 2}},
        {37, {2}, {0, -4, 0, 4, -8, 4, 0, -12}},
        {41, {6}, {4, -8, 4, 0, -12, 0, 4, 0, 4}},
        {43, {3}, {14, 2, -2, -6, -2, 2, 6, 2, -2, 2}},
        {47, {5}, {10, -2, -14, -2, 2, 6, 2, -2, -6, -2, 2}},
        {53, {2}, {0, -4, 0, -4, 8, 4, 0, -4, -16, 4, 0, -4}},
        {59, {2}, {-2, 2, -2, -6, -2, 10, -2, 18, -2, 2, -10, 2, -2, 2}},
        {61, {2}, {0, -4, 0, -4, 0, 20, 0, -12, 0, -4, -8, 4, 0, -4}},
        {67, {2}, {-2, 2, -2, 2, -2, -22, 6, 2, -2, -6, -2, 10, -2, -6, 14, 2}},
        {71, {7}, {10, 6, 2, -10, 2, -2, -14, -2, -22, -2, 2, -2, 2, -2, 2, 6, -6}},
        {73, {5}, {12, 0, -12, 0, 4, 24, 4, 0, -4, 0, 4, 8, 4, 0, -4, 0, 4}},
        {79, {3}, {26, 6, 2, -2, -6, -2, -6, -2, 2, 6, 2, -2, -6, -10, 2, 14, 2, -2, 2}},
        {83, {2}, {-2, 2, -2, -6, 6, -6, -2, 10, -2, 26, -2, 2, -2, -14, -2, 2, -2, 2, -2, 10}},
        {89, {3}, {28, 8, 4, 8, 4, 8, 12, 0, -4, 0, 4, 0, -4, 0, -4, 0, 4, 16, 4, 0, -4}},
        {97, {5}, {20, 0, -4, -8, 4, 0, 4, 0, -4, 8, 4, 0, 4, 0, 4, 0, -12, 0, 4, 0, -4, -32, -12}},
    };
    return table;
}

}  // namespace lsbseq
