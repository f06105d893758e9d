// Executable oracle for the radix-4 Booth partial-product theory, plus
// the 3:2 / 4:2 compressor reference functions.
#pragma once

#include <cstdint>
#include <utility>

#include "masc/numeric.hpp"

namespace masc::booth {

// Booth digit i of the multiplier y: y[2i-1] + y[2i] - 2*y[2i+1], in [-2,2].
Int theta(std::int64_t i, const Int& y);

// Partial-product mux: x, ~x, 2x, ~(2x) or 0 over n bits, selected by
// theta_i. The complement is the n-bit slice of lognot.
Int bmux4(std::int64_t i, const Int& x, const Int& y, std::int64_t n);

// 1 iff theta_i < 0.
int neg(std::int64_t i, const Int& y);

// Aligned partial product i (width n+2m), and the modified variant whose
// row 0 absorbs the 2^n correction: pp4p(0) = pp4(0) + 2^n.
Int pp4(std::int64_t i, const Int& x, const Int& y, std::int64_t m,
        std::int64_t n);
Int pp4p(std::int64_t i, const Int& x, const Int& y, std::int64_t m,
         std::int64_t n);

// S and S': satisfy 2^n + S = 2^(n+2m) + xy and bits(S', n+2m-1, 0) = xy.
Int sumPP4(const Int& x, const Int& y, std::int64_t m, std::int64_t n);
Int sumPP4p(const Int& x, const Int& y, std::int64_t m, std::int64_t n);

// 64-bit carry-save compressors: (sum + carry) mod 2^64 equals the sum of
// the inputs mod 2^64.
std::pair<Int, Int> compress32(const Int& a, const Int& b, const Int& c);
std::pair<Int, Int> compress42(const Int& a, const Int& b, const Int& c,
                               const Int& d);

// 64-bit truncated sum of the first k entries of an array of values.
Int sumSimple(const Int* entries, std::size_t k);

}  // namespace masc::booth
