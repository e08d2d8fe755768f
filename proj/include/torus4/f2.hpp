#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace torus4 {

// Bit vector over F2 backed by 64-bit words. Unused tail bits stay zero.
struct BitVec {
    std::size_t n = 0;
    std::vector<std::uint64_t> w;

    BitVec() = default;
    explicit BitVec(std::size_t bits) : n(bits), w((bits + 63) / 64, 0) {}

    bool get(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void flip(std::size_t i) { w[i >> 6] ^= std::uint64_t(1) << (i & 63); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }
    void clear();

    BitVec& operator^=(const BitVec& o);
    bool operator==(const BitVec& o) const { return n == o.n && w == o.w; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    std::size_t popcount() const;
    bool is_zero() const;
    // parity of <a, b> over F2
    static bool dot(const BitVec& a, const BitVec& b);
    std::vector<std::size_t> ones() const;
    // index of lowest set bit, or n if zero
    std::size_t lowest() const;
    std::uint64_t hash() const;
};

BitVec operator^(BitVec a, const BitVec& b);

// Dense F2 matrix stored row-wise as BitVecs.
struct F2Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<BitVec> row;

    F2Matrix() = default;
    F2Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), row(r, BitVec(c)) {}

    static F2Matrix identity(std::size_t nn);
    static F2Matrix from_support(std::size_t r, std::size_t c,
                                 const std::vector<std::vector<std::size_t>>& support);

    bool get(std::size_t i, std::size_t j) const { return row[i].get(j); }
    void set(std::size_t i, std::size_t j) { row[i].set(j); }

    // y = A x, x has dim cols
    BitVec mul(const BitVec& x) const;
    // y = x^T A, x has dim rows
    BitVec mul_left(const BitVec& x) const;
    F2Matrix times(const F2Matrix& b) const;
    F2Matrix transposed() const;
    F2Matrix vstack(const F2Matrix& below) const;
    std::size_t rank() const;
    std::vector<std::vector<std::size_t>> support() const;
};

// Row echelon accumulator: supports incremental insert, membership and solve.
struct Echelon {
    std::size_t cols = 0;
    std::vector<BitVec> rows;          // reduced rows, one pivot each
    std::vector<std::size_t> pivots;   // pivot column of rows[i]

    Echelon() = default;
    explicit Echelon(std::size_t c) : cols(c) {}
    explicit Echelon(const F2Matrix& m);

    // reduce v in place against current rows; returns true if v becomes zero
    bool reduce(BitVec& v) const;
    // reduce then insert if nonzero; returns true if rank grew
    bool add(BitVec v);
    bool contains(const BitVec& v) const {
        BitVec t = v;
        return reduce(t);
    }
    std::size_t rank() const { return rows.size(); }
};

// basis of { x : A x = 0 }
std::vector<BitVec> kernel_basis(const F2Matrix& a);

// one solution of A x = b, if any
bool solve(const F2Matrix& a, const BitVec& b, BitVec& x_out);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace torus4
