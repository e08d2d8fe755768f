#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace torus4 {

using Point = std::array<std::int64_t, 4>;
using Basis4 = std::array<std::array<std::int64_t, 4>, 4>;

// Row-style Hermite normal form of a rank-4 integer lattice in Z^4.
// Rows are the generating vectors: upper triangular, positive diagonal,
// entries above the diagonal reduced modulo the diagonal of their column.
struct Hnf {
    Basis4 a{};

    std::int64_t det() const { return a[0][0] * a[1][1] * a[2][2] * a[3][3]; }
    bool valid() const;
    bool operator==(const Hnf& o) const { return a == o.a; }

    // flat (a11,a12,a13,a14,a22,a23,a24,a33,a34,a44) layout used on the CLI
    static Hnf from_flat(const std::array<std::int64_t, 10>& v);
    std::array<std::int64_t, 10> to_flat() const;
    std::string str() const;
};

// Reduce an arbitrary integer basis to HNF. Throws std::invalid_argument if
// the rows do not span a full-rank lattice.
Hnf hnf_reduce(const Basis4& basis);

// Canonical coset representative with 0 <= p[i] < a[i][i]: coordinate i is
// reduced with row i, in order 0..3, each step re-adjusting later coordinates.
Point canonicalize(const Hnf& h, Point p);

// k-cell of the quotient torus: canonical base point plus a set of free
// directions encoded as a 4-bit mask.
struct Cell {
    Point base{};
    std::uint8_t dirs = 0;

    int dim() const { return __builtin_popcount(dirs); }
    bool operator==(const Cell& o) const { return base == o.base && dirs == o.dirs; }
    std::string str() const;
};

// Stable cell indexing: direction subsets in lexicographic order of their
// sorted element tuples (for 2-cells: xy, xz, xw, yz, yw, zw), then base
// points in lexicographic order via mixed-radix ranking on the diagonal.
struct CellIndexer {
    Hnf h;
    std::int64_t det = 0;

    explicit CellIndexer(const Hnf& hh);

    std::int64_t num_cells(int k) const;
    std::int64_t point_rank(const Point& p) const;
    Point point_at(std::int64_t r) const;
    std::int64_t index(const Cell& c) const;
    Cell cell_at(int k, std::int64_t idx) const;

    // subsets of {0,1,2,3} of size k, in the stable order
    static const std::vector<std::uint8_t>& dir_subsets(int k);
    static int subset_rank(std::uint8_t dirs);
};

std::vector<Cell> enumerate_cells(const Hnf& h, int k);

// Boundary of a k-cell: 2k cells of dimension k-1, listed with multiplicity
// (pairs may coincide after canonicalization; parity is taken downstream).
std::vector<Cell> boundary_cells(const Hnf& h, const Cell& c);
// Coboundary: 2(4-k) cells of dimension k+1, with multiplicity.
std::vector<Cell> coboundary_cells(const Hnf& h, const Cell& c);

// All HNF matrices of a given determinant, in lexicographic order of the flat
// tuple. Bounded utility: throws std::length_error if more than `limit` exist.
std::vector<Hnf> enumerate_hnfs(std::int64_t det, std::size_t limit);

std::int64_t floor_div(std::int64_t a, std::int64_t b);

}  // namespace torus4
