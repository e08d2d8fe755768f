#include "torus4/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace torus4 {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

bool Hnf::valid() const {
    for (int i = 0; i < 4; ++i) {
        if (a[i][i] <= 0) return false;
        for (int j = 0; j < i; ++j)
            if (a[i][j] != 0) return false;
        for (int j = i + 1; j < 4; ++j)
            if (a[i][j] < 0 || a[i][j] >= a[j][j]) return false;
    }
    return true;
}

Hnf Hnf::from_flat(const std::array<std::int64_t, 10>& v) {
    Hnf h;
    h.a = {{{v[0], v[1], v[2], v[3]},
            {0, v[4], v[5], v[6]},
            {0, 0, v[7], v[8]},
            {0, 0, 0, v[9]}}};
    if (!h.valid()) throw std::invalid_argument("not a valid HNF tuple: " + h.str());
    return h;
}

std::array<std::int64_t, 10> Hnf::to_flat() const {
    return {a[0][0], a[0][1], a[0][2], a[0][3], a[1][1],
            a[1][2], a[1][3], a[2][2], a[2][3], a[3][3]};
}

std::string Hnf::str() const {
    std::ostringstream os;
    auto f = to_flat();
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    return os.str();
}

Hnf hnf_reduce(const Basis4& basis) {
    Basis4 m = basis;
    // column-by-column integer row reduction (gcd steps act on rows)
    for (int c = 0; c < 4; ++c) {
        // bring a nonzero entry in column c to row c, gcd out the rest
        for (int r = c + 1; r < 4; ++r) {
            while (m[r][c] != 0) {
                if (m[c][c] == 0) {
                    std::swap(m[c], m[r]);
                    continue;
                }
                std::int64_t q = floor_div(m[r][c], m[c][c]);
                for (int j = 0; j < 4; ++j) m[r][j] -= q * m[c][j];
                if (m[r][c] != 0) std::swap(m[c], m[r]);
            }
        }
        if (m[c][c] == 0)
            throw std::invalid_argument("degenerate lattice: basis rows are not full rank");
        if (m[c][c] < 0)
            for (int j = 0; j < 4; ++j) m[c][j] = -m[c][j];
        // reduce entries above the pivot into [0, pivot)
        for (int r = 0; r < c; ++r) {
            std::int64_t q = floor_div(m[r][c], m[c][c]);
            if (q != 0)
                for (int j = 0; j < 4; ++j) m[r][j] -= q * m[c][j];
        }
    }
    Hnf h;
    h.a = m;
    if (!h.valid()) throw std::logic_error("hnf_reduce produced an invalid HNF");
    return h;
}

Point canonicalize(const Hnf& h, Point p) {
    for (int i = 0; i < 4; ++i) {
        std::int64_t q = floor_div(p[i], h.a[i][i]);
        if (q != 0)
            for (int j = i; j < 4; ++j) p[j] -= q * h.a[i][j];
    }
    return p;
}

std::string Cell::str() const {
    std::ostringstream os;
    os << "(";
    for (int d = 0; d < 4; ++d)
        if (dirs & (1 << d)) os << "xyzw"[d];
    os << ";" << base[0] << "," << base[1] << "," << base[2] << "," << base[3] << ")";
    return os.str();
}

CellIndexer::CellIndexer(const Hnf& hh) : h(hh), det(hh.det()) {
    if (!h.valid()) throw std::invalid_argument("CellIndexer: invalid HNF");
}

const std::vector<std::uint8_t>& CellIndexer::dir_subsets(int k) {
    static const std::array<std::vector<std::uint8_t>, 5> tables = [] {
        std::array<std::vector<std::uint8_t>, 5> t;
        // masks sorted by their sorted element tuple == ascending numeric order
        // of the mask with bit d meaning direction d
        for (std::uint8_t m = 0; m < 16; ++m) t[__builtin_popcount(m)].push_back(m);
        for (auto& v : t)
            std::sort(v.begin(), v.end(), [](std::uint8_t x, std::uint8_t y) {
                // lexicographic on element tuples: compare lowest differing dir
                std::uint8_t d = x ^ y;
                if (!d) return false;
                int b = __builtin_ctz(d);
                return ((x >> b) & 1) != 0;
            });
        return t;
    }();
    if (k < 0 || k > 4) throw std::out_of_range("dir_subsets: k out of range");
    return tables[k];
}

int CellIndexer::subset_rank(std::uint8_t dirs) {
    const auto& subs = dir_subsets(__builtin_popcount(dirs));
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i] == dirs) return static_cast<int>(i);
    throw std::logic_error("subset_rank: unreachable");
}

std::int64_t CellIndexer::num_cells(int k) const {
    static const int binom[5] = {1, 4, 6, 4, 1};
    if (k < 0 || k > 4) throw std::out_of_range("num_cells: k out of range");
    return binom[k] * det;
}

std::int64_t CellIndexer::point_rank(const Point& p) const {
    std::int64_t r = 0;
    for (int i = 0; i < 4; ++i) {
        if (p[i] < 0 || p[i] >= h.a[i][i])
            throw std::out_of_range("point_rank: point is not canonical");
        r = r * h.a[i][i] + p[i];
    }
    return r;
}

Point CellIndexer::point_at(std::int64_t r) const {
    Point p{};
    for (int i = 3; i >= 0; --i) {
        p[i] = r % h.a[i][i];
        r /= h.a[i][i];
    }
    return p;
}

std::int64_t CellIndexer::index(const Cell& c) const {
    return subset_rank(c.dirs) * det + point_rank(c.base);
}

Cell CellIndexer::cell_at(int k, std::int64_t idx) const {
    if (idx < 0 || idx >= num_cells(k)) throw std::out_of_range("cell_at: index out of range");
    Cell c;
    c.dirs = dir_subsets(k)[static_cast<std::size_t>(idx / det)];
    c.base = point_at(idx % det);
    return c;
}

std::vector<Cell> enumerate_cells(const Hnf& h, int k) {
    CellIndexer ix(h);
    std::vector<Cell> out;
    out.reserve(static_cast<std::size_t>(ix.num_cells(k)));
    for (std::int64_t i = 0; i < ix.num_cells(k); ++i) out.push_back(ix.cell_at(k, i));
    return out;
}

std::vector<Cell> boundary_cells(const Hnf& h, const Cell& c) {
    std::vector<Cell> out;
    for (int d = 0; d < 4; ++d) {
        if (!(c.dirs & (1 << d))) continue;
        Cell lo, hi;
        lo.dirs = hi.dirs = static_cast<std::uint8_t>(c.dirs & ~(1 << d));
        lo.base = c.base;
        Point p = c.base;
        p[d] += 1;
        hi.base = canonicalize(h, p);
        out.push_back(lo);
        out.push_back(hi);
    }
    return out;
}

std::vector<Cell> coboundary_cells(const Hnf& h, const Cell& c) {
    std::vector<Cell> out;
    for (int d = 0; d < 4; ++d) {
        if (c.dirs & (1 << d)) continue;
        Cell at, below;
        at.dirs = below.dirs = static_cast<std::uint8_t>(c.dirs | (1 << d));
        at.base = c.base;
        Point p = c.base;
        p[d] -= 1;
        below.base = canonicalize(h, p);
        out.push_back(at);
        out.push_back(below);
    }
    return out;
}

std::vector<Hnf> enumerate_hnfs(std::int64_t det, std::size_t limit) {
    if (det <= 0) throw std::invalid_argument("enumerate_hnfs: determinant must be positive");
    std::vector<Hnf> out;
    // diagonal divisor splits, then free above-diagonal entries
    for (std::int64_t d0 = 1; d0 <= det; ++d0) {
        if (det % d0) continue;
        for (std::int64_t d1 = 1; d1 <= det / d0; ++d1) {
            if ((det / d0) % d1) continue;
            for (std::int64_t d2 = 1; d2 <= det / (d0 * d1); ++d2) {
                if ((det / (d0 * d1)) % d2) continue;
                std::int64_t d3 = det / (d0 * d1 * d2);
                std::array<std::int64_t, 10> f{};
                f[0] = d0;
                f[4] = d1;
                f[7] = d2;
                f[9] = d3;
                for (f[1] = 0; f[1] < d1; ++f[1])
                    for (f[2] = 0; f[2] < d2; ++f[2])
                        for (f[5] = 0; f[5] < d2; ++f[5])
                            for (f[3] = 0; f[3] < d3; ++f[3])
                                for (f[6] = 0; f[6] < d3; ++f[6])
                                    for (f[8] = 0; f[8] < d3; ++f[8]) {
                                        if (out.size() >= limit)
                                            throw std::length_error(
                                                "enumerate_hnfs: more matrices than limit");
                                        out.push_back(Hnf::from_flat(f));
                                    }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Hnf& x, const Hnf& y) {
        return x.to_flat() < y.to_flat();
    });
    return out;
}

}  // namespace torus4
