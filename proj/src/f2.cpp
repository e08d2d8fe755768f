#include "torus4/f2.hpp"

#include <bit>
#include <stdexcept>

namespace torus4 {

void BitVec::clear() {
    for (auto& x : w) x = 0;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (n != o.n) throw std::invalid_argument("BitVec xor: size mismatch");
    for (std::size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
    return *this;
}

BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
}

bool BitVec::is_zero() const {
    for (auto x : w)
        if (x) return false;
    return true;
}

bool BitVec::dot(const BitVec& a, const BitVec& b) {
    if (a.n != b.n) throw std::invalid_argument("BitVec dot: size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.w.size(); ++i) acc ^= a.w[i] & b.w[i];
    return std::popcount(acc) & 1;
}

std::vector<std::size_t> BitVec::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t wi = 0; wi < w.size(); ++wi) {
        std::uint64_t x = w[wi];
        while (x) {
            out.push_back(wi * 64 + std::countr_zero(x));
            x &= x - 1;
        }
    }
    return out;
}

std::size_t BitVec::lowest() const {
    for (std::size_t wi = 0; wi < w.size(); ++wi)
        if (w[wi]) return wi * 64 + std::countr_zero(w[wi]);
    return n;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t BitVec::hash() const {
    std::uint64_t h = splitmix64(n);
    for (auto x : w) h = splitmix64(h ^ x);
    return h;
}

F2Matrix F2Matrix::identity(std::size_t nn) {
    F2Matrix m(nn, nn);
    for (std::size_t i = 0; i < nn; ++i) m.row[i].set(i);
    return m;
}

F2Matrix F2Matrix::from_support(std::size_t r, std::size_t c,
                                const std::vector<std::vector<std::size_t>>& support) {
    F2Matrix m(r, c);
    for (std::size_t i = 0; i < support.size(); ++i)
        for (auto j : support[i]) m.row[i].flip(j);
    return m;
}

BitVec F2Matrix::mul(const BitVec& x) const {
    if (x.n != cols) throw std::invalid_argument("F2Matrix mul: dim mismatch");
    BitVec y(rows);
    for (std::size_t i = 0; i < rows; ++i)
        if (BitVec::dot(row[i], x)) y.set(i);
    return y;
}

BitVec F2Matrix::mul_left(const BitVec& x) const {
    if (x.n != rows) throw std::invalid_argument("F2Matrix mul_left: dim mismatch");
    BitVec y(cols);
    for (std::size_t i = 0; i < rows; ++i)
        if (x.get(i)) y ^= row[i];
    return y;
}

F2Matrix F2Matrix::times(const F2Matrix& b) const {
    if (cols != b.rows) throw std::invalid_argument("F2Matrix times: dim mismatch");
    F2Matrix out(rows, b.cols);
    for (std::size_t i = 0; i < rows; ++i) out.row[i] = b.mul_left(row[i]);
    return out;
}

F2Matrix F2Matrix::transposed() const {
    F2Matrix out(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (auto j : row[i].ones()) out.row[j].set(i);
    return out;
}

F2Matrix F2Matrix::vstack(const F2Matrix& below) const {
    if (cols != below.cols) throw std::invalid_argument("F2Matrix vstack: dim mismatch");
    F2Matrix out(rows + below.rows, cols);
    for (std::size_t i = 0; i < rows; ++i) out.row[i] = row[i];
    for (std::size_t i = 0; i < below.rows; ++i) out.row[rows + i] = below.row[i];
    return out;
}

std::size_t F2Matrix::rank() const {
    Echelon e(cols);
    for (const auto& r : row) e.add(r);
    return e.rank();
}

std::vector<std::vector<std::size_t>> F2Matrix::support() const {
    std::vector<std::vector<std::size_t>> out(rows);
    for (std::size_t i = 0; i < rows; ++i) out[i] = row[i].ones();
    return out;
}

Echelon::Echelon(const F2Matrix& m) : cols(m.cols) {
    for (const auto& r : m.row) add(r);
}

bool Echelon::reduce(BitVec& v) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (v.get(pivots[i])) v ^= rows[i];
    return v.is_zero();
}

bool Echelon::add(BitVec v) {
    if (reduce(v)) return false;
    std::size_t p = v.lowest();
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
}

std::vector<BitVec> kernel_basis(const F2Matrix& a) {
    // Gauss-reduce a working copy, tracking pivot columns, then back-substitute
    // a kernel vector for every free column.
    std::vector<BitVec> work(a.row);
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols && r < work.size(); ++c) {
        std::size_t sel = work.size();
        for (std::size_t i = r; i < work.size(); ++i)
            if (work[i].get(c)) {
                sel = i;
                break;
            }
        if (sel == work.size()) continue;
        std::swap(work[r], work[sel]);
        for (std::size_t i = 0; i < work.size(); ++i)
            if (i != r && work[i].get(c)) work[i] ^= work[r];
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(a.cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<BitVec> basis;
    for (std::size_t c = 0; c < a.cols; ++c) {
        if (is_pivot[c]) continue;
        BitVec v(a.cols);
        v.set(c);
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            if (work[i].get(c)) v.set(pivot_col[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve(const F2Matrix& a, const BitVec& b, BitVec& x_out) {
    if (b.n != a.rows) throw std::invalid_argument("solve: dim mismatch");
    // eliminate on [A | b] rows
    std::vector<BitVec> work(a.row);
    BitVec rhs = b;
    std::vector<std::size_t> pivot_col;
    std::vector<std::size_t> pivot_row;
    // augmented representation: keep rhs bits alongside by index
    std::vector<bool> rb(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) rb[i] = rhs.get(i);
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols && r < work.size(); ++c) {
        std::size_t sel = work.size();
        for (std::size_t i = r; i < work.size(); ++i)
            if (work[i].get(c)) {
                sel = i;
                break;
            }
        if (sel == work.size()) continue;
        std::swap(work[r], work[sel]);
        std::swap(rb[r], rb[sel]);
        for (std::size_t i = 0; i < work.size(); ++i)
            if (i != r && work[i].get(c)) {
                work[i] ^= work[r];
                rb[i] = rb[i] ^ rb[r];
            }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < work.size(); ++i)
        if (rb[i]) return false;
    x_out = BitVec(a.cols);
    for (std::size_t i = 0; i < r; ++i)
        if (rb[i]) x_out.set(pivot_col[i]);
    return true;
}

}  // namespace torus4
