#include "torus4/homology.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "torus4/rng.hpp"

namespace torus4 {

namespace {

// invert a small F2 matrix; throws if singular
F2Matrix f2_invert(const F2Matrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("f2_invert: not square");
    std::vector<BitVec> a(m.row);
    F2Matrix inv = F2Matrix::identity(m.rows);
    for (std::size_t c = 0; c < m.cols; ++c) {
        std::size_t sel = m.rows;
        for (std::size_t r = c; r < m.rows; ++r)
            if (a[r].get(c)) {
                sel = r;
                break;
            }
        if (sel == m.rows) throw std::invalid_argument("f2_invert: singular matrix");
        std::swap(a[c], a[sel]);
        std::swap(inv.row[c], inv.row[sel]);
        for (std::size_t r = 0; r < m.rows; ++r)
            if (r != c && a[r].get(c)) {
                a[r] ^= a[c];
                inv.row[r] ^= inv.row[c];
            }
    }
    return inv;
}

// pick `want` vectors from `cands` that are independent modulo `mod_echelon`
std::vector<BitVec> quotient_basis(const std::vector<BitVec>& cands, Echelon mod_echelon,
                                   std::size_t want, const char* what) {
    std::vector<BitVec> out;
    for (const auto& v : cands) {
        if (out.size() == want) break;
        if (mod_echelon.add(v)) out.push_back(v);
    }
    if (out.size() != want)
        throw std::runtime_error(std::string(what) + ": expected quotient dimension not reached");
    return out;
}

F2Matrix rows_matrix(const std::vector<BitVec>& rows, std::size_t cols) {
    F2Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.row[i] = rows[i];
    return m;
}

}  // namespace

LogicalBasis logical_basis_linear(const CssCode& code) {
    std::size_t n = static_cast<std::size_t>(code.n);
    auto lx_raw = quotient_basis(kernel_basis(code.hz), Echelon(code.hx), 6, "X logicals");
    auto lz_raw = quotient_basis(kernel_basis(code.hx), Echelon(code.hz), 6, "Z logicals");

    F2Matrix pairing(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            if (BitVec::dot(lx_raw[i], lz_raw[j])) pairing.set(i, j);
    F2Matrix a = f2_invert(pairing);

    LogicalBasis basis;
    basis.lx = F2Matrix(6, n);
    basis.lz = rows_matrix(lz_raw, n);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t k = 0; k < 6; ++k)
            if (a.get(i, k)) basis.lx.row[i] ^= lx_raw[k];
    return basis;
}

BitVec row_cycle(const Hnf& h, int j) {
    if (j < 0 || j > 3) throw std::out_of_range("row_cycle: row index out of range");
    CellIndexer ix(h);
    BitVec cyc(static_cast<std::size_t>(ix.num_cells(1)));
    Point p{0, 0, 0, 0};
    for (int axis = 0; axis < 4; ++axis) {
        for (std::int64_t s = 0; s < h.a[j][axis]; ++s) {
            Cell e;
            e.dirs = static_cast<std::uint8_t>(1 << axis);
            e.base = canonicalize(h, p);
            cyc.flip(static_cast<std::size_t>(ix.index(e)));
            p[axis] += 1;
        }
    }
    return cyc;
}

std::vector<BitVec> one_cocycle_basis(const Hnf& h) {
    // cocycle condition: alpha vanishes on the boundary of every 2-cell
    F2Matrix d2 = boundary_matrix(h, 2);  // rows 1-cells, cols 2-cells
    std::vector<BitVec> ker = kernel_basis(d2.transposed());
    std::vector<BitVec> cycles(4);
    for (int j = 0; j < 4; ++j) cycles[j] = row_cycle(h, j);

    // evaluation of each kernel vector against the four row cycles
    F2Matrix eval_t(4, ker.size());  // row j: kernel vectors hitting cycle j
    for (std::size_t b = 0; b < ker.size(); ++b)
        for (int j = 0; j < 4; ++j)
            if (BitVec::dot(ker[b], cycles[j])) eval_t.set(static_cast<std::size_t>(j), b);

    std::vector<BitVec> alphas;
    for (int i = 0; i < 4; ++i) {
        BitVec rhs(4);
        rhs.set(static_cast<std::size_t>(i));
        BitVec coeff;
        if (!solve(eval_t, rhs, coeff))
            throw std::runtime_error("one_cocycle_basis: cycle pairing is degenerate");
        BitVec alpha(static_cast<std::size_t>(4 * h.det()));
        for (auto b : coeff.ones()) alpha ^= ker[b];
        alphas.push_back(std::move(alpha));
    }
    return alphas;
}

BitVec cup_product(const Hnf& h, const BitVec& a, const BitVec& b, CupConvention conv) {
    CellIndexer ix(h);
    if (a.n != static_cast<std::size_t>(ix.num_cells(1)) || b.n != a.n)
        throw std::invalid_argument("cup_product: inputs must be 1-cochains");
    BitVec out(static_cast<std::size_t>(ix.num_cells(2)));
    for (std::int64_t i = 0; i < ix.num_cells(2); ++i) {
        Cell f = ix.cell_at(2, i);
        int d1 = __builtin_ctz(f.dirs);
        int d2 = __builtin_ctz(static_cast<unsigned>(f.dirs) & (f.dirs - 1));
        if (d2 < d1) std::swap(d1, d2);

        auto edge_bit = [&](const BitVec& v, int dir, Point at) {
            Cell e;
            e.dirs = static_cast<std::uint8_t>(1 << dir);
            e.base = canonicalize(h, at);
            return v.get(static_cast<std::size_t>(ix.index(e)));
        };
        Point p1 = f.base;
        p1[d1] += 1;
        bool val = edge_bit(a, d1, f.base) && edge_bit(b, d2, p1);
        if (conv == CupConvention::TwoPath) {
            Point p2 = f.base;
            p2[d2] += 1;
            val ^= edge_bit(a, d2, f.base) && edge_bit(b, d1, p2);
        }
        if (val) out.set(static_cast<std::size_t>(i));
    }
    return out;
}

LogicalBasis cup_logical_basis(const CssCode& code, CupConvention conv) {
    auto alphas = one_cocycle_basis(code.h);
    std::size_t n = static_cast<std::size_t>(code.n);

    LogicalBasis basis;
    basis.lx = F2Matrix(6, n);
    Echelon stab(code.hx);
    std::size_t r = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            BitVec w = cup_product(code.h, alphas[i], alphas[j], conv);
            if (!code.hz.mul(w).is_zero())
                throw std::runtime_error("cup_logical_basis: cup product is not a cocycle for pair " +
                                         std::to_string(i) + "," + std::to_string(j));
            if (!stab.add(w))
                throw std::runtime_error("cup_logical_basis: degenerate cup class for pair " +
                                         std::to_string(i) + "," + std::to_string(j));
            basis.lx.row[r++] = w;
        }

    // Z side from linear algebra, re-pivoted against the cup X classes
    LogicalBasis lin = logical_basis_linear(code);
    F2Matrix pairing(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            if (BitVec::dot(basis.lx.row[i], lin.lz.row[j])) pairing.set(i, j);
    F2Matrix b = f2_invert(pairing).transposed();
    basis.lz = F2Matrix(6, n);
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t k = 0; k < 6; ++k)
            if (b.get(j, k)) basis.lz.row[j] ^= lin.lz.row[k];
    return basis;
}

namespace {

struct SideSearch {
    const F2Matrix* checks;       // syndrome matrix (hz for X side)
    const F2Matrix* other_stabs;  // quotient modulus (hx for X side)
    std::vector<BitVec> cols;     // columns of *checks
    Echelon stab_echelon;
    std::size_t n = 0, max_col_weight = 0;

    explicit SideSearch(const F2Matrix& ch, const F2Matrix& st)
        : checks(&ch), other_stabs(&st), stab_echelon(st), n(ch.cols) {
        F2Matrix t = ch.transposed();
        cols.assign(t.row.begin(), t.row.end());
        for (const auto& c : cols) max_col_weight = std::max(max_col_weight, c.popcount());
    }

    // depth-first streaming of supports of size w starting at `first`;
    // returns lexicographically first logical support found, empty if none
    std::vector<std::size_t> search_from(std::size_t first, int w) const {
        std::vector<std::size_t> chosen{first};
        BitVec syn = cols[first];
        std::vector<std::size_t> found;
        dfs(chosen, syn, w, found);
        return found;
    }

    bool dfs(std::vector<std::size_t>& chosen, BitVec& syn, int w,
             std::vector<std::size_t>& found) const {
        int remaining = w - static_cast<int>(chosen.size());
        if (remaining == 0) {
            if (!syn.is_zero()) return false;
            BitVec v(n);
            for (auto q : chosen) v.set(q);
            if (stab_echelon.contains(v)) return false;
            found = chosen;
            return true;
        }
        if (syn.popcount() > max_col_weight * static_cast<std::size_t>(remaining)) return false;
        for (std::size_t q = chosen.back() + 1; q + static_cast<std::size_t>(remaining) <= n + 1 && q < n; ++q) {
            chosen.push_back(q);
            syn ^= cols[q];
            if (dfs(chosen, syn, w, found)) return true;
            syn ^= cols[q];
            chosen.pop_back();
        }
        return false;
    }
};

// smallest weight in 1..w_max admitting a logical on this side, with its support
int exact_side(const F2Matrix& checks, const F2Matrix& other_stabs, int w_max, bool parallel,
               std::vector<std::size_t>& certificate) {
    SideSearch s(checks, other_stabs);
    for (int w = 1; w <= w_max; ++w) {
        std::vector<std::vector<std::size_t>> hits(s.n);
        if (parallel) {
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t first = 0; first < static_cast<std::int64_t>(s.n); ++first)
                hits[static_cast<std::size_t>(first)] =
                    s.search_from(static_cast<std::size_t>(first), w);
        } else {
            for (std::size_t first = 0; first < s.n; ++first) hits[first] = s.search_from(first, w);
        }
        for (const auto& hit : hits)
            if (!hit.empty()) {
                certificate = hit;
                return w;
            }
    }
    return -1;
}

}  // namespace

DistanceReport distance_exact(const CssCode& code, int w_max, bool parallel) {
    DistanceReport rep;
    rep.method = "exact";
    rep.exact = true;
    rep.w_max = w_max;
    rep.dx = exact_side(code.hz, code.hx, w_max, parallel, rep.certificate_x);
    rep.dz = exact_side(code.hx, code.hz, w_max, parallel, rep.certificate_z);
    if (rep.dx > 0 && rep.dz > 0)
        rep.d = std::min(rep.dx, rep.dz);
    else if (rep.dx > 0)
        rep.d = rep.dx;
    else if (rep.dz > 0)
        rep.d = rep.dz;
    return rep;
}

namespace {

struct TrialResult {
    std::size_t weight = SIZE_MAX;
    BitVec cert;
};

// greedy descent: repeatedly add stabilizer rows that strictly lower weight
void polish(BitVec& v, const std::vector<std::vector<std::size_t>>& stab_supports,
            const std::vector<const BitVec*>& stab_rows) {
    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        for (std::size_t i = 0; i < stab_supports.size(); ++i) {
            std::size_t inter = 0;
            for (auto q : stab_supports[i]) inter += v.get(q);
            if (2 * inter > stab_supports[i].size()) {
                v ^= *stab_rows[i];
                changed = true;
            }
        }
        if (!changed) break;
    }
}

// plateau walk: greedy descent plus weight-neutral moves at random and a
// trickle of small uphill moves, so the search can slide across flat regions
// and hop the low barriers the strict descent gets stuck behind
void plateau_polish(BitVec& v, Rng& rng, const std::vector<std::vector<std::size_t>>& stab_supports,
                    const std::vector<const BitVec*>& stab_rows, int sweeps) {
    BitVec cur = v;
    std::size_t best_w = v.popcount();
    for (int s = 0; s < sweeps; ++s) {
        for (std::size_t i = 0; i < stab_supports.size(); ++i) {
            std::size_t inter = 0;
            for (auto q : stab_supports[i]) inter += cur.get(q);
            std::ptrdiff_t delta = std::ptrdiff_t(stab_supports[i].size()) - 2 * std::ptrdiff_t(inter);
            bool take = delta < 0 || (delta == 0 && (rng.next() & 1)) ||
                        (delta == 2 && (rng.next() & 15) == 0);
            if (take) cur ^= *stab_rows[i];
        }
        std::size_t w = cur.popcount();
        if (w < best_w) {
            best_w = w;
            v = cur;
        }
    }
}

struct BoundSide {
    std::vector<BitVec> gen_rows;  // independent stabilizer rows + logicals
    std::size_t n_stab_rows = 0;   // prefix of gen_rows that is stabilizer
    Echelon stab_echelon;
    std::vector<std::vector<std::size_t>> stab_supports;
    std::vector<const BitVec*> stab_rows;
    std::size_t n = 0;

    BoundSide(const F2Matrix& stabs, const F2Matrix& logicals) : n(stabs.cols) {
        Echelon e(stabs.cols);
        for (const auto& r : stabs.row)
            if (e.add(r)) gen_rows.push_back(r);
        n_stab_rows = gen_rows.size();
        stab_echelon = e;
        for (const auto& r : logicals.row) gen_rows.push_back(r);
        for (const auto& r : stabs.row) {
            stab_supports.push_back(r.ones());
            stab_rows.push_back(&r);
        }
    }

    void consider(BitVec v, TrialResult& best, Rng* rng = nullptr) const {
        if (v.is_zero() || stab_echelon.contains(v)) return;
        polish(v, stab_supports, stab_rows);
        if (rng && v.popcount() < best.weight + 8)
            plateau_polish(v, *rng, stab_supports, stab_rows, 24);
        std::size_t w = v.popcount();
        if (w < best.weight) {
            best.weight = w;
            best.cert = std::move(v);
        }
    }

    TrialResult seed_pass() const {
        TrialResult best;
        // all nonzero combinations of the logical rows
        std::size_t k = gen_rows.size() - n_stab_rows;
        for (std::uint32_t m = 1; m < (1u << k); ++m) {
            BitVec v(n);
            for (std::size_t j = 0; j < k; ++j)
                if (m & (1u << j)) v ^= gen_rows[n_stab_rows + j];
            consider(std::move(v), best);
        }
        return best;
    }

    TrialResult trial(Rng rng) const {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);

        std::vector<BitVec> work(gen_rows);
        std::vector<std::size_t> active(work.size());
        std::iota(active.begin(), active.end(), 0);
        std::size_t r = 0;
        for (std::size_t c : order) {
            if (r == work.size()) break;
            std::size_t sel = SIZE_MAX;
            for (std::size_t i = r; i < work.size(); ++i)
                if (work[i].get(c)) {
                    sel = i;
                    break;
                }
            if (sel == SIZE_MAX) continue;
            std::swap(work[r], work[sel]);
            for (std::size_t i = 0; i < work.size(); ++i)
                if (i != r && work[i].get(c)) work[i] ^= work[r];
            ++r;
        }

        TrialResult best;
        // harvest lightest rows
        std::vector<std::pair<std::size_t, std::size_t>> by_weight;
        by_weight.reserve(r);
        for (std::size_t i = 0; i < r; ++i) by_weight.emplace_back(work[i].popcount(), i);
        std::sort(by_weight.begin(), by_weight.end());
        std::size_t take = std::min<std::size_t>(12, by_weight.size());
        for (std::size_t i = 0; i < take; ++i) consider(work[by_weight[i].second], best, &rng);
        // harvest pairs on moderate ranks
        if (r <= 256) {
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = i + 1; j < r; ++j) {
                    BitVec v = work[i] ^ work[j];
                    if (v.popcount() < best.weight + 4) consider(std::move(v), best, &rng);
                }
        }
        return best;
    }
};

void merge_best(TrialResult& into, const TrialResult& from) {
    if (from.weight < into.weight) into = from;
}

int bound_side(const F2Matrix& stabs, const F2Matrix& logicals, int side_tag, int trials,
               std::uint64_t seed, bool parallel, std::vector<std::size_t>& certificate,
               std::vector<std::pair<int, int>>* trace_weights) {
    BoundSide side(stabs, logicals);
    TrialResult best = side.seed_pass();
    std::vector<std::size_t> trial_weight(static_cast<std::size_t>(trials), SIZE_MAX);
    std::vector<TrialResult> results(static_cast<std::size_t>(trials));

    auto run_trial = [&](int t) {
        Rng rng(seed, (static_cast<std::uint64_t>(side_tag) << 32) | static_cast<std::uint32_t>(t));
        results[static_cast<std::size_t>(t)] = side.trial(rng);
        trial_weight[static_cast<std::size_t>(t)] = results[static_cast<std::size_t>(t)].weight;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int t = 0; t < trials; ++t) run_trial(t);
    } else {
        for (int t = 0; t < trials; ++t) run_trial(t);
    }

    if (trace_weights) {
        std::size_t running = best.weight;
        for (int t = 0; t < trials; ++t) {
            running = std::min(running, trial_weight[static_cast<std::size_t>(t)]);
            if ((t + 1) % 1000 == 0 || t + 1 == trials)
                trace_weights->emplace_back(t + 1, running == SIZE_MAX ? -1 : static_cast<int>(running));
        }
    }
    for (int t = 0; t < trials; ++t) merge_best(best, results[static_cast<std::size_t>(t)]);
    if (best.weight == SIZE_MAX) return -1;

    // basin hopping around the champion: kick it with a few stabilizer rows,
    // walk back down, keep any strict improvement
    Rng rrng(seed, (static_cast<std::uint64_t>(side_tag) << 32) | 0xb0110);
    for (int k = 0; k < trials; ++k) {
        BitVec v = best.cert;
        for (int kick = 0; kick < 3; ++kick)
            v ^= *side.stab_rows[rrng.below(side.stab_rows.size())];
        polish(v, side.stab_supports, side.stab_rows);
        plateau_polish(v, rrng, side.stab_supports, side.stab_rows, 40);
        std::size_t w = v.popcount();
        if (w < best.weight && !side.stab_echelon.contains(v)) {
            best.weight = w;
            best.cert = std::move(v);
        }
    }
    certificate = best.cert.ones();
    return static_cast<int>(best.weight);
}

}  // namespace

DistanceReport distance_upper_bound(const CssCode& code, const LogicalBasis& basis, int trials,
                                    std::uint64_t seed, bool parallel) {
    DistanceReport rep;
    rep.method = "probabilistic";
    rep.exact = false;
    rep.seed = seed;
    rep.trials = trials;
    std::vector<std::pair<int, int>> trace_x, trace_z;
    rep.dx = bound_side(code.hx, basis.lx, 0, trials, seed, parallel, rep.certificate_x, &trace_x);
    rep.dz = bound_side(code.hz, basis.lz, 1, trials, seed, parallel, rep.certificate_z, &trace_z);
    rep.d = (rep.dx < 0 || rep.dz < 0) ? -1 : std::min(rep.dx, rep.dz);
    for (std::size_t i = 0; i < trace_x.size() && i < trace_z.size(); ++i)
        rep.trace.emplace_back(trace_x[i].first, std::min(trace_x[i].second, trace_z[i].second));
    return rep;
}

}  // namespace torus4
