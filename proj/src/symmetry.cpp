#include "torus4/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace torus4 {

Point SignedPerm::apply(const Point& p) const {
    Point q{0, 0, 0, 0};
    for (int d = 0; d < 4; ++d) q[perm[d]] = sign[d] * p[d];
    return q;
}

std::vector<SignedPerm> all_signed_perms() {
    std::vector<SignedPerm> out;
    std::array<int, 4> pr{0, 1, 2, 3};
    do {
        for (int s = 0; s < 16; ++s) {
            SignedPerm sp;
            sp.perm = pr;
            for (int d = 0; d < 4; ++d) sp.sign[d] = (s >> d) & 1 ? -1 : 1;
            out.push_back(sp);
        }
    } while (std::next_permutation(pr.begin(), pr.end()));
    return out;
}

std::vector<SignedPerm> lattice_automorphisms(const Hnf& h) {
    std::vector<SignedPerm> keep;
    for (const SignedPerm& sp : all_signed_perms()) {
        Basis4 mapped{};
        for (int i = 0; i < 4; ++i) {
            Point r{h.a[i][0], h.a[i][1], h.a[i][2], h.a[i][3]};
            mapped[i] = sp.apply(r);
        }
        bool ok = true;
        try {
            ok = hnf_reduce(mapped) == h;
        } catch (const std::invalid_argument&) {
            ok = false;
        }
        if (ok) keep.push_back(sp);
    }
    return keep;
}

namespace {

using Coef = std::array<std::int64_t, 4>;

std::int64_t gram_ip(const std::array<Coef, 4>& g, const Coef& a, const Coef& b) {
    std::int64_t s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += a[i] * g[i][j] * b[j];
    return s;
}

// lattice vectors (as basis coefficients) of each squared length in `wanted`,
// found by enumerating the ellipsoid q(c) <= nmax with an LDL^T decomposition
std::map<std::int64_t, std::vector<Coef>> shell_vectors(const std::array<Coef, 4>& g,
                                                        std::int64_t nmax,
                                                        const std::set<std::int64_t>& wanted) {
    double d[4] = {0, 0, 0, 0}, l[4][4] = {};
    for (int i = 0; i < 4; ++i) {
        double di = double(g[i][i]);
        for (int k = 0; k < i; ++k) di -= d[k] * l[i][k] * l[i][k];
        d[i] = di;
        for (int j = i + 1; j < 4; ++j) {
            double v = double(g[j][i]);
            for (int k = 0; k < i; ++k) v -= l[j][k] * d[k] * l[i][k];
            l[j][i] = v / di;
        }
    }
    std::map<std::int64_t, std::vector<Coef>> out;
    for (std::int64_t w : wanted) out.emplace(w, std::vector<Coef>{});
    Coef c{0, 0, 0, 0};
    // descend i = 3..0; q(c) = sum_i d_i (c_i + sum_{j>i} l_{ji} c_j)^2
    auto rec = [&](auto&& self, int i, double used) -> void {
        if (i < 0) {
            std::int64_t q = gram_ip(g, c, c);
            auto it = out.find(q);
            if (q > 0 && it != out.end()) it->second.push_back(c);
            return;
        }
        double center = 0;
        for (int j = i + 1; j < 4; ++j) center += l[j][i] * double(c[j]);
        double room = std::sqrt(std::max(0.0, (double(nmax) - used) / d[i])) + 1e-9;
        std::int64_t lo = std::int64_t(std::ceil(-room - center));
        std::int64_t hi = std::int64_t(std::floor(room - center));
        for (std::int64_t v = lo; v <= hi; ++v) {
            c[i] = v;
            double t = double(v) + center;
            self(self, i - 1, used + d[i] * t * t);
        }
        c[i] = 0;
    };
    rec(rec, 3, 0.0);
    return out;
}

}  // namespace

std::uint64_t lattice_isometry_order(const Hnf& h) {
    std::array<Coef, 4> g{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) g[i][j] += h.a[i][k] * h.a[j][k];
    std::int64_t nmax = 0;
    std::set<std::int64_t> diag;
    for (int i = 0; i < 4; ++i) {
        diag.insert(g[i][i]);
        nmax = std::max(nmax, g[i][i]);
    }
    auto shells = shell_vectors(g, nmax, diag);
    // images of the four basis rows must reproduce the Gram matrix exactly;
    // matching norms and inner products forces a bijective isometry
    std::array<Coef, 4> pick{};
    auto rec = [&](auto&& self, int i) -> std::uint64_t {
        if (i == 4) return 1;
        std::uint64_t total = 0;
        for (const Coef& cand : shells.at(g[i][i])) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                if (gram_ip(g, cand, pick[j]) != g[i][j]) ok = false;
            if (!ok) continue;
            pick[i] = cand;
            total += self(self, i + 1);
        }
        return total;
    };
    return rec(rec, 0);
}

std::vector<std::int64_t> cell_permutation(const Hnf& h, const Isometry& g, int k) {
    CellIndexer ix(h);
    const std::int64_t n = ix.num_cells(k);
    std::vector<std::int64_t> out(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        Cell c = ix.cell_at(k, i);
        std::uint8_t dirs = 0;
        Point base = g.m.apply(c.base);
        for (int d = 0; d < 4; ++d) base[d] += g.shift[d];
        for (int d = 0; d < 4; ++d) {
            if (!(c.dirs >> d & 1)) continue;
            dirs |= std::uint8_t(1u << g.m.perm[d]);
            // a flipped direction spans [image-1, image] instead of [image, image+1]
            if (g.m.sign[d] < 0) base[g.m.perm[d]] -= 1;
        }
        Cell img{canonicalize(h, base), dirs};
        out[std::size_t(i)] = ix.index(img);
    }
    return out;
}

std::vector<std::vector<std::int64_t>> distinct_qubit_permutations(
    const Hnf& h, const std::vector<SignedPerm>& autos) {
    std::set<std::vector<std::int64_t>> seen;
    for (const SignedPerm& sp : autos) seen.insert(cell_permutation(h, Isometry{sp, {}}, 2));
    return {seen.begin(), seen.end()};
}

std::size_t count_logical_permutations(const CssCode& code, const LogicalBasis& basis) {
    std::set<std::vector<std::vector<std::size_t>>> seen;
    for (const SignedPerm& sp : lattice_automorphisms(code.h)) {
        FoldGate g = make_permutation_gate(cell_permutation(code.h, Isometry{sp, {}}, 2));
        seen.insert(logical_action({&g}, code, basis).s.support());
    }
    return seen.size();
}

namespace {

bool is_identity_perm(const std::vector<std::int64_t>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != std::int64_t(i)) return false;
    return true;
}

bool is_involution_perm(const std::vector<std::int64_t>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[std::size_t(p[i])] != std::int64_t(i)) return false;
    return true;
}

}  // namespace

std::vector<ZxDuality> find_zx_dualities(const CssCode& code) {
    const Hnf& h = code.h;
    CellIndexer ix(h);

    std::map<std::vector<std::size_t>, std::size_t> x_supports, z_supports;
    for (std::size_t r = 0; r < code.hx.rows; ++r) {
        auto s = code.hx.row[r].ones();
        x_supports.emplace(std::move(s), r);
    }
    for (std::size_t r = 0; r < code.hz.rows; ++r) {
        auto s = code.hz.row[r].ones();
        z_supports.emplace(std::move(s), r);
    }

    std::vector<ZxDuality> out;
    std::set<std::vector<std::int64_t>> seen;
    for (const SignedPerm& sp : lattice_automorphisms(h)) {
        for (std::int64_t t = 0; t < ix.det; ++t) {
            Isometry g{sp, ix.point_at(t)};
            std::vector<std::int64_t> perm = cell_permutation(h, g, 2);
            // compose with the direct<->dual identification: complement the
            // directions, keep the base
            for (std::int64_t& q : perm) {
                Cell c = ix.cell_at(2, q);
                q = ix.index(Cell{c.base, std::uint8_t(~c.dirs & 0xF)});
            }
            auto maps_rows = [&](const F2Matrix& from,
                                 const std::map<std::vector<std::size_t>, std::size_t>& into) {
                for (std::size_t r = 0; r < from.rows; ++r) {
                    std::vector<std::size_t> img;
                    for (std::size_t q : from.row[r].ones()) img.push_back(std::size_t(perm[q]));
                    std::sort(img.begin(), img.end());
                    if (!into.count(img)) return false;
                }
                return true;
            };
            if (!maps_rows(code.hx, z_supports) || !maps_rows(code.hz, x_supports)) continue;
            if (!seen.insert(perm).second) continue;
            ZxDuality d;
            d.g = g;
            d.involution = is_involution_perm(perm);
            d.qubit_perm = std::move(perm);
            out.push_back(std::move(d));
        }
    }
    return out;
}

Pauli Pauli::x_type(const BitVec& support) {
    Pauli p;
    p.x = support;
    p.z = BitVec(support.n);
    return p;
}

Pauli Pauli::z_type(const BitVec& support) {
    Pauli p;
    p.x = BitVec(support.n);
    p.z = support;
    return p;
}

Pauli& Pauli::operator*=(const Pauli& o) {
    // moving o's X block left through our Z block costs (-1) per overlap
    phase = std::uint8_t((phase + o.phase + 2 * int(BitVec::dot(z, o.x))) & 3);
    x ^= o.x;
    z ^= o.z;
    return *this;
}

Pauli FoldGate::conjugate(const Pauli& p) const {
    const std::size_t n = tau.size();
    if (p.x.n != n) throw std::invalid_argument("operator size does not match the gate");
    Pauli q = p;
    if (kind == FoldKind::HadamardType) {
        // per qubit X^a Z^b -> (-1)^{ab} X^b Z^a
        std::size_t both = 0;
        for (std::size_t i = 0; i < q.x.w.size(); ++i)
            both += std::size_t(__builtin_popcountll(q.x.w[i] & q.z.w[i]));
        q.phase = std::uint8_t((q.phase + 2 * (both & 1)) & 3);
        std::swap(q.x, q.z);
    } else if (kind == FoldKind::PhaseType) {
        int quarter = 0, half = 0;
        BitVec nz = q.z;
        for (std::size_t qb = 0; qb < n; ++qb) {
            std::int64_t im = tau[qb];
            if (im == std::int64_t(qb)) {
                // S: X -> iXZ (or -i for the inverse)
                if (q.x.get(qb)) {
                    quarter += 1;
                    nz.flip(qb);
                }
            } else if (std::int64_t(qb) < im) {
                // CZ across the swapped pair
                bool a = q.x.get(qb), b = q.x.get(std::size_t(im));
                if (a) nz.flip(std::size_t(im));
                if (b) nz.flip(qb);
                if (a && b) half += 1;
            }
        }
        int ph = dagger ? (4 - (quarter & 3)) & 3 : quarter & 3;
        q.phase = std::uint8_t((q.phase + ph + 2 * (half & 1)) & 3);
        q.z = std::move(nz);
    }
    Pauli moved;
    moved.x = BitVec(n);
    moved.z = BitVec(n);
    moved.phase = q.phase;
    for (std::size_t b : q.x.ones()) moved.x.set(std::size_t(tau[b]));
    for (std::size_t b : q.z.ones()) moved.z.set(std::size_t(tau[b]));
    return moved;
}

FoldGate make_permutation_gate(const std::vector<std::int64_t>& tau) {
    FoldGate g;
    g.kind = FoldKind::Permutation;
    g.tau = tau;
    return g;
}

FoldGate make_fold_gate(FoldKind kind, const ZxDuality& d, bool dagger) {
    if (kind == FoldKind::PhaseType && !d.involution)
        throw std::invalid_argument("phase-type fold needs an involutive duality");
    FoldGate g;
    g.kind = kind;
    g.dagger = dagger;
    g.tau = d.qubit_perm;
    return g;
}

bool preserves_stabilizers(const FoldGate& u, const CssCode& code) {
    Echelon ex(code.hx), ez(code.hz);
    auto good = [&](const Pauli& gen) {
        Pauli img = u.conjugate(gen);
        return img.phase == 0 && ex.contains(img.x) && ez.contains(img.z);
    };
    for (std::size_t r = 0; r < code.hx.rows; ++r)
        if (!good(Pauli::x_type(code.hx.row[r]))) return false;
    for (std::size_t r = 0; r < code.hz.rows; ++r)
        if (!good(Pauli::z_type(code.hz.row[r]))) return false;
    return true;
}

namespace {

// Echelon that remembers, for each reduced row, which of the six tracked
// seed rows went into it.
struct TrackedEchelon {
    std::vector<BitVec> rows;
    std::vector<std::uint8_t> combo;
    std::vector<std::size_t> pivots;

    void add(BitVec v, std::uint8_t c) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivots[i])) {
                v ^= rows[i];
                c ^= combo[i];
            }
        std::size_t p = v.lowest();
        if (p == v.n) return;
        rows.push_back(std::move(v));
        combo.push_back(c);
        pivots.push_back(p);
    }

    // true when v lies in the span; c receives the tracked part
    bool reduce(BitVec v, std::uint8_t& c) const {
        c = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivots[i])) {
                v ^= rows[i];
                c ^= combo[i];
            }
        return v.is_zero();
    }
};

}  // namespace

LogicalAction logical_action(const std::vector<const FoldGate*>& gates, const CssCode& code,
                             const LogicalBasis& basis) {
    TrackedEchelon dx, dz;
    for (std::size_t r = 0; r < code.hx.rows; ++r) dx.add(code.hx.row[r], 0);
    for (std::size_t i = 0; i < 6; ++i) dx.add(basis.lx.row[i], std::uint8_t(1u << i));
    for (std::size_t r = 0; r < code.hz.rows; ++r) dz.add(code.hz.row[r], 0);
    for (std::size_t i = 0; i < 6; ++i) dz.add(basis.lz.row[i], std::uint8_t(1u << i));

    LogicalAction act;
    act.s = F2Matrix(12, 12);
    for (int col = 0; col < 12; ++col) {
        Pauli p = (col < 6) ? Pauli::x_type(basis.lx.row[std::size_t(col)])
                            : Pauli::z_type(basis.lz.row[std::size_t(col - 6)]);
        for (const FoldGate* g : gates) p = g->conjugate(p);
        std::uint8_t a = 0, b = 0;
        if (!dx.reduce(p.x, a) || !dz.reduce(p.z, b))
            throw std::runtime_error("gate image leaves the code space");
        for (int i = 0; i < 6; ++i) {
            if (a >> i & 1) act.s.set(std::size_t(i), std::size_t(col));
            if (b >> i & 1) act.s.set(std::size_t(i + 6), std::size_t(col));
        }
        int herm = int(BitVec::dot(p.x, p.z));  // canonical Y carries one i
        int d = (int(p.phase) + 4 - herm) & 3;
        if (d & 1) throw std::runtime_error("image phase is not a sign");
        if (d == 2) act.phases |= std::uint16_t(1u << col);
    }
    return act;
}

bool is_symplectic(const F2Matrix& s) {
    if (s.rows != 12 || s.cols != 12) return false;
    F2Matrix j(12, 12);
    for (std::size_t i = 0; i < 6; ++i) {
        j.set(i, i + 6);
        j.set(i + 6, i);
    }
    return s.transposed().times(j).times(s).support() == j.support();
}

namespace {

using Mat12 = std::array<std::uint16_t, 12>;

Mat12 ident12() {
    Mat12 m{};
    for (int i = 0; i < 12; ++i) m[i] = std::uint16_t(1u << i);
    return m;
}

bool is_ident12(const Mat12& m) { return m == ident12(); }

std::uint16_t apply12(const Mat12& m, std::uint16_t v) {
    std::uint16_t r = 0;
    for (int i = 0; i < 12; ++i) r |= std::uint16_t(std::uint16_t(__builtin_parity(m[i] & v)) << i);
    return r;
}

Mat12 mul12(const Mat12& a, const Mat12& b) {
    Mat12 r{};
    for (int i = 0; i < 12; ++i) {
        std::uint16_t acc = 0, row = a[i];
        while (row) {
            int j = __builtin_ctz(row);
            row &= std::uint16_t(row - 1);
            acc ^= b[j];
        }
        r[i] = acc;
    }
    return r;
}

Mat12 inv12(Mat12 a) {
    Mat12 e = ident12();
    for (int c = 0; c < 12; ++c) {
        int piv = -1;
        for (int r = c; r < 12; ++r)
            if (a[r] >> c & 1) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::runtime_error("singular group element");
        std::swap(a[c], a[piv]);
        std::swap(e[c], e[piv]);
        for (int r = 0; r < 12; ++r)
            if (r != c && (a[r] >> c & 1)) {
                a[r] ^= a[c];
                e[r] ^= e[c];
            }
    }
    return e;
}

Mat12 from_f2(const F2Matrix& m) {
    Mat12 r{};
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            if (m.get(std::size_t(i), std::size_t(j))) r[i] |= std::uint16_t(1u << j);
    return r;
}

// Stabilizer chain on F2^12 with standard-vector base points.
struct Chain {
    struct Level {
        std::uint16_t base = 0;
        std::vector<std::uint16_t> orbit;
        std::unordered_map<std::uint16_t, std::pair<Mat12, Mat12>> tr;  // rep, rep^-1
        std::vector<Mat12> gens;
        std::vector<std::pair<std::size_t, std::size_t>> pending;  // (orbit idx, gen idx)
    };
    std::deque<Level> levels;
    std::uint64_t budget;
    bool exhausted = false;

    explicit Chain(std::uint64_t b) : budget(b) {}

    std::pair<Mat12, std::size_t> sift(Mat12 m, std::size_t from) const {
        for (std::size_t l = from; l < levels.size(); ++l) {
            std::uint16_t p = apply12(m, levels[l].base);
            auto it = levels[l].tr.find(p);
            if (it == levels[l].tr.end()) return {m, l};
            m = mul12(it->second.second, m);
        }
        return {m, levels.size()};
    }

    void ensure_level(std::size_t l, const Mat12& mover) {
        if (l < levels.size()) return;
        Level lv;
        for (int i = 0; i < 12; ++i) {
            std::uint16_t e = std::uint16_t(1u << i);
            if (apply12(mover, e) != e) {
                lv.base = e;
                break;
            }
        }
        lv.orbit.push_back(lv.base);
        lv.tr.emplace(lv.base, std::make_pair(ident12(), ident12()));
        levels.push_back(std::move(lv));
    }

    void register_gen(const Mat12& g, std::size_t l) {
        Level& lv = levels[l];
        lv.gens.push_back(g);
        const std::size_t gi = lv.gens.size() - 1;
        for (std::size_t pi = 0; pi < lv.orbit.size(); ++pi) lv.pending.emplace_back(pi, gi);
    }

    // an element known to fix the bases of levels 0..from-1: its residue is a
    // generator at every level it fixes through, not just where sifting stalls
    void insert(const Mat12& g, std::size_t from) {
        auto [res, where] = sift(g, from);
        if (is_ident12(res)) return;
        ensure_level(where, res);
        for (std::size_t j = from; j <= where; ++j) register_gen(res, j);
    }

    // drain pending orbit work; scheier residues only ever land deeper, so one
    // ordered pass settles every level
    void run() {
        for (std::size_t l = 0; l < levels.size(); ++l) {
            while (!levels[l].pending.empty()) {
                if (budget == 0) {
                    exhausted = true;
                    return;
                }
                --budget;
                Level& lv = levels[l];
                auto [pi, ei] = lv.pending.back();
                lv.pending.pop_back();
                Mat12 gen = lv.gens[ei];  // copy: gens may reallocate below
                std::uint16_t p = lv.orbit[pi];
                std::uint16_t q = apply12(gen, p);
                Mat12 up = lv.tr.at(p).first;
                auto it = lv.tr.find(q);
                if (it == lv.tr.end()) {
                    Mat12 uq = mul12(gen, up);
                    lv.tr.emplace(q, std::make_pair(uq, inv12(uq)));
                    std::size_t qi = lv.orbit.size();
                    lv.orbit.push_back(q);
                    for (std::size_t e2 = 0; e2 < lv.gens.size(); ++e2)
                        lv.pending.emplace_back(qi, e2);
                } else {
                    Mat12 schreier = mul12(it->second.second, mul12(gen, up));
                    insert(schreier, l + 1);
                }
            }
        }
    }

    std::uint64_t order() const {
        std::uint64_t o = 1;
        for (const Level& lv : levels) o *= lv.orbit.size();
        return o;
    }
};

}  // namespace

GroupOrder symplectic_group_order(const std::vector<F2Matrix>& gens, std::uint64_t budget) {
    Chain chain(budget);
    for (const F2Matrix& g : gens) chain.insert(from_f2(g), 0);
    chain.run();
    GroupOrder out;
    out.order = chain.order();
    out.exact = !chain.exhausted;
    return out;
}

SymmetrySummary summarize_symmetries(const Hnf& h, std::uint64_t budget) {
    SymmetrySummary out;
    CssCode code = build_css(h);
    LogicalBasis basis = logical_basis_linear(code);
    CellIndexer ix(h);

    std::vector<SignedPerm> autos = lattice_automorphisms(h);
    out.isometries = lattice_isometry_order(h);
    out.autos = autos.size();
    auto qperms = distinct_qubit_permutations(h, autos);
    out.qubit_perms = qperms.size();
    out.logical_perms = count_logical_permutations(code, basis);

    std::vector<ZxDuality> duals = find_zx_dualities(code);
    out.dualities = duals.size();
    for (const ZxDuality& d : duals)
        if (d.involution) out.involutions += 1;

    // generator pool: point-group and translation permutations, one verified
    // hadamard-type fold, one verified phase-type fold
    std::vector<FoldGate> pool;
    for (const auto& qp : qperms)
        if (!is_identity_perm(qp)) pool.push_back(make_permutation_gate(qp));
    {
        std::set<std::vector<std::int64_t>> tseen;
        for (std::int64_t t = 1; t < ix.det; ++t) {
            auto qp = cell_permutation(h, Isometry{SignedPerm{}, ix.point_at(t)}, 2);
            if (!is_identity_perm(qp) && tseen.insert(qp).second)
                pool.push_back(make_permutation_gate(qp));
        }
    }
    for (const ZxDuality& d : duals) {
        FoldGate g = make_fold_gate(FoldKind::HadamardType, d);
        if (preserves_stabilizers(g, code)) {
            pool.push_back(std::move(g));
            out.fold_gates += 1;
            break;
        }
    }
    for (const ZxDuality& d : duals) {
        if (!d.involution) continue;
        bool added = false;
        for (bool dag : {false, true}) {
            FoldGate g = make_fold_gate(FoldKind::PhaseType, d, dag);
            if (preserves_stabilizers(g, code)) {
                pool.push_back(std::move(g));
                out.fold_gates += 1;
                added = true;
                break;
            }
        }
        if (added) break;
    }

    std::vector<LogicalAction> acts;
    std::vector<F2Matrix> mats;
    for (const FoldGate& g : pool) {
        acts.push_back(logical_action({&g}, code, basis));
        mats.push_back(acts.back().s);
    }
    out.logical_group = symplectic_group_order(mats, budget);

    // sign freedom: short words whose symplectic part collapses to identity
    std::vector<Mat12> m12;
    m12.reserve(mats.size());
    for (const F2Matrix& m : mats) m12.push_back(from_f2(m));
    std::vector<std::uint16_t> kernel_phases;
    auto harvest = [&](const std::vector<std::size_t>& word) {
        std::vector<const FoldGate*> seq;
        for (std::size_t i : word) seq.push_back(&pool[i]);
        LogicalAction a = logical_action(seq, code, basis);
        if (a.phases) kernel_phases.push_back(a.phases);
    };
    const std::size_t np = pool.size();
    for (std::size_t i = 0; i < np && kernel_phases.size() < 64; ++i) {
        Mat12 sq = mul12(m12[i], m12[i]);
        if (is_ident12(sq)) harvest({i, i});
        if (is_ident12(mul12(sq, sq))) harvest({i, i, i, i});
    }
    for (std::size_t i = 0; i < np && kernel_phases.size() < 64; ++i)
        for (std::size_t j = 0; j < np && kernel_phases.size() < 64; ++j) {
            if (i == j) continue;
            if (is_ident12(mul12(m12[i], m12[j]))) harvest({j, i});
        }
    // rank of the collected sign vectors
    std::vector<std::uint16_t> basis_ph;
    for (std::uint16_t v : kernel_phases) {
        for (std::uint16_t b : basis_ph) v = std::min(v, std::uint16_t(v ^ b));
        if (v) basis_ph.push_back(v);
    }
    out.logical_group.phase_rank = int(basis_ph.size());
    return out;
}

}  // namespace torus4
