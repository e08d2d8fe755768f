#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "torus4/experiment.hpp"
#include "torus4/rng.hpp"
#include "torus4/symmetry.hpp"

using namespace torus4;

namespace {

BitVec mk(std::size_t n, std::initializer_list<std::size_t> bits) {
    BitVec v(n);
    for (std::size_t b : bits) v.set(b);
    return v;
}

bool is_bijection(const std::vector<std::int64_t>& p) {
    std::vector<char> seen(p.size(), 0);
    for (std::int64_t i : p) {
        if (i < 0 || std::size_t(i) >= p.size() || seen[std::size_t(i)]) return false;
        seen[std::size_t(i)] = 1;
    }
    return true;
}

F2Matrix perm_matrix(const std::vector<std::int64_t>& p) {
    F2Matrix m(p.size(), p.size());
    for (std::size_t j = 0; j < p.size(); ++j) m.set(std::size_t(p[j]), j);
    return m;
}

}  // namespace

TEST_CASE("the signed axis permutations form the full 384-element pool") {
    std::vector<SignedPerm> all = all_signed_perms();
    CHECK(all.size() == 384);
    std::set<std::pair<std::array<int, 4>, std::array<int, 4>>> uniq;
    for (const SignedPerm& sp : all) uniq.insert({sp.perm, sp.sign});
    CHECK(uniq.size() == 384);
    CHECK(std::count(all.begin(), all.end(), SignedPerm{}) == 1);
    SignedPerm sp;
    sp.perm = {1, 0, 2, 3};
    sp.sign = {1, -1, 1, 1};
    Point q = sp.apply(Point{1, 2, 3, 4});
    CHECK(q == Point{-2, 1, 3, 4});
}

TEST_CASE("hadamard symmetry counts: isometries, axis maps, logical action") {
    const Hnf& h = find_lattice("hadamard")->h;
    // the lattice is a rotated and scaled Z^4, so its full isometry group has
    // the same order as the hypercubic one
    CHECK(lattice_isometry_order(h) == 384);
    // but only the axis maps with an even number of reflections fix it while
    // also acting on the cubical cells: 24 permutations x 8 sign patterns
    std::vector<SignedPerm> autos = lattice_automorphisms(h);
    CHECK(autos.size() == 192);
    for (const SignedPerm& sp : autos) {
        int flips = 0;
        for (int d = 0; d < 4; ++d) flips += sp.sign[d] < 0;
        CHECK(flips % 2 == 0);
    }
    // each acts differently on the 96 qubits...
    auto qperms = distinct_qubit_permutations(h, autos);
    CHECK(qperms.size() == 192);
    std::vector<std::int64_t> ident(std::size_t(6 * h.det()));
    for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = std::int64_t(i);
    CHECK(std::count(qperms.begin(), qperms.end(), ident) == 1);
    for (const auto& p : qperms) CHECK(is_bijection(p));
    // ...but reflections act trivially on homology classes, leaving exactly
    // the 24 direction-pair permutations on the six logical qubits
    CssCode code = build_css(h);
    LogicalBasis basis = logical_basis_linear(code);
    CHECK(count_logical_permutations(code, basis) == 24);
}

TEST_CASE("isometry order on plain and skew lattices") {
    // the hypercubic lattice keeps all signed axis permutations and nothing else
    Hnf cube = Hnf::from_flat({1, 0, 0, 0, 1, 0, 0, 1, 0, 1});
    CHECK(lattice_isometry_order(cube) == 384);
    CHECK(lattice_automorphisms(cube).size() == 384);
    // axis automorphisms always embed in the full isometry group
    for (const char* name : {"det3", "det9", "hadamard"}) {
        const Hnf& h = find_lattice(name)->h;
        std::uint64_t iso = lattice_isometry_order(h);
        std::size_t axis = lattice_automorphisms(h).size();
        CHECK(iso >= axis);
        CHECK(iso % axis == 0);
    }
}

TEST_CASE("automorphism lists always contain the identity") {
    for (const char* name : {"det3", "det9", "det45"}) {
        std::vector<SignedPerm> autos = lattice_automorphisms(find_lattice(name)->h);
        CHECK(std::count(autos.begin(), autos.end(), SignedPerm{}) == 1);
        CHECK(autos.size() >= 1);
    }
}

TEST_CASE("induced cell maps are chain maps") {
    const Hnf& h = find_lattice("det3")->h;
    CellIndexer ix(h);
    std::vector<Isometry> motions;
    for (const SignedPerm& sp : lattice_automorphisms(h)) motions.push_back(Isometry{sp, {}});
    motions.push_back(Isometry{SignedPerm{}, ix.point_at(1)});  // pure translation
    for (const Isometry& g : motions) {
        std::vector<F2Matrix> p;  // cell permutation matrix per dimension
        for (int k = 0; k <= 4; ++k) {
            auto perm = cell_permutation(h, g, k);
            CHECK(is_bijection(perm));
            p.push_back(perm_matrix(perm));
        }
        for (int k = 1; k <= 4; ++k) {
            F2Matrix b = boundary_matrix(h, k);
            CHECK(p[std::size_t(k - 1)].times(b).support() ==
                  b.times(p[std::size_t(k)]).support());
        }
    }
}

TEST_CASE("nonzero translations move every cell") {
    const Hnf& h = find_lattice("det9")->h;
    CellIndexer ix(h);
    for (std::int64_t t = 1; t < ix.det; ++t) {
        auto perm = cell_permutation(h, Isometry{SignedPerm{}, ix.point_at(t)}, 2);
        for (std::size_t i = 0; i < perm.size(); ++i) CHECK(perm[i] != std::int64_t(i));
    }
}

TEST_CASE("check-swap maps really exchange the two check families") {
    for (const char* name : {"det3", "hadamard"}) {
        CssCode code = build_css(find_lattice(name)->h);
        std::set<std::vector<std::size_t>> xs, zs;
        for (std::size_t r = 0; r < code.hx.rows; ++r) xs.insert(code.hx.row[r].ones());
        for (std::size_t r = 0; r < code.hz.rows; ++r) zs.insert(code.hz.row[r].ones());
        std::vector<ZxDuality> duals = find_zx_dualities(code);
        for (const ZxDuality& d : duals) {
            CHECK(is_bijection(d.qubit_perm));
            auto push = [&](const F2Matrix& from, const std::set<std::vector<std::size_t>>& into) {
                for (std::size_t r = 0; r < from.rows; ++r) {
                    std::vector<std::size_t> img;
                    for (std::size_t q : from.row[r].ones())
                        img.push_back(std::size_t(d.qubit_perm[q]));
                    std::sort(img.begin(), img.end());
                    CHECK(into.count(img) == 1);
                }
            };
            push(code.hx, zs);
            push(code.hz, xs);
            bool inv = true;
            for (std::size_t i = 0; i < d.qubit_perm.size(); ++i)
                if (d.qubit_perm[std::size_t(d.qubit_perm[i])] != std::int64_t(i)) inv = false;
            CHECK(d.involution == inv);
        }
    }
}

TEST_CASE("pauli products pick up the reordering sign") {
    Pauli x = Pauli::x_type(mk(4, {0}));
    Pauli z = Pauli::z_type(mk(4, {0}));
    Pauli xz = x;
    xz *= z;  // X then Z, canonical order, no sign
    CHECK(xz.phase == 0);
    CHECK(xz.x == mk(4, {0}));
    CHECK(xz.z == mk(4, {0}));
    Pauli zx = z;
    zx *= x;  // moving X left through Z costs a sign
    CHECK(zx.phase == 2);
    Pauli sq = xz;
    sq *= xz;  // (XZ)^2 = -I
    CHECK(sq.phase == 2);
    CHECK(sq.x.is_zero());
    CHECK(sq.z.is_zero());
    Pauli disjoint = Pauli::x_type(mk(4, {1}));
    disjoint *= Pauli::z_type(mk(4, {2}));
    CHECK(disjoint.phase == 0);
}

TEST_CASE("a bare permutation gate just relabels supports") {
    std::vector<std::int64_t> tau = {2, 0, 1, 3};
    FoldGate g = make_permutation_gate(tau);
    CHECK(g.kind == FoldKind::Permutation);
    Pauli p = Pauli::x_type(mk(4, {0, 3}));
    p *= Pauli::z_type(mk(4, {1}));
    Pauli q = g.conjugate(p);
    CHECK(q.phase == 0);
    CHECK(q.x == mk(4, {2, 3}));
    CHECK(q.z == mk(4, {0}));
    CHECK_THROWS_AS(g.conjugate(Pauli::x_type(mk(5, {0}))), std::invalid_argument);
}

TEST_CASE("hadamard-type folds swap the on-site letters with the Y sign") {
    FoldGate g;
    g.kind = FoldKind::HadamardType;
    g.tau = {0, 1};
    Pauli hx2 = g.conjugate(Pauli::x_type(mk(2, {0})));
    CHECK(hx2.phase == 0);
    CHECK(hx2.x.is_zero());
    CHECK(hx2.z == mk(2, {0}));
    Pauli hz = g.conjugate(Pauli::z_type(mk(2, {1})));
    CHECK(hz.phase == 0);
    CHECK(hz.x == mk(2, {1}));
    Pauli xz = Pauli::x_type(mk(2, {0}));
    xz *= Pauli::z_type(mk(2, {0}));
    Pauli hxz = g.conjugate(xz);  // H (XZ) H = ZX = -XZ
    CHECK(hxz.phase == 2);
    CHECK(hxz.x == mk(2, {0}));
    CHECK(hxz.z == mk(2, {0}));
}

TEST_CASE("phase-type folds apply S on fixed qubits and CZ across pairs") {
    FoldGate s;
    s.kind = FoldKind::PhaseType;
    s.tau = {0};
    Pauli sx = s.conjugate(Pauli::x_type(mk(1, {0})));  // S X S^-1 = i XZ = Y
    CHECK(sx.phase == 1);
    CHECK(sx.x == mk(1, {0}));
    CHECK(sx.z == mk(1, {0}));
    Pauli sz = s.conjugate(Pauli::z_type(mk(1, {0})));
    CHECK(sz.phase == 0);
    CHECK(sz.x.is_zero());
    FoldGate sd = s;
    sd.dagger = true;
    CHECK(sd.conjugate(Pauli::x_type(mk(1, {0}))).phase == 3);

    FoldGate cz;
    cz.kind = FoldKind::PhaseType;
    cz.tau = {1, 0};  // swapped pair: SWAP followed by CZ
    Pauli cx0 = cz.conjugate(Pauli::x_type(mk(2, {0})));
    CHECK(cx0.phase == 0);
    CHECK(cx0.x == mk(2, {1}));
    CHECK(cx0.z == mk(2, {0}));
    Pauli cz0 = cz.conjugate(Pauli::z_type(mk(2, {0})));
    CHECK(cz0.phase == 0);
    CHECK(cz0.x.is_zero());
    CHECK(cz0.z == mk(2, {1}));
    // CZ (X X) CZ = -(XZ)(XZ); the swap then keeps it symmetric
    Pauli xx = Pauli::x_type(mk(2, {0, 1}));
    Pauli cxx = cz.conjugate(xx);
    CHECK(cxx.phase == 2);
    CHECK(cxx.x == mk(2, {0, 1}));
    CHECK(cxx.z == mk(2, {0, 1}));
}

TEST_CASE("phase-type folds refuse non-involutive dualities") {
    ZxDuality d;
    d.qubit_perm = {1, 2, 0};  // 3-cycle
    d.involution = false;
    CHECK_THROWS_AS(make_fold_gate(FoldKind::PhaseType, d), std::invalid_argument);
    CHECK(make_fold_gate(FoldKind::HadamardType, d).kind == FoldKind::HadamardType);
}

TEST_CASE("geometric permutations preserve the stabilizer group") {
    const Hnf& h = find_lattice("det3")->h;
    CssCode code = build_css(h);
    auto qperms = distinct_qubit_permutations(h, lattice_automorphisms(h));
    for (const auto& qp : qperms) CHECK(preserves_stabilizers(make_permutation_gate(qp), code));
    CellIndexer ix(h);
    for (std::int64_t t = 1; t < ix.det; ++t) {
        auto qp = cell_permutation(h, Isometry{SignedPerm{}, ix.point_at(t)}, 2);
        CHECK(preserves_stabilizers(make_permutation_gate(qp), code));
    }
    // an ad-hoc transposition is not a symmetry of the checks
    std::vector<std::int64_t> bad(std::size_t(code.n));
    for (std::size_t i = 0; i < bad.size(); ++i) bad[i] = std::int64_t(i);
    std::swap(bad[0], bad[1]);
    CHECK_FALSE(preserves_stabilizers(make_permutation_gate(bad), code));
}

TEST_CASE("hadamard-type folds built from real dualities pass verification") {
    for (const char* name : {"det3", "hadamard"}) {
        CssCode code = build_css(find_lattice(name)->h);
        std::vector<ZxDuality> duals = find_zx_dualities(code);
        for (const ZxDuality& d : duals)
            CHECK(preserves_stabilizers(make_fold_gate(FoldKind::HadamardType, d), code));
    }
}

TEST_CASE("doing nothing acts as the identity on the logicals") {
    CssCode code = build_css(find_lattice("det3")->h);
    LogicalBasis basis = logical_basis_linear(code);
    LogicalAction act = logical_action({}, code, basis);
    CHECK(act.phases == 0);
    CHECK(act.s.support() == F2Matrix::identity(12).support());
    CHECK(is_symplectic(act.s));
    CHECK_FALSE(is_symplectic(F2Matrix(12, 12)));
}

TEST_CASE("logical actions are symplectic and compose as a homomorphism") {
    const Hnf& h = find_lattice("det3")->h;
    CssCode code = build_css(h);
    LogicalBasis basis = logical_basis_linear(code);
    CellIndexer ix(h);

    std::vector<FoldGate> pool;
    for (const auto& qp : distinct_qubit_permutations(h, lattice_automorphisms(h)))
        pool.push_back(make_permutation_gate(qp));
    for (std::int64_t t = 1; t < ix.det; ++t)
        pool.push_back(make_permutation_gate(
            cell_permutation(h, Isometry{SignedPerm{}, ix.point_at(t)}, 2)));
    for (const ZxDuality& d : find_zx_dualities(code)) {
        FoldGate g = make_fold_gate(FoldKind::HadamardType, d);
        if (preserves_stabilizers(g, code)) {
            pool.push_back(std::move(g));
            break;
        }
    }
    REQUIRE(pool.size() >= 2);

    std::vector<LogicalAction> acts;
    for (const FoldGate& g : pool) {
        acts.push_back(logical_action({&g}, code, basis));
        CHECK(is_symplectic(acts.back().s));
    }
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t i = rng.below(pool.size());
        std::size_t j = rng.below(pool.size());
        LogicalAction both = logical_action({&pool[i], &pool[j]}, code, basis);
        // applying i then j multiplies the coordinate matrices in reverse
        CHECK(both.s.support() == acts[j].s.times(acts[i].s).support());
    }
}

TEST_CASE("group order via the stabilizer chain on known groups") {
    CHECK(symplectic_group_order({}).order == 1);
    CHECK(symplectic_group_order({}).exact);
    CHECK(symplectic_group_order({F2Matrix::identity(12)}).order == 1);

    // the X<->Z swap has order two
    F2Matrix j(12, 12);
    for (std::size_t i = 0; i < 6; ++i) {
        j.set(i, i + 6);
        j.set(i + 6, i);
    }
    GroupOrder two = symplectic_group_order({j});
    CHECK(two.order == 2);
    CHECK(two.exact);

    // S6 acting the same way on both halves: a transposition and a 6-cycle
    auto blockperm = [](const std::array<int, 6>& pi) {
        F2Matrix m(12, 12);
        for (std::size_t i = 0; i < 6; ++i) {
            m.set(i, std::size_t(pi[i]));
            m.set(i + 6, std::size_t(pi[i]) + 6);
        }
        return m;
    };
    F2Matrix swap01 = blockperm({1, 0, 2, 3, 4, 5});
    F2Matrix cycle = blockperm({1, 2, 3, 4, 5, 0});
    GroupOrder s6 = symplectic_group_order({swap01, cycle});
    CHECK(s6.order == 720);
    CHECK(s6.exact);

    GroupOrder starved = symplectic_group_order({swap01, cycle}, 3);
    CHECK_FALSE(starved.exact);
    CHECK(starved.order <= 720);
}

TEST_CASE("symmetry summary ties the pieces together") {
    SymmetrySummary det3 = summarize_symmetries(find_lattice("det3")->h);
    CHECK(det3.autos >= 1);
    CHECK(det3.qubit_perms >= 1);
    CHECK(det3.involutions <= det3.dualities);
    CHECK(det3.logical_group.order >= 1);

    SymmetrySummary had = summarize_symmetries(find_lattice("hadamard")->h);
    CHECK(had.isometries == 384);
    CHECK(had.autos == 192);
    CHECK(had.qubit_perms == 192);
    CHECK(had.logical_perms == 24);
    CHECK(had.logical_group.order >= 24);
}
