#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "torus4/homology.hpp"

namespace torus4 {

// Monomial map of the four axes: axis d goes to axis perm[d] with sign[d].
struct SignedPerm {
    std::array<int, 4> perm{0, 1, 2, 3};
    std::array<int, 4> sign{1, 1, 1, 1};

    Point apply(const Point& p) const;
    bool operator==(const SignedPerm& o) const { return perm == o.perm && sign == o.sign; }
};

// All 384 signed axis permutations.
std::vector<SignedPerm> all_signed_perms();

// Rigid motion of the torus: x -> x * M + shift, reduced modulo the lattice.
struct Isometry {
    SignedPerm m;
    Point shift{0, 0, 0, 0};
};

// Signed permutations whose column action maps the lattice onto itself.
std::vector<SignedPerm> lattice_automorphisms(const Hnf& h);

// Order of the lattice's full isometry group: integer basis changes U with
// U G U^T = G, where G is the Gram matrix of the basis rows. This counts all
// orthogonal self-maps of the lattice, of which the axis-aligned ones above
// are the subgroup that also acts on the cubical cell structure.
std::uint64_t lattice_isometry_order(const Hnf& h);

// Permutation induced on k-cells; entry i holds the image index of cell i.
std::vector<std::int64_t> cell_permutation(const Hnf& h, const Isometry& g, int k);

// Distinct qubit (2-cell) permutations induced by a set of point maps.
std::vector<std::vector<std::int64_t>> distinct_qubit_permutations(
    const Hnf& h, const std::vector<SignedPerm>& autos);

// Number of distinct permutations induced on the six logical classes by the
// lattice's axis automorphisms (actions compared modulo stabilizers).
std::size_t count_logical_permutations(const CssCode& code, const LogicalBasis& basis);

// A rigid motion composed with the direct<->dual cell identification that
// carries every X check support onto a Z check support and back.
struct ZxDuality {
    Isometry g;
    std::vector<std::int64_t> qubit_perm;  // direct 2-cell -> dual image 2-cell
    bool involution = false;
};

std::vector<ZxDuality> find_zx_dualities(const CssCode& code);

// i^phase * prod_q X^x_q Z^z_q  (X written before Z on each qubit)
struct Pauli {
    BitVec x, z;
    std::uint8_t phase = 0;  // mod 4

    static Pauli x_type(const BitVec& support);
    static Pauli z_type(const BitVec& support);
    Pauli& operator*=(const Pauli& o);
};

enum class FoldKind { Permutation, HadamardType, PhaseType };

// Transversal circuit riding a qubit permutation tau: nothing extra
// (Permutation), Hadamard everywhere (HadamardType), or S on fixed qubits
// and CZ across swapped pairs (PhaseType; tau must be an involution).
struct FoldGate {
    FoldKind kind = FoldKind::Permutation;
    bool dagger = false;  // PhaseType: use S^-1 instead of S
    std::vector<std::int64_t> tau;

    Pauli conjugate(const Pauli& p) const;
};

FoldGate make_permutation_gate(const std::vector<std::int64_t>& tau);
FoldGate make_fold_gate(FoldKind kind, const ZxDuality& d, bool dagger = false);

// Every stabilizer generator must come back as a stabilizer element with
// phase exactly +1.
bool preserves_stabilizers(const FoldGate& u, const CssCode& code);

struct LogicalAction {
    F2Matrix s;                 // 12 x 12, columns are images of X_1..X_6, Z_1..Z_6
    std::uint16_t phases = 0;   // sign bit per image
};

// Action on the logical algebra; gates applied left to right.
LogicalAction logical_action(const std::vector<const FoldGate*>& gates, const CssCode& code,
                             const LogicalBasis& basis);

bool is_symplectic(const F2Matrix& s);

struct GroupOrder {
    std::uint64_t order = 1;  // of the symplectic image
    int phase_rank = 0;       // observed sign freedom over the identity image
    bool exact = true;        // false when the work budget ran out
};

// Order of the matrix group generated over F2^12, via a stabilizer chain.
GroupOrder symplectic_group_order(const std::vector<F2Matrix>& gens,
                                  std::uint64_t budget = 5000000);

struct SymmetrySummary {
    std::uint64_t isometries = 0;  // full isometry group of the lattice
    std::size_t autos = 0;         // axis automorphisms (act on cells)
    std::size_t qubit_perms = 0;   // distinct induced 2-cell permutations
    std::size_t logical_perms = 0; // distinct induced logical permutations
    std::size_t dualities = 0;
    std::size_t involutions = 0;
    std::size_t fold_gates = 0;  // verified transversal gates in the generator pool
    GroupOrder logical_group;
};

SymmetrySummary summarize_symmetries(const Hnf& h, std::uint64_t budget = 5000000);

}  // namespace torus4
