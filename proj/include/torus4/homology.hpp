#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torus4/complex.hpp"

namespace torus4 {

// Six X-type and six Z-type logical representatives over the data qubits,
// normalized so that lx[i] . lz[j] = delta_ij.
struct LogicalBasis {
    F2Matrix lx;  // 6 x n
    F2Matrix lz;  // 6 x n
};

LogicalBasis logical_basis_linear(const CssCode& code);

// 1-cycle over the 1-cells from walking lattice basis row j edge by edge,
// axis by axis, back to the starting coset.
BitVec row_cycle(const Hnf& h, int j);

// Four 1-cocycles alpha_i with alpha_i(row_cycle(j)) = delta_ij.
std::vector<BitVec> one_cocycle_basis(const Hnf& h);

enum class CupConvention {
    // single term: alpha on the first-direction edge at the base point, beta
    // on the second-direction edge shifted by the first direction. Kept for
    // comparison; its output is not closed in general.
    OnePath,
    // sum over both two-edge paths across the face. This is the mod-2 cubical
    // cup product; its output is always a 2-cocycle, so it is the default.
    TwoPath,
};

// Cup product of two 1-cochains, returning a 2-cochain over the 2-cells.
BitVec cup_product(const Hnf& h, const BitVec& a, const BitVec& b,
                   CupConvention conv = CupConvention::TwoPath);

// X logicals as the six pairwise cup products of the cocycle basis; Z side
// from linear algebra, re-pivoted so the pairing is the identity.
LogicalBasis cup_logical_basis(const CssCode& code,
                               CupConvention conv = CupConvention::TwoPath);

struct DistanceReport {
    int dx = -1, dz = -1, d = -1;
    std::string method;  // "exact" or "probabilistic"
    bool exact = false;
    std::vector<std::size_t> certificate_x, certificate_z;  // qubit supports
    std::uint64_t seed = 0;
    int trials = 0;
    int w_max = 0;
    // (trials completed, best d so far) every 1000 trials
    std::vector<std::pair<int, int>> trace;
};

// Exhaustive search for the minimum-weight logical up to weight w_max,
// streaming combinations with early syndrome pruning. dx/dz = -1 when no
// logical of weight <= w_max exists on that side.
DistanceReport distance_exact(const CssCode& code, int w_max = 8, bool parallel = true);

// Randomized information-set search: random column permutations, row
// reduction of the stabilizer+logical generating set, low-weight harvest of
// echelon rows and pairs plus greedy stabilizer descent. Monotone in trials
// and reproducible for a fixed seed, independent of thread count.
DistanceReport distance_upper_bound(const CssCode& code, const LogicalBasis& basis,
                                    int trials = 10000, std::uint64_t seed = 1,
                                    bool parallel = true);

}  // namespace torus4
