#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "torus4/sim.hpp"

namespace torus4 {

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const { return v.hash(); }
};

// One selectable explanation in the per-round decoder: a single-round
// syndrome signature, the data correction applied when selected, and the
// adjustment to feed into the next round's slice.
struct PowerEntry {
    BitVec syn;            // slice signature, dimension = checks per sector
    BitVec recovery;       // data correction (zero for partial-class entries)
    BitVec carry;          // syn ^ H * recovery
    std::uint8_t logical;  // action of `recovery` on the 6 logical pairs
    FaultClass cls;
    std::uint32_t src;     // dictionary entry, or UINT32_MAX for round-boundary errors
};

// Small fixed-size index set, to keep the XOR table compact.
struct TableCombo {
    std::array<std::uint32_t, 3> idx{};
    std::uint8_t len = 0;
};

struct PowerModel {
    int sector = 0;
    std::size_t checks = 0;
    std::size_t n_data = 0;
    int k_max = 4;
    int table_depth = 2;
    std::size_t w_per = 0;    // max syndrome weight over S
    std::size_t w_table = 0;  // max syndrome weight over table keys
    std::vector<PowerEntry> S;
    // XOR of up to table_depth entry syndromes -> smallest index combination
    std::unordered_map<BitVec, TableCombo, BitVecHash> table;
};

// Per-round models for both sectors from a dictionary built on a circuit
// with one noisy round. Round-boundary data errors are appended as
// qubit-class entries so leftovers from earlier rounds stay decodable.
struct PowerModelPair {
    PowerModel x, z;  // SECTOR_X and SECTOR_Z
};

PowerModelPair build_power_model(const CssCode& code, const FaultDictionary& dict,
                                 const LogicalBasis& basis, int table_depth = 2, int k_max = 4);

// Noiseless-round models: round-boundary data errors only.
PowerModelPair build_final_model(const CssCode& code, const LogicalBasis& basis,
                                 int table_depth = 2, int k_max = 4);

struct PowerResult {
    bool fallback = false;
    std::vector<std::uint32_t> chosen;  // indices into model.S
    BitVec recovery;
    BitVec carry;     // XOR of selected carries, plus unexplained leftover
    BitVec leftover;  // unexplained part of the target (fallback only)
    std::uint8_t logical = 0;
};

// Growing subset search over S with weight pruning, backed by the XOR table.
// Falls back to the best partial explanation when nothing matches exactly.
PowerResult power_decode(const PowerModel& model, const BitVec& target);

}  // namespace torus4
