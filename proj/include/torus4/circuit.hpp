#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torus4/complex.hpp"

namespace torus4 {

// Error sectors. SECTOR_X tracks X-type data errors, detected by the Z checks
// (3-cells, MeasZ). SECTOR_Z tracks Z-type errors via the X checks (1-cells,
// MeasX).
inline constexpr int SECTOR_X = 0;
inline constexpr int SECTOR_Z = 1;

enum class OpKind : std::uint8_t { PrepX, PrepZ, CX, MeasX, MeasZ };

struct Op {
    OpKind kind;
    std::int32_t q0 = -1;  // CX control, otherwise the single qubit
    std::int32_t q1 = -1;  // CX target
};

struct Layer {
    std::vector<Op> ops;
    bool noiseless = false;
};

// Which stabilizer row a measurement reads, and in which round.
struct MeasRef {
    int sector;
    std::int32_t stab;
    int round;
};

// Qubit ids: data 2-cells first, then X-ancillas (1-cells), then Z-ancillas
// (3-cells), each block in the stable cell order.
struct Circuit {
    std::int64_t det = 0;
    std::size_t n_data = 0, n_xanc = 0, n_zanc = 0;
    std::vector<Layer> layers;
    std::vector<MeasRef> meas;  // one entry per measurement, in emission order
    int noisy_rounds = 1;
    int total_rounds = 1;
    std::string kind;

    std::size_t num_qubits() const { return n_data + n_xanc + n_zanc; }
    std::int32_t data_id(std::int64_t two_cell) const { return static_cast<std::int32_t>(two_cell); }
    std::int32_t xanc_id(std::int64_t one_cell) const {
        return static_cast<std::int32_t>(n_data + static_cast<std::size_t>(one_cell));
    }
    std::int32_t zanc_id(std::int64_t three_cell) const {
        return static_cast<std::int32_t>(n_data + n_xanc + static_cast<std::size_t>(three_cell));
    }
    int cnot_layer_count() const;
    std::size_t cnot_count() const;
};

// One syndrome extraction round, X half fully before Z half: PrepX, eight
// CNOT layers sweeping +x,-x,+y,-y,+z,-z,+w,-w, MeasX, then the mirrored Z
// half. CNOT depth 16.
Circuit starfish_round(const CssCode& code);

// One interleaved round: both preps, eight CNOT layers sweeping
// -w,-z,-y,-x,+x,+y,+z,+w with the X and Z halves sharing each layer, both
// measurements. CNOT depth 8.
Circuit compact_round(const CssCode& code);

// `rounds` noisy copies plus one final noiseless round.
Circuit repeat_rounds(const Circuit& round, int rounds);

struct EffectiveCheckMismatch {
    int sector;
    std::int32_t stab;
    std::string cell;
};

struct EffectiveCheckReport {
    bool ok = true;
    std::vector<EffectiveCheckMismatch> mismatches;
};

// Symbolically propagate data Pauli labels through the circuit and compare
// what every ancilla measurement reads against its stabilizer row.
EffectiveCheckReport effective_checks(const CssCode& code, const Circuit& c);

}  // namespace torus4
