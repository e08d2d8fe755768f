#pragma once

#include <cstdint>
#include <vector>

#include "torus4/circuit.hpp"

namespace torus4 {

// Uniform circuit-level noise: depolarizing pairs after every CNOT, a flip
// after every preparation, a flip before every measurement, all with the same
// probability. Layers marked noiseless receive nothing. No idle noise unless
// enabled (no idle locations are generated by the round builders anyway).
struct NoiseModel {
    double p = 0.0;
    bool after_prep = true;
    bool after_2q = true;
    bool before_meas = true;
    bool idle = false;
};

enum class SiteKind : std::uint8_t { PrepFlip, MeasFlip, Depol2 };

struct NoiseSite {
    SiteKind kind;
    std::int32_t layer;
    std::int32_t op;
    std::int32_t q0, q1;         // q1 = -1 except Depol2
    std::int32_t meas_index;     // MeasFlip only: index into circuit.meas
};

struct NoisyCircuit {
    Circuit circuit;
    NoiseModel model;
    std::vector<NoiseSite> sites;  // circuit order
};

NoisyCircuit insert_noise(const Circuit& c, const NoiseModel& model);

// two-qubit Pauli index 1..15: (a * 4 + b) with I=0, X=1, Y=2, Z=3
inline bool pauli_has_x(int p) { return p == 1 || p == 2; }
inline bool pauli_has_z(int p) { return p == 2 || p == 3; }

}  // namespace torus4
