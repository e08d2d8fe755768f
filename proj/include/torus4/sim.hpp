#pragma once

#include <cstdint>
#include <vector>

#include "torus4/homology.hpp"
#include "torus4/noise.hpp"
#include "torus4/rng.hpp"

namespace torus4 {

struct Fault {
    std::uint32_t site;
    std::uint8_t pauli;  // Depol2: 1..15, flips: 1
};

// One sampled shot, reduced to detectors and logical flips. Detector layout
// per sector: slice-major, index = round * num_checks + stab, where slice 0
// is the raw first-round syndrome and later slices are consecutive XORs.
struct ShotRecord {
    BitVec det[2];
    std::uint8_t logical[2] = {0, 0};  // 6 bits of logical measurement flips
    std::uint32_t fault_count = 0;
};

enum class FaultClass : std::uint8_t { Qubit, MeasFlip, Ancillary, Partial };
const char* fault_class_name(FaultClass c);

struct DictEntry {
    Fault fault;
    FaultClass cls = FaultClass::Partial;
    BitVec det[2];
    BitVec residual[2];  // data-qubit X / Z patterns left after the circuit
    std::uint8_t logical[2] = {0, 0};
};

struct FaultDictionary {
    std::size_t num_checks = 0;   // per sector, per slice
    int slices = 0;               // = circuit total_rounds
    std::size_t n_data = 0;
    std::vector<DictEntry> entries;
};

// Reference engine: propagates X and Z frames op by op. The two frames never
// mix except through the sampled fault Paulis.
class FrameSim {
  public:
    FrameSim(const CssCode& code, const NoisyCircuit& nc, const LogicalBasis& basis);

    // resx/resz, when given, receive the final data-qubit error patterns
    ShotRecord run(const std::vector<Fault>& faults, BitVec* resx = nullptr,
                   BitVec* resz = nullptr) const;
    std::size_t num_sites() const { return nc_->sites.size(); }
    std::size_t det_bits() const { return det_bits_; }

  private:
    const CssCode* code_;
    const NoisyCircuit* nc_;
    const LogicalBasis* basis_;
    std::size_t det_bits_ = 0;  // per sector
    std::size_t checks_ = 0;
    std::vector<std::vector<std::int32_t>> site_at_;  // layer -> op -> site or -1
};

// Faults for one shot under the uniform site probability, in site order.
std::vector<Fault> sample_faults(const NoisyCircuit& nc, Rng& rng);

// Effects of every (site, Pauli) single fault, classified by effect.
FaultDictionary enumerate_single_faults(const CssCode& code, const NoisyCircuit& nc,
                                        const LogicalBasis& basis, bool parallel = true);

// Fast engine: XORs precomputed single-fault effects; bit-identical to
// FrameSim::run on the same fault list.
class SparseSampler {
  public:
    SparseSampler(const NoisyCircuit& nc, const FaultDictionary& dict);
    ShotRecord run(const std::vector<Fault>& faults) const;
    ShotRecord sample(std::uint64_t master_seed, std::uint64_t shot_index) const;

  private:
    const NoisyCircuit* nc_;
    const FaultDictionary* dict_;
    std::vector<std::size_t> entry_index_;  // (site, pauli) -> entry
    std::size_t pauli_stride_ = 16;
};

}  // namespace torus4
