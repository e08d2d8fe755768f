#pragma once

#include <string>
#include <vector>

#include "torus4/decode.hpp"
#include "torus4/stats.hpp"

namespace torus4 {

struct NamedLattice {
    std::string name;
    Hnf h;
    int distance = 0;   // best known; exact when small enough to verify directly
    bool exact = true;
};

const std::vector<NamedLattice>& lattice_registry();
const NamedLattice* find_lattice(const std::string& name);

struct MemoryConfig {
    Hnf h;
    std::string circuit = "compact";  // or "starfish"
    std::string decoder = "bposd";    // or "power"
    int rounds = 0;                   // noisy rounds; 0 = one per unit of distance
    int distance = 0;                 // used for defaults and per-round normalization
    std::vector<double> ps;
    std::uint64_t seed = 1;
    std::uint64_t min_shots = 20000;
    std::uint64_t max_shots = 1000000;
    std::uint64_t min_failures = 100;  // adaptive stop once interval is tight enough
    double rel_ci = 0.3;
    long postselect_weight = -1;  // discard heavier corrections; -1 keeps everything
    BposdConfig bp;
    int table_depth = 2;
    int k_max = 4;
    int threads = 0;  // 0 = library default
};

struct MemoryPoint {
    double p = 0;
    std::uint64_t shots = 0, failures = 0, discarded = 0;
    double rate = 0, lo = 0, hi = 0;  // block failure per shot, Wilson bounds
    double per_round = 0, per_round_lo = 0, per_round_hi = 0;
    double per_qubit = 0;  // per round, per logical qubit
    double discard_fraction = 0;
    double seconds = 0;
};

struct MemoryResult {
    MemoryConfig cfg;
    int rounds = 0;
    std::size_t n = 0;
    std::vector<MemoryPoint> points;
};

MemoryResult run_memory_experiment(const MemoryConfig& cfg);

// Footprint of a block array: `blocks` independent code blocks of the given
// lattice running the chosen extraction circuit.
struct SpecsRow {
    std::string name;
    std::uint64_t det = 0;
    int distance = 0;
    std::uint64_t blocks = 0;
    std::uint64_t logical = 0, data = 0, meas = 0;
    std::uint64_t cnots_per_round = 0;
    int depth = 0;
};

SpecsRow specs_row(const std::string& name, const Hnf& h, int distance, std::uint64_t blocks,
                   const std::string& circuit);

}  // namespace torus4
