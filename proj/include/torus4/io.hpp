#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "torus4/bposd.hpp"
#include "torus4/experiment.hpp"
#include "torus4/symmetry.hpp"

namespace torus4 {

// ---- lattices ----

// {"hnf": [[..4x4..]]} or {"basis": [[..4x4..]]}; a basis is reduced first.
Hnf load_lattice_json(const std::string& path);
// "a11,a12,a13,a14,a22,a23,a24,a33,a34,a44"
Hnf parse_hnf_flat(const std::string& csv);

// ---- check matrices ----

std::string to_alist(const F2Matrix& m);
std::string check_matrices_json(const CssCode& code);

// ---- circuits ----

// Header lines start with '#' and map qubit ids to cells; each layer is a
// block of one-op-per-line entries closed by a TICK line.
std::string circuit_text(const CssCode& code, const Circuit& c);
// Same, with FLIP/DEPOL2 annotations where noise sites sit.
std::string noisy_circuit_text(const CssCode& code, const NoisyCircuit& nc);
// id<->cell maps and the measurement schedule.
std::string circuit_meta_json(const CssCode& code, const Circuit& c);

// ---- distance reports ----

std::string distance_report_json(const DistanceReport& r);

// ---- shot streams ----

// JSON header line, then per shot: both detector blocks and both logical
// bytes, packed little-endian.
void write_shots(std::ostream& os, const Circuit& c, const std::vector<ShotRecord>& shots);
std::vector<ShotRecord> read_shots(std::istream& is);

// ---- detector error models ----

// one line per column: error(<prior>) D<i>... L<j>...
std::string dem_text(const DemModel& m);

// ---- experiment configs and results ----

// Strict schema: unknown keys are rejected. Missing keys keep defaults.
MemoryConfig parse_memory_config(const std::string& json_text);
std::string dump_memory_config(const MemoryConfig& cfg);
// FNV-1a of the canonical dump, for provenance headers.
std::uint64_t config_hash(const MemoryConfig& cfg);

std::string results_json(const MemoryResult& r);
std::string results_csv(const MemoryResult& r);
std::string plot_data(const MemoryResult& r);  // x/y/CI columns

// ---- symmetry catalog ----

std::string gate_catalog_json(const Hnf& h, const SymmetrySummary& s,
                              const std::vector<ZxDuality>& duals);
// Re-runs the stabilizer-preservation and logical-action checks on every
// listed gate; false when any stored entry disagrees with a fresh run.
bool verify_gate_catalog(const std::string& json_text);

}  // namespace torus4
