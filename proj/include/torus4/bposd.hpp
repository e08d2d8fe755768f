#pragma once

#include <cstdint>
#include <vector>

#include "torus4/sim.hpp"

namespace torus4 {

// One merged error mechanism: a detector pattern with its logical action,
// and how many elementary faults produce it at full strength (probability p)
// versus one-of-fifteen strength (p/15, one leg of a two-qubit depolarizer).
struct DemColumn {
    BitVec det;
    std::uint8_t logical = 0;
    std::uint32_t n_flip = 0;
    std::uint32_t n_depol = 0;
    double prior = 0;
};

// Detector error model for one sector over the full multi-round record.
struct DemModel {
    int sector = 0;
    std::size_t det_bits = 0;
    std::vector<DemColumn> cols;
    std::vector<std::vector<std::uint32_t>> row_cols;  // detector -> columns touching it

    void set_p(double p);  // refresh priors for a physical error rate
};

DemModel build_dem(const FaultDictionary& dict, const NoisyCircuit& nc, int sector);

struct BposdConfig {
    int iters = 30;
    double scale = 0.625;  // min-sum normalization
};

struct BposdResult {
    bool converged = false;  // belief propagation alone matched the syndrome
    std::uint8_t logical = 0;
    std::size_t weight = 0;  // mechanisms in the chosen explanation
};

// Normalized min-sum belief propagation with an ordered-statistics fallback
// (order 0). Holds scratch buffers sized for its model: create one instance
// per thread, after the model's priors are set.
class BposdDecoder {
  public:
    explicit BposdDecoder(const DemModel& model, BposdConfig cfg = {});

    BposdResult decode(const BitVec& syndrome);
    std::size_t rank() const { return rank_; }

  private:
    void osd(const BitVec& syndrome);

    const DemModel* md_;
    BposdConfig cfg_;
    std::size_t rank_ = 0;
    std::vector<double> llr0_;
    // bipartite edges in CSR form, column-major ids
    std::vector<std::uint32_t> col_off_, col_row_, edge_col_;
    std::vector<std::uint32_t> row_off_, row_edge_;
    std::vector<double> msg_cv_, msg_vc_, posterior_;
    std::vector<std::uint8_t> sel_, sel_bp_;
    std::vector<std::uint32_t> order_;
    std::vector<BitVec> piv_vec_, piv_combo_;
    std::vector<std::int32_t> piv_at_row_;
    std::vector<std::uint32_t> sel_ids_;
};

}  // namespace torus4
