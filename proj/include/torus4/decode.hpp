#pragma once

#include <memory>

#include "torus4/bposd.hpp"
#include "torus4/power_decoder.hpp"

namespace torus4 {

struct DecodeOutcome {
    bool fail[2] = {false, false};  // per sector: corrected logical != true logical
    bool fallback = false;          // some round needed a best-effort explanation
    std::size_t weight = 0;         // size of the applied correction

    bool failed() const { return fail[0] || fail[1]; }
};

// Round-by-round decoding: each round's detector slice, adjusted by the
// previous round's carry, is explained from the per-round table; the final
// noiseless slice is closed out with the data-error-only model.
class SingleShotDecoder {
  public:
    SingleShotDecoder(const PowerModelPair& per_round, const PowerModelPair& final_round,
                      int noisy_rounds);

    DecodeOutcome decode(const ShotRecord& shot) const;

  private:
    const PowerModelPair* per_round_;
    const PowerModelPair* final_;
    int rounds_;
};

// Whole-record decoding: one belief-propagation pass per sector over every
// detector slice at once.
class JointDecoder {
  public:
    JointDecoder(const DemModel& dem_x, const DemModel& dem_z, BposdConfig cfg = {});

    DecodeOutcome decode(const ShotRecord& shot);

  private:
    BposdDecoder dx_, dz_;
};

}  // namespace torus4
