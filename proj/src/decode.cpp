#include "torus4/decode.hpp"

#include <stdexcept>

namespace torus4 {

SingleShotDecoder::SingleShotDecoder(const PowerModelPair& per_round,
                                     const PowerModelPair& final_round, int noisy_rounds)
    : per_round_(&per_round), final_(&final_round), rounds_(noisy_rounds) {
    if (noisy_rounds < 1) throw std::invalid_argument("need at least one noisy round");
}

DecodeOutcome SingleShotDecoder::decode(const ShotRecord& shot) const {
    DecodeOutcome out;
    for (int sector = 0; sector < 2; ++sector) {
        const PowerModel& per = (sector == SECTOR_X) ? per_round_->x : per_round_->z;
        const PowerModel& fin = (sector == SECTOR_X) ? final_->x : final_->z;
        const std::size_t checks = per.checks;
        if (shot.det[sector].n != checks * std::size_t(rounds_ + 1))
            throw std::invalid_argument("detector record does not match round count");

        auto slice = [&](int r) {
            BitVec t(checks);
            for (std::size_t b = 0; b < checks; ++b)
                if (shot.det[sector].get(std::size_t(r) * checks + b)) t.set(b);
            return t;
        };

        BitVec carry(checks);
        BitVec correction(per.n_data);
        std::uint8_t acted = 0;
        for (int r = 0; r < rounds_; ++r) {
            BitVec t = slice(r);
            t ^= carry;
            PowerResult pr = power_decode(per, t);
            acted ^= pr.logical;
            correction ^= pr.recovery;
            carry = std::move(pr.carry);
            out.fallback = out.fallback || pr.fallback;
        }
        BitVec t = slice(rounds_);
        t ^= carry;
        PowerResult pr = power_decode(fin, t);
        acted ^= pr.logical;
        correction ^= pr.recovery;
        out.fallback = out.fallback || pr.fallback;

        out.fail[sector] = acted != shot.logical[sector];
        out.weight += correction.popcount();
    }
    return out;
}

JointDecoder::JointDecoder(const DemModel& dem_x, const DemModel& dem_z, BposdConfig cfg)
    : dx_(dem_x, cfg), dz_(dem_z, cfg) {}

DecodeOutcome JointDecoder::decode(const ShotRecord& shot) {
    DecodeOutcome out;
    BposdResult rx = dx_.decode(shot.det[SECTOR_X]);
    BposdResult rz = dz_.decode(shot.det[SECTOR_Z]);
    out.fail[SECTOR_X] = rx.logical != shot.logical[SECTOR_X];
    out.fail[SECTOR_Z] = rz.logical != shot.logical[SECTOR_Z];
    out.fallback = !rx.converged || !rz.converged;
    out.weight = rx.weight + rz.weight;
    return out;
}

}  // namespace torus4
