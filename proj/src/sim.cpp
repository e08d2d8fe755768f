#include "torus4/sim.hpp"

#include <algorithm>
#include <stdexcept>

namespace torus4 {

const char* fault_class_name(FaultClass c) {
    switch (c) {
        case FaultClass::Qubit: return "qubit";
        case FaultClass::MeasFlip: return "measurement_flip";
        case FaultClass::Ancillary: return "ancillary";
        case FaultClass::Partial: return "partial";
    }
    return "?";
}

FrameSim::FrameSim(const CssCode& code, const NoisyCircuit& nc, const LogicalBasis& basis)
    : code_(&code), nc_(&nc), basis_(&basis) {
    const Circuit& c = nc.circuit;
    if (c.n_xanc != c.n_zanc) throw std::logic_error("FrameSim: check count mismatch");
    checks_ = c.n_xanc;
    det_bits_ = static_cast<std::size_t>(c.total_rounds) * checks_;
    site_at_.resize(c.layers.size());
    for (std::size_t li = 0; li < c.layers.size(); ++li)
        site_at_[li].assign(c.layers[li].ops.size(), -1);
    for (std::size_t s = 0; s < nc.sites.size(); ++s)
        site_at_[static_cast<std::size_t>(nc.sites[s].layer)]
                [static_cast<std::size_t>(nc.sites[s].op)] = static_cast<std::int32_t>(s);
}

ShotRecord FrameSim::run(const std::vector<Fault>& faults, BitVec* resx_out,
                         BitVec* resz_out) const {
    const Circuit& c = nc_->circuit;
    std::size_t nq = c.num_qubits();
    std::vector<std::uint8_t> fx(nq, 0), fz(nq, 0);
    std::vector<std::uint8_t> out(c.meas.size(), 0);

    std::size_t cursor = 0, meas_i = 0;
    for (std::size_t li = 0; li < c.layers.size(); ++li) {
        const Layer& layer = c.layers[li];
        for (std::size_t oi = 0; oi < layer.ops.size(); ++oi) {
            const Op& op = layer.ops[oi];
            auto q0 = static_cast<std::size_t>(op.q0);
            switch (op.kind) {
                case OpKind::PrepX:
                case OpKind::PrepZ:
                    fx[q0] = fz[q0] = 0;
                    break;
                case OpKind::CX: {
                    auto q1 = static_cast<std::size_t>(op.q1);
                    fx[q1] ^= fx[q0];
                    fz[q0] ^= fz[q1];
                    break;
                }
                case OpKind::MeasX:
                    out[meas_i++] = fz[q0];
                    break;
                case OpKind::MeasZ:
                    out[meas_i++] = fx[q0];
                    break;
            }
            std::int32_t site = site_at_[li][oi];
            if (site < 0) continue;
            while (cursor < faults.size() &&
                   faults[cursor].site == static_cast<std::uint32_t>(site)) {
                const NoiseSite& ns = nc_->sites[static_cast<std::size_t>(site)];
                int pj = faults[cursor].pauli;
                switch (ns.kind) {
                    case SiteKind::Depol2: {
                        int pa = pj >> 2, pb = pj & 3;
                        if (pauli_has_x(pa)) fx[static_cast<std::size_t>(ns.q0)] ^= 1;
                        if (pauli_has_z(pa)) fz[static_cast<std::size_t>(ns.q0)] ^= 1;
                        if (pauli_has_x(pb)) fx[static_cast<std::size_t>(ns.q1)] ^= 1;
                        if (pauli_has_z(pb)) fz[static_cast<std::size_t>(ns.q1)] ^= 1;
                        break;
                    }
                    case SiteKind::PrepFlip:
                        if (c.layers[li].ops[oi].kind == OpKind::PrepX)
                            fz[q0] ^= 1;
                        else
                            fx[q0] ^= 1;
                        break;
                    case SiteKind::MeasFlip:
                        out[static_cast<std::size_t>(ns.meas_index)] ^= 1;
                        break;
                }
                ++cursor;
            }
        }
    }
    if (meas_i != c.meas.size()) throw std::logic_error("FrameSim: measurement order out of sync");

    ShotRecord rec;
    rec.fault_count = static_cast<std::uint32_t>(faults.size());
    // raw syndromes per sector and round
    std::vector<std::uint8_t> syn[2];
    for (int s = 0; s < 2; ++s) syn[s].assign(det_bits_, 0);
    for (std::size_t m = 0; m < c.meas.size(); ++m) {
        const MeasRef& ref = c.meas[m];
        syn[ref.sector][static_cast<std::size_t>(ref.round) * checks_ +
                        static_cast<std::size_t>(ref.stab)] = out[m];
    }
    for (int s = 0; s < 2; ++s) {
        rec.det[s] = BitVec(det_bits_);
        for (std::size_t r = 0; r < static_cast<std::size_t>(c.total_rounds); ++r)
            for (std::size_t k = 0; k < checks_; ++k) {
                std::uint8_t bit = syn[s][r * checks_ + k];
                if (r > 0) bit ^= syn[s][(r - 1) * checks_ + k];
                if (bit) rec.det[s].set(r * checks_ + k);
            }
    }
    // residual data error and the logical measurements it flips
    BitVec resx(c.n_data), resz(c.n_data);
    for (std::size_t q = 0; q < c.n_data; ++q) {
        if (fx[q]) resx.set(q);
        if (fz[q]) resz.set(q);
    }
    for (std::size_t j = 0; j < 6; ++j) {
        if (BitVec::dot(resx, basis_->lz.row[j])) rec.logical[SECTOR_X] |= (1u << j);
        if (BitVec::dot(resz, basis_->lx.row[j])) rec.logical[SECTOR_Z] |= (1u << j);
    }
    if (resx_out) *resx_out = std::move(resx);
    if (resz_out) *resz_out = std::move(resz);
    return rec;
}

std::vector<Fault> sample_faults(const NoisyCircuit& nc, Rng& rng) {
    std::vector<Fault> faults;
    double p = nc.model.p;
    std::int64_t n = static_cast<std::int64_t>(nc.sites.size());
    std::int64_t pos = 0;
    while (true) {
        std::int64_t skip = rng.geometric_skip(p);
        if (skip >= n - pos) break;
        std::int64_t site = pos + skip;
        std::uint8_t pauli = 1;
        if (nc.sites[static_cast<std::size_t>(site)].kind == SiteKind::Depol2)
            pauli = static_cast<std::uint8_t>(1 + rng.below(15));
        faults.push_back({static_cast<std::uint32_t>(site), pauli});
        pos = site + 1;
    }
    return faults;
}

namespace {

// does `det` consist of exactly slice r of `full` (zero elsewhere)?
bool single_slice_match(const BitVec& det, const BitVec& full, std::size_t checks, int slices,
                        int r) {
    for (int s = 0; s < slices; ++s)
        for (std::size_t k = 0; k < checks; ++k) {
            bool want = (s == r) && full.get(k);
            if (det.get(static_cast<std::size_t>(s) * checks + k) != want) return false;
        }
    return true;
}

FaultClass classify(const DictEntry& e, const CssCode& code, std::size_t checks, int slices) {
    bool res_zero = e.residual[0].is_zero() && e.residual[1].is_zero();
    bool det_zero = e.det[0].is_zero() && e.det[1].is_zero();
    if (res_zero && det_zero) return FaultClass::Partial;

    if (res_zero) {
        // a single flipped outcome shows as one check bit echoed in two slices
        const BitVec* d = nullptr;
        if (e.det[1].is_zero() && !e.det[0].is_zero()) d = &e.det[0];
        if (e.det[0].is_zero() && !e.det[1].is_zero()) d = &e.det[1];
        if (d) {
            auto bits = d->ones();
            if (bits.size() == 2 && bits[1] - bits[0] == checks) return FaultClass::MeasFlip;
        }
        return FaultClass::Partial;
    }

    BitVec full_x = code.hz.mul(e.residual[SECTOR_X]);
    BitVec full_z = code.hx.mul(e.residual[SECTOR_Z]);
    for (int r = 0; r < slices; ++r) {
        if (single_slice_match(e.det[SECTOR_X], full_x, checks, slices, r) &&
            single_slice_match(e.det[SECTOR_Z], full_z, checks, slices, r)) {
            if (e.residual[0].popcount() <= 1 && e.residual[1].popcount() <= 1)
                return FaultClass::Qubit;
            return FaultClass::Ancillary;
        }
    }
    return FaultClass::Partial;
}

}  // namespace

FaultDictionary enumerate_single_faults(const CssCode& code, const NoisyCircuit& nc,
                                        const LogicalBasis& basis, bool parallel) {
    const Circuit& c = nc.circuit;
    if (c.total_rounds < 2)
        throw std::invalid_argument("enumerate_single_faults: need at least two rounds");
    FrameSim sim(code, nc, basis);
    FaultDictionary dict;
    dict.num_checks = c.n_xanc;
    dict.slices = c.total_rounds;
    dict.n_data = c.n_data;

    std::vector<std::pair<std::uint32_t, std::uint8_t>> jobs;
    for (std::size_t s = 0; s < nc.sites.size(); ++s) {
        int np = nc.sites[s].kind == SiteKind::Depol2 ? 15 : 1;
        for (int pj = 1; pj <= np; ++pj)
            jobs.emplace_back(static_cast<std::uint32_t>(s), static_cast<std::uint8_t>(pj));
    }
    dict.entries.resize(jobs.size());

    auto build_one = [&](std::size_t j) {
        DictEntry& e = dict.entries[j];
        e.fault = {jobs[j].first, jobs[j].second};
        ShotRecord rec = sim.run({e.fault}, &e.residual[SECTOR_X], &e.residual[SECTOR_Z]);
        e.det[0] = std::move(rec.det[0]);
        e.det[1] = std::move(rec.det[1]);
        e.logical[0] = rec.logical[0];
        e.logical[1] = rec.logical[1];
        e.cls = classify(e, code, dict.num_checks, dict.slices);
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(jobs.size()); ++j)
            build_one(static_cast<std::size_t>(j));
    } else {
        for (std::size_t j = 0; j < jobs.size(); ++j) build_one(j);
    }
    return dict;
}

SparseSampler::SparseSampler(const NoisyCircuit& nc, const FaultDictionary& dict)
    : nc_(&nc), dict_(&dict) {
    entry_index_.assign(nc.sites.size() * pauli_stride_, SIZE_MAX);
    for (std::size_t i = 0; i < dict.entries.size(); ++i) {
        const Fault& f = dict.entries[i].fault;
        entry_index_[f.site * pauli_stride_ + f.pauli] = i;
    }
}

ShotRecord SparseSampler::run(const std::vector<Fault>& faults) const {
    ShotRecord rec;
    std::size_t det_bits =
        static_cast<std::size_t>(dict_->slices) * dict_->num_checks;
    rec.det[0] = BitVec(det_bits);
    rec.det[1] = BitVec(det_bits);
    rec.fault_count = static_cast<std::uint32_t>(faults.size());
    for (const Fault& f : faults) {
        std::size_t i = entry_index_[f.site * pauli_stride_ + f.pauli];
        if (i == SIZE_MAX) throw std::out_of_range("SparseSampler: unknown fault");
        const DictEntry& e = dict_->entries[i];
        rec.det[0] ^= e.det[0];
        rec.det[1] ^= e.det[1];
        rec.logical[0] ^= e.logical[0];
        rec.logical[1] ^= e.logical[1];
    }
    return rec;
}

ShotRecord SparseSampler::sample(std::uint64_t master_seed, std::uint64_t shot_index) const {
    Rng rng(master_seed, shot_index);
    return run(sample_faults(*nc_, rng));
}

}  // namespace torus4
