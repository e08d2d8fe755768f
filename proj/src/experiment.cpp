#include "torus4/experiment.hpp"

#include <chrono>
#include <memory>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace torus4 {

const std::vector<NamedLattice>& lattice_registry() {
    static const std::vector<NamedLattice> reg = {
        {"det2", Hnf::from_flat({1, 0, 0, 1, 1, 0, 1, 1, 0, 2}), 2, true},
        {"det3", Hnf::from_flat({1, 0, 0, 1, 1, 0, 1, 1, 1, 3}), 3, true},
        {"det5", Hnf::from_flat({1, 0, 0, 1, 1, 0, 2, 1, 3, 5}), 4, true},
        {"det9", Hnf::from_flat({1, 0, 0, 5, 1, 0, 6, 1, 7, 9}), 6, true},
        {"det9b", Hnf::from_flat({1, 0, 0, 4, 1, 0, 6, 1, 7, 9}), 0, false},
        {"hadamard", Hnf::from_flat({1, 1, 1, 1, 2, 0, 2, 2, 2, 4}), 8, true},
        {"det16", Hnf::from_flat({1, 0, 0, 3, 1, 0, 5, 1, 7, 16}), 8, true},
        {"det18", Hnf::from_flat({1, 0, 0, 3, 1, 0, 5, 1, 7, 18}), 9, true},
        {"det45", Hnf::from_flat({1, 0, 1, 6, 1, 0, 11, 3, 9, 15}), 15, true},
        {"det68", Hnf::from_flat({1, 0, 0, 21, 1, 1, 24, 2, 30, 34}), 18, false},
        {"det152", Hnf::from_flat({1, 0, 0, 115, 1, 0, 124, 1, 136, 152}), 30, false},
    };
    return reg;
}

const NamedLattice* find_lattice(const std::string& name) {
    for (const NamedLattice& nl : lattice_registry())
        if (nl.name == name) return &nl;
    return nullptr;
}

MemoryResult run_memory_experiment(const MemoryConfig& cfg) {
    if (cfg.ps.empty()) throw std::invalid_argument("no error rates given");
    if (cfg.circuit != "starfish" && cfg.circuit != "compact")
        throw std::invalid_argument("unknown circuit: " + cfg.circuit);
    if (cfg.decoder != "power" && cfg.decoder != "bposd")
        throw std::invalid_argument("unknown decoder: " + cfg.decoder);
    const int rounds = cfg.rounds > 0 ? cfg.rounds : cfg.distance;
    if (rounds <= 0) throw std::invalid_argument("set rounds, or a distance to default to");
#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

    CssCode code = build_css(cfg.h);
    LogicalBasis basis = logical_basis_linear(code);
    Circuit round =
        (cfg.circuit == "starfish") ? starfish_round(code) : compact_round(code);
    NoiseModel nm;
    nm.p = cfg.ps.front();
    NoisyCircuit nc = insert_noise(repeat_rounds(round, rounds), nm);
    FaultDictionary dict = enumerate_single_faults(code, nc, basis);
    SparseSampler sampler(nc, dict);

    std::unique_ptr<SingleShotDecoder> power;
    PowerModelPair per_round, final_round;
    DemModel dems[2];
    if (cfg.decoder == "power") {
        NoisyCircuit nc1 = insert_noise(repeat_rounds(round, 1), nm);
        FaultDictionary dict1 = enumerate_single_faults(code, nc1, basis);
        per_round = build_power_model(code, dict1, basis, cfg.table_depth, cfg.k_max);
        final_round = build_final_model(code, basis, cfg.table_depth, cfg.k_max);
        power = std::make_unique<SingleShotDecoder>(per_round, final_round, rounds);
    } else {
        dems[SECTOR_X] = build_dem(dict, nc, SECTOR_X);
        dems[SECTOR_Z] = build_dem(dict, nc, SECTOR_Z);
    }

    MemoryResult out;
    out.cfg = cfg;
    out.rounds = rounds;
    out.n = code.n;

    for (std::size_t pi = 0; pi < cfg.ps.size(); ++pi) {
        const double p = cfg.ps[pi];
        auto t0 = std::chrono::steady_clock::now();
        nc.model.p = p;

        int nthreads = 1;
#ifdef _OPENMP
        nthreads = omp_get_max_threads();
#endif
        std::vector<std::unique_ptr<JointDecoder>> joints;
        if (cfg.decoder == "bposd") {
            dems[SECTOR_X].set_p(p);
            dems[SECTOR_Z].set_p(p);
            for (int t = 0; t < nthreads; ++t)
                joints.push_back(
                    std::make_unique<JointDecoder>(dems[SECTOR_X], dems[SECTOR_Z], cfg.bp));
        }
        const std::uint64_t master = splitmix64(cfg.seed ^ splitmix64(pi + 1));

        std::uint64_t attempts = 0, fails = 0, discarded = 0;
        const std::uint64_t batch = 4096;
        while (true) {
            std::uint64_t begin = attempts, end = std::min(attempts + batch, cfg.max_shots);
            std::int64_t batch_fails = 0, batch_disc = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : batch_fails, batch_disc)
#endif
            for (std::int64_t i = std::int64_t(begin); i < std::int64_t(end); ++i) {
                ShotRecord shot = sampler.sample(master, std::uint64_t(i));
                DecodeOutcome oc;
                if (power) {
                    oc = power->decode(shot);
                } else {
                    int tid = 0;
#ifdef _OPENMP
                    tid = omp_get_thread_num();
#endif
                    oc = joints[std::size_t(tid)]->decode(shot);
                }
                if (cfg.postselect_weight >= 0 && long(oc.weight) > cfg.postselect_weight) {
                    batch_disc += 1;
                    continue;
                }
                if (oc.failed()) batch_fails += 1;
            }
            attempts = end;
            fails += std::uint64_t(batch_fails);
            discarded += std::uint64_t(batch_disc);
            if (attempts >= cfg.max_shots) break;
            if (attempts >= cfg.min_shots && fails >= cfg.min_failures) {
                std::uint64_t kept = attempts - discarded;
                Wilson w = wilson_interval(fails, kept);
                if (w.center > 0 && (w.hi - w.lo) / 2 <= cfg.rel_ci * w.center) break;
            }
        }

        MemoryPoint pt;
        pt.p = p;
        pt.shots = attempts - discarded;
        pt.failures = fails;
        pt.discarded = discarded;
        if (pt.shots > 0) {
            Wilson w = wilson_interval(fails, pt.shots);
            pt.rate = w.center;
            pt.lo = w.lo;
            pt.hi = w.hi;
            pt.per_round = pt.rate / rounds;
            pt.per_round_lo = pt.lo / rounds;
            pt.per_round_hi = pt.hi / rounds;
            pt.per_qubit = pt.per_round / 6.0;
        }
        pt.discard_fraction = attempts ? double(discarded) / double(attempts) : 0.0;
        pt.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.points.push_back(pt);
    }
    return out;
}

SpecsRow specs_row(const std::string& name, const Hnf& h, int distance, std::uint64_t blocks,
                   const std::string& circuit) {
    SpecsRow r;
    r.name = name;
    r.det = std::uint64_t(h.det());
    r.distance = distance;
    r.blocks = blocks;
    r.logical = 6 * blocks;
    r.data = 6 * r.det * blocks;
    r.meas = 8 * r.det * blocks;
    r.cnots_per_round = 48 * r.det * blocks;
    r.depth = (circuit == "starfish") ? 16 : 8;
    return r;
}

}  // namespace torus4
