#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torus4/experiment.hpp"
#include "torus4/sim.hpp"

using namespace torus4;

namespace {

struct Setup {
    CssCode code;
    LogicalBasis basis;
    NoisyCircuit nc;

    Setup(const char* name, const char* kind, int rounds, double p)
        : code(build_css(find_lattice(name)->h)), basis(logical_basis_linear(code)) {
        Circuit round = std::string(kind) == "starfish" ? starfish_round(code)
                                                        : compact_round(code);
        NoiseModel nm;
        nm.p = p;
        nc = insert_noise(repeat_rounds(round, rounds), nm);
    }
};

}  // namespace

TEST_CASE("noise site and dictionary entry counts are exact") {
    Setup s("det3", "starfish", 1, 1e-3);
    // 24 preparation flips, 144 depolarizing pairs, 24 measurement flips
    CHECK(s.nc.sites.size() == 192);
    FaultDictionary dict = enumerate_single_faults(s.code, s.nc, s.basis);
    CHECK(dict.entries.size() == 24 + 144 * 15 + 24);
    CHECK(dict.num_checks == 12);
    CHECK(dict.slices == 2);
    // every class occurs somewhere
    std::size_t by_class[4] = {0, 0, 0, 0};
    for (const DictEntry& e : dict.entries) by_class[std::size_t(e.cls)] += 1;
    CHECK(by_class[std::size_t(FaultClass::Qubit)] > 0);
    CHECK(by_class[std::size_t(FaultClass::MeasFlip)] > 0);
    CHECK(by_class[std::size_t(FaultClass::Ancillary)] > 0);
}

TEST_CASE("the noiseless tail carries no sites") {
    Setup s("det3", "compact", 2, 1e-3);
    const auto& layers = s.nc.circuit.layers;
    for (const NoiseSite& site : s.nc.sites)
        CHECK_FALSE(layers[std::size_t(site.layer)].noiseless);
}

TEST_CASE("zero rate means zero faults and trivial shots") {
    Setup s("det3", "compact", 3, 0.0);
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        auto faults = sample_faults(s.nc, rng);
        CHECK(faults.empty());
    }
    FrameSim sim(s.code, s.nc, s.basis);
    ShotRecord rec = sim.run({});
    CHECK(rec.det[0].is_zero());
    CHECK(rec.det[1].is_zero());
    CHECK(rec.logical[0] == 0);
    CHECK(rec.logical[1] == 0);
}

TEST_CASE("sampled fault count matches the analytic mean") {
    Setup s("det3", "starfish", 1, 0.01);
    Rng rng(99);
    const int shots = 20000;
    double total = 0;
    for (int i = 0; i < shots; ++i) total += double(sample_faults(s.nc, rng).size());
    double mean = total / shots;
    // 192 sites, each firing independently at p
    CHECK(mean == doctest::Approx(192 * 0.01).epsilon(0.05));
}

TEST_CASE("depolarizing paulis cover all fifteen values") {
    Setup s("det3", "compact", 1, 0.5);
    Rng rng(17);
    std::size_t seen[16] = {};
    for (int i = 0; i < 400; ++i)
        for (const Fault& f : sample_faults(s.nc, rng))
            if (s.nc.sites[f.site].kind == SiteKind::Depol2) seen[f.pauli] += 1;
    for (int v = 1; v <= 15; ++v) CHECK(seen[v] > 0);
    CHECK(seen[0] == 0);
}

TEST_CASE("fast sampler reproduces the frame simulator bit for bit") {
    Setup s("det9", "compact", 2, 3e-3);
    FrameSim ref(s.code, s.nc, s.basis);
    FaultDictionary dict = enumerate_single_faults(s.code, s.nc, s.basis);
    SparseSampler fast(s.nc, dict);
    Rng rng(123);
    for (int i = 0; i < 300; ++i) {
        auto faults = sample_faults(s.nc, rng);
        ShotRecord a = ref.run(faults);
        ShotRecord b = fast.run(faults);
        CHECK(a.det[0] == b.det[0]);
        CHECK(a.det[1] == b.det[1]);
        CHECK(a.logical[0] == b.logical[0]);
        CHECK(a.logical[1] == b.logical[1]);
    }
}

TEST_CASE("streams replay deterministically by shot index") {
    Setup s("det3", "compact", 2, 5e-3);
    FaultDictionary dict = enumerate_single_faults(s.code, s.nc, s.basis);
    SparseSampler fast(s.nc, dict);
    ShotRecord a = fast.sample(42, 7);
    ShotRecord b = fast.sample(42, 7);
    CHECK(a.det[0] == b.det[0]);
    CHECK(a.det[1] == b.det[1]);
    bool differs = false;
    for (std::uint64_t i = 0; i < 50 && !differs; ++i) {
        ShotRecord c = fast.sample(42, 100 + i);
        differs = !(c.det[0] == a.det[0]) || !(c.det[1] == a.det[1]);
    }
    CHECK(differs);
}

TEST_CASE("faults compose linearly") {
    Setup s("det3", "starfish", 1, 1e-3);
    FrameSim sim(s.code, s.nc, s.basis);
    // the same fault twice cancels exactly
    std::vector<Fault> twice = {{30, 1}, {30, 1}};
    ShotRecord rec = sim.run(twice);
    CHECK(rec.det[0].is_zero());
    CHECK(rec.det[1].is_zero());
    CHECK(rec.logical[0] == 0);
    CHECK(rec.logical[1] == 0);
}

TEST_CASE("telescoped detector slices equal the residual syndrome") {
    Setup s("det3", "compact", 2, 1e-3);
    FaultDictionary dict = enumerate_single_faults(s.code, s.nc, s.basis);
    const std::size_t checks = dict.num_checks;
    for (const DictEntry& e : dict.entries) {
        // consecutive-xor slices telescope back to the final raw syndrome
        for (int sector : {SECTOR_X, SECTOR_Z}) {
            BitVec cum(checks);
            for (int r = 0; r < dict.slices; ++r)
                for (std::size_t k = 0; k < checks; ++k)
                    if (e.det[sector].get(std::size_t(r) * checks + k)) cum.flip(k);
            const F2Matrix& hmat = sector == SECTOR_X ? s.code.hz : s.code.hx;
            CHECK(cum == hmat.mul(e.residual[sector]));
        }
    }
}

TEST_CASE("residual logical flips match the pairing with the basis") {
    Setup s("det3", "compact", 1, 1e-3);
    FaultDictionary dict = enumerate_single_faults(s.code, s.nc, s.basis);
    for (const DictEntry& e : dict.entries)
        for (int j = 0; j < 6; ++j) {
            bool fx = BitVec::dot(e.residual[SECTOR_X], s.basis.lz.row[std::size_t(j)]);
            bool fz = BitVec::dot(e.residual[SECTOR_Z], s.basis.lx.row[std::size_t(j)]);
            CHECK(((e.logical[SECTOR_X] >> j) & 1) == std::uint8_t(fx));
            CHECK(((e.logical[SECTOR_Z] >> j) & 1) == std::uint8_t(fz));
        }
}

TEST_CASE("measurement flip entries echo one check across two slices") {
    Setup s("det3", "starfish", 2, 1e-3);
    FaultDictionary dict = enumerate_single_faults(s.code, s.nc, s.basis);
    std::size_t found = 0;
    for (const DictEntry& e : dict.entries) {
        if (e.cls != FaultClass::MeasFlip) continue;
        found += 1;
        CHECK(e.residual[0].is_zero());
        CHECK(e.residual[1].is_zero());
        CHECK(e.logical[0] == 0);
        CHECK(e.logical[1] == 0);
        const BitVec& d = e.det[0].is_zero() ? e.det[1] : e.det[0];
        auto bits = d.ones();
        REQUIRE(bits.size() == 2);
        CHECK(bits[1] - bits[0] == dict.num_checks);
    }
    // Classification is by effect, so three families land here per noisy round:
    // 48 explicit prep/meas flip sites, 144 depolarizing elements that put the
    // measurement-flipping Pauli on an ancilla alone (Z on an X ancilla never
    // leaves it; X on a Z ancilla never leaves it), and 24 Y-on-ancilla elements
    // after that ancilla's last coupling layer, whose other component is inert.
    CHECK(found == 2 * (48 + 144 + 24));
}

TEST_CASE("qubit entries are single-slice data errors") {
    Setup s("det3", "compact", 2, 1e-3);
    FaultDictionary dict = enumerate_single_faults(s.code, s.nc, s.basis);
    for (const DictEntry& e : dict.entries) {
        if (e.cls != FaultClass::Qubit) continue;
        CHECK(e.residual[SECTOR_X].popcount() <= 1);
        CHECK(e.residual[SECTOR_Z].popcount() <= 1);
        CHECK((e.residual[SECTOR_X].popcount() + e.residual[SECTOR_Z].popcount()) >= 1);
    }
}

TEST_CASE("unknown faults are rejected by the fast sampler") {
    Setup s("det3", "compact", 1, 1e-3);
    FaultDictionary dict = enumerate_single_faults(s.code, s.nc, s.basis);
    SparseSampler fast(s.nc, dict);
    // a flip site cannot carry a two-qubit pauli index
    std::uint32_t flip_site = 0;
    for (std::size_t i = 0; i < s.nc.sites.size(); ++i)
        if (s.nc.sites[i].kind != SiteKind::Depol2) {
            flip_site = std::uint32_t(i);
            break;
        }
    CHECK_THROWS_AS(fast.run({{flip_site, 5}}), std::out_of_range);
}
