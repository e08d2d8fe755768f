#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "torus4/circuit.hpp"
#include "torus4/experiment.hpp"
#include "torus4/io.hpp"

using namespace torus4;

namespace {

Circuit make_round(const char* lattice, const char* kind) {
    CssCode code = build_css(find_lattice(lattice)->h);
    return std::string(kind) == "starfish" ? starfish_round(code) : compact_round(code);
}

}  // namespace

TEST_CASE("cnot depth is eight interleaved and sixteen split") {
    for (const char* name : {"det3", "det9", "hadamard"}) {
        CHECK(make_round(name, "compact").cnot_layer_count() == 8);
        CHECK(make_round(name, "starfish").cnot_layer_count() == 16);
    }
}

TEST_CASE("every face touches all eight neighbours each round") {
    for (const char* kind : {"compact", "starfish"}) {
        Circuit c = make_round("det9", kind);
        const std::size_t det = 9;
        CHECK(c.cnot_count() == 48 * det);
        // per-qubit tallies: data 8, each ancilla 4 or 6
        std::vector<int> touches(c.num_qubits(), 0);
        for (const Layer& l : c.layers)
            for (const Op& op : l.ops)
                if (op.kind == OpKind::CX) {
                    touches[std::size_t(op.q0)] += 1;
                    touches[std::size_t(op.q1)] += 1;
                }
        for (std::size_t q = 0; q < c.n_data; ++q) CHECK(touches[q] == 8);
        for (std::size_t q = c.n_data; q < c.num_qubits(); ++q) CHECK(touches[q] == 6);
    }
}

TEST_CASE("layers never reuse a qubit") {
    for (const char* name : {"det3", "hadamard"})
        for (const char* kind : {"compact", "starfish"}) {
            Circuit c = make_round(name, kind);
            for (const Layer& l : c.layers) {
                std::set<std::int32_t> used;
                for (const Op& op : l.ops) {
                    CHECK(used.insert(op.q0).second);
                    if (op.kind == OpKind::CX) CHECK(used.insert(op.q1).second);
                }
            }
        }
}

TEST_CASE("ancilla preparation and measurement bracket the round") {
    Circuit c = make_round("det3", "starfish");
    const std::size_t det = 3;
    CHECK(c.n_data == 6 * det);
    CHECK(c.n_xanc == 4 * det);
    CHECK(c.n_zanc == 4 * det);
    std::size_t prepx = 0, prepz = 0, measx = 0, measz = 0;
    for (const Layer& l : c.layers)
        for (const Op& op : l.ops) switch (op.kind) {
                case OpKind::PrepX: prepx++; break;
                case OpKind::PrepZ: prepz++; break;
                case OpKind::MeasX: measx++; break;
                case OpKind::MeasZ: measz++; break;
                default: break;
            }
    CHECK(prepx == 4 * det);
    CHECK(prepz == 4 * det);
    CHECK(measx == 4 * det);
    CHECK(measz == 4 * det);
    // one meas record per measurement op, rounds all zero
    REQUIRE(c.meas.size() == 8 * det);
    std::size_t x_refs = 0;
    for (const MeasRef& m : c.meas) {
        CHECK(m.round == 0);
        x_refs += std::size_t(m.sector == SECTOR_Z);
    }
    CHECK(x_refs == 4 * det);
}

TEST_CASE("measurement refs cover every stabilizer once per round") {
    Circuit c = repeat_rounds(make_round("det3", "compact"), 2);
    CHECK(c.noisy_rounds == 2);
    CHECK(c.total_rounds == 3);
    std::set<std::tuple<int, std::int32_t, int>> seen;
    for (const MeasRef& m : c.meas) CHECK(seen.insert({m.sector, m.stab, m.round}).second);
    CHECK(seen.size() == 2 * 12 * 3);
    for (int round = 0; round < 3; ++round)
        for (std::int32_t s = 0; s < 12; ++s) {
            CHECK(seen.count({SECTOR_X, s, round}));
            CHECK(seen.count({SECTOR_Z, s, round}));
        }
}

TEST_CASE("the trailing round is noiseless and the rest are not") {
    Circuit round = make_round("det3", "compact");
    Circuit c = repeat_rounds(round, 3);
    REQUIRE(c.layers.size() == 4 * round.layers.size());
    const std::size_t per = round.layers.size();
    for (std::size_t i = 0; i < c.layers.size(); ++i)
        CHECK(c.layers[i].noiseless == (i >= 3 * per));
}

TEST_CASE("scheduled circuits measure exactly the stabilizers") {
    for (const char* name : {"det3", "det9"})
        for (const char* kind : {"compact", "starfish"}) {
            CssCode code = build_css(find_lattice(name)->h);
            Circuit c = std::string(kind) == "starfish" ? starfish_round(code)
                                                        : compact_round(code);
            EffectiveCheckReport rep = effective_checks(code, c);
            CHECK(rep.ok);
            CHECK(rep.mismatches.empty());
        }
}

TEST_CASE("a tampered circuit fails the effective-check audit") {
    CssCode code = build_css(find_lattice("det3")->h);
    Circuit c = compact_round(code);
    // retarget one data CNOT to a different face
    for (Layer& l : c.layers)
        for (Op& op : l.ops)
            if (op.kind == OpKind::CX) {
                std::int32_t& data =
                    std::size_t(op.q0) < c.n_data ? op.q0 : op.q1;
                data = (data + 1) % std::int32_t(c.n_data);
                goto done;
            }
done:;
    EffectiveCheckReport rep = effective_checks(code, c);
    CHECK_FALSE(rep.ok);
    CHECK(!rep.mismatches.empty());
}

TEST_CASE("circuit emission is deterministic") {
    CssCode code = build_css(find_lattice("det3")->h);
    Circuit a = repeat_rounds(compact_round(code), 2);
    Circuit b = repeat_rounds(compact_round(code), 2);
    CHECK(circuit_text(code, a) == circuit_text(code, b));
    CHECK(circuit_meta_json(code, a) == circuit_meta_json(code, b));
}

TEST_CASE("cx orientation matches the check type") {
    // X ancillas drive their data (control = ancilla), Z ancillas collect
    // (target = ancilla)
    Circuit c = make_round("det3", "compact");
    for (const Layer& l : c.layers)
        for (const Op& op : l.ops)
            if (op.kind == OpKind::CX) {
                bool q0_data = std::size_t(op.q0) < c.n_data;
                bool q1_data = std::size_t(op.q1) < c.n_data;
                CHECK(q0_data != q1_data);
                if (!q0_data) {
                    // control is an ancilla: must be an X ancilla
                    CHECK(std::size_t(op.q0) < c.n_data + c.n_xanc);
                } else {
                    // target is an ancilla: must be a Z ancilla
                    CHECK(std::size_t(op.q1) >= c.n_data + c.n_xanc);
                }
            }
}
