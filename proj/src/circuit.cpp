#include "torus4/circuit.hpp"

#include <stdexcept>

namespace torus4 {

int Circuit::cnot_layer_count() const {
    int total = 0;
    for (const auto& layer : layers)
        for (const auto& op : layer.ops)
            if (op.kind == OpKind::CX) {
                ++total;
                break;
            }
    return total / std::max(1, total_rounds);
}

std::size_t Circuit::cnot_count() const {
    std::size_t c = 0;
    for (const auto& layer : layers)
        for (const auto& op : layer.ops)
            if (op.kind == OpKind::CX) ++c;
    return c;
}

namespace {

struct Builder {
    const CssCode& code;
    CellIndexer ix;
    Circuit c;

    explicit Builder(const CssCode& cc) : code(cc), ix(cc.h) {
        c.det = cc.h.det();
        c.n_data = static_cast<std::size_t>(ix.num_cells(2));
        c.n_xanc = static_cast<std::size_t>(ix.num_cells(1));
        c.n_zanc = static_cast<std::size_t>(ix.num_cells(3));
    }

    Layer prep_layer(bool x_half, bool z_half) {
        Layer l;
        if (x_half)
            for (std::int64_t a = 0; a < ix.num_cells(1); ++a)
                l.ops.push_back({OpKind::PrepX, c.xanc_id(a), -1});
        if (z_half)
            for (std::int64_t z = 0; z < ix.num_cells(3); ++z)
                l.ops.push_back({OpKind::PrepZ, c.zanc_id(z), -1});
        return l;
    }

    Layer meas_layer(bool x_half, bool z_half, int round) {
        Layer l;
        if (x_half)
            for (std::int64_t a = 0; a < ix.num_cells(1); ++a) {
                l.ops.push_back({OpKind::MeasX, c.xanc_id(a), -1});
                c.meas.push_back({SECTOR_Z, static_cast<std::int32_t>(a), round});
            }
        if (z_half)
            for (std::int64_t z = 0; z < ix.num_cells(3); ++z) {
                l.ops.push_back({OpKind::MeasZ, c.zanc_id(z), -1});
                c.meas.push_back({SECTOR_X, static_cast<std::int32_t>(z), round});
            }
        return l;
    }

    // face an edge extends to when swept along `axis` with `sign`
    Cell x_partner(const Cell& edge, int axis, int sign) const {
        Cell b;
        b.dirs = static_cast<std::uint8_t>(edge.dirs | (1 << axis));
        Point p = edge.base;
        if (sign < 0) p[axis] -= 1;
        b.base = canonicalize(code.h, p);
        return b;
    }

    // face a cube exposes when swept along `axis` with `sign`
    Cell z_partner(const Cell& cube, int axis, int sign) const {
        Cell b;
        b.dirs = static_cast<std::uint8_t>(cube.dirs & ~(1 << axis));
        Point p = cube.base;
        if (sign > 0) p[axis] += 1;
        b.base = canonicalize(code.h, p);
        return b;
    }

    void add_cnots(Layer& l, int axis, int sign, bool x_half, bool z_half) {
        if (x_half)
            for (std::int64_t a = 0; a < ix.num_cells(1); ++a) {
                Cell edge = ix.cell_at(1, a);
                if (edge.dirs & (1 << axis)) continue;
                Cell face = x_partner(edge, axis, sign);
                l.ops.push_back({OpKind::CX, c.xanc_id(a),
                                 c.data_id(ix.index(face))});
            }
        if (z_half)
            for (std::int64_t z = 0; z < ix.num_cells(3); ++z) {
                Cell cube = ix.cell_at(3, z);
                if (!(cube.dirs & (1 << axis))) continue;
                Cell face = z_partner(cube, axis, sign);
                l.ops.push_back({OpKind::CX, c.data_id(ix.index(face)),
                                 c.zanc_id(z)});
            }
    }
};

}  // namespace

Circuit starfish_round(const CssCode& code) {
    Builder b(code);
    b.c.kind = "starfish";
    static const int sweep[8][2] = {{0, +1}, {0, -1}, {1, +1}, {1, -1},
                                    {2, +1}, {2, -1}, {3, +1}, {3, -1}};
    b.c.layers.push_back(b.prep_layer(true, false));
    for (auto [axis, sign] : sweep) {
        Layer l;
        b.add_cnots(l, axis, sign, true, false);
        b.c.layers.push_back(std::move(l));
    }
    b.c.layers.push_back(b.meas_layer(true, false, 0));
    b.c.layers.push_back(b.prep_layer(false, true));
    for (auto [axis, sign] : sweep) {
        Layer l;
        b.add_cnots(l, axis, sign, false, true);
        b.c.layers.push_back(std::move(l));
    }
    b.c.layers.push_back(b.meas_layer(false, true, 0));
    return b.c;
}

Circuit compact_round(const CssCode& code) {
    Builder b(code);
    b.c.kind = "compact";
    static const int sweep[8][2] = {{3, -1}, {2, -1}, {1, -1}, {0, -1},
                                    {0, +1}, {1, +1}, {2, +1}, {3, +1}};
    b.c.layers.push_back(b.prep_layer(true, true));
    for (auto [axis, sign] : sweep) {
        Layer l;
        b.add_cnots(l, axis, sign, true, true);
        b.c.layers.push_back(std::move(l));
    }
    b.c.layers.push_back(b.meas_layer(true, true, 0));
    return b.c;
}

Circuit repeat_rounds(const Circuit& round, int rounds) {
    if (rounds < 1) throw std::invalid_argument("repeat_rounds: need at least one round");
    if (round.total_rounds != 1)
        throw std::invalid_argument("repeat_rounds: input must be a single round");
    Circuit out = round;
    out.layers.clear();
    out.meas.clear();
    out.noisy_rounds = rounds;
    out.total_rounds = rounds + 1;
    for (int r = 0; r < rounds + 1; ++r) {
        bool noiseless = (r == rounds);
        for (const auto& layer : round.layers) {
            Layer l = layer;
            l.noiseless = noiseless;
            out.layers.push_back(std::move(l));
        }
        for (const auto& m : round.meas) out.meas.push_back({m.sector, m.stab, r});
    }
    return out;
}

EffectiveCheckReport effective_checks(const CssCode& code, const Circuit& c) {
    CellIndexer ix(code.h);
    std::size_t nq = c.num_qubits();
    std::size_t nd = c.n_data;
    std::vector<BitVec> xs(nq, BitVec(nd)), zs(nq, BitVec(nd));
    for (std::size_t q = 0; q < nd; ++q) {
        xs[q].set(q);
        zs[q].set(q);
    }

    EffectiveCheckReport rep;
    std::size_t meas_i = 0;
    for (const auto& layer : c.layers) {
        for (const auto& op : layer.ops) {
            switch (op.kind) {
                case OpKind::PrepX:
                case OpKind::PrepZ:
                    xs[static_cast<std::size_t>(op.q0)].clear();
                    zs[static_cast<std::size_t>(op.q0)].clear();
                    break;
                case OpKind::CX:
                    xs[static_cast<std::size_t>(op.q1)] ^= xs[static_cast<std::size_t>(op.q0)];
                    zs[static_cast<std::size_t>(op.q0)] ^= zs[static_cast<std::size_t>(op.q1)];
                    break;
                case OpKind::MeasX: {
                    const MeasRef& m = c.meas.at(meas_i++);
                    const BitVec& want = code.hx.row[static_cast<std::size_t>(m.stab)];
                    if (zs[static_cast<std::size_t>(op.q0)] != want) {
                        rep.ok = false;
                        rep.mismatches.push_back(
                            {m.sector, m.stab, ix.cell_at(1, m.stab).str()});
                    }
                    break;
                }
                case OpKind::MeasZ: {
                    const MeasRef& m = c.meas.at(meas_i++);
                    const BitVec& want = code.hz.row[static_cast<std::size_t>(m.stab)];
                    if (xs[static_cast<std::size_t>(op.q0)] != want) {
                        rep.ok = false;
                        rep.mismatches.push_back(
                            {m.sector, m.stab, ix.cell_at(3, m.stab).str()});
                    }
                    break;
                }
            }
        }
    }
    if (meas_i != c.meas.size())
        throw std::logic_error("effective_checks: measurement schedule out of sync");
    return rep;
}

}  // namespace torus4
