#include "torus4/io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace torus4 {

using nlohmann::json;

namespace {

Basis4 read_4x4(const json& j, const std::string& key) {
    Basis4 b{};
    if (!j.is_array() || j.size() != 4) throw std::invalid_argument(key + " must be a 4x4 array");
    for (int i = 0; i < 4; ++i) {
        if (!j[i].is_array() || j[i].size() != 4)
            throw std::invalid_argument(key + " must be a 4x4 array");
        for (int k = 0; k < 4; ++k) b[i][k] = j[i][k].get<std::int64_t>();
    }
    return b;
}

}  // namespace

Hnf load_lattice_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open lattice file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("bad lattice file " + path + ": " + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "hnf" && it.key() != "basis")
            throw std::invalid_argument("unknown key in lattice file: " + it.key());
    if (j.contains("hnf")) {
        Hnf h;
        h.a = read_4x4(j["hnf"], "hnf");
        if (!h.valid()) throw std::invalid_argument("matrix is not in Hermite normal form");
        return h;
    }
    if (j.contains("basis")) return hnf_reduce(read_4x4(j["basis"], "basis"));
    throw std::invalid_argument("lattice file needs an \"hnf\" or \"basis\" key");
}

Hnf parse_hnf_flat(const std::string& csv) {
    std::array<std::int64_t, 10> v{};
    std::stringstream ss(csv);
    std::string tok;
    std::size_t i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i >= 10) throw std::invalid_argument("expected 10 comma-separated integers");
        v[i++] = std::stoll(tok);
    }
    if (i != 10) throw std::invalid_argument("expected 10 comma-separated integers");
    return Hnf::from_flat(v);
}

std::string to_alist(const F2Matrix& m) {
    auto sup = m.support();
    std::vector<std::vector<std::size_t>> cols(m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c : sup[r]) cols[c].push_back(r);
    std::size_t wr = 0, wc = 0;
    for (const auto& s : sup) wr = std::max(wr, s.size());
    for (const auto& s : cols) wc = std::max(wc, s.size());

    std::ostringstream os;
    os << m.cols << ' ' << m.rows << '\n' << wc << ' ' << wr << '\n';
    for (std::size_t c = 0; c < m.cols; ++c) os << cols[c].size() << (c + 1 < m.cols ? ' ' : '\n');
    for (std::size_t r = 0; r < m.rows; ++r) os << sup[r].size() << (r + 1 < m.rows ? ' ' : '\n');
    for (std::size_t c = 0; c < m.cols; ++c) {
        for (std::size_t k = 0; k < wc; ++k)
            os << (k < cols[c].size() ? cols[c][k] + 1 : 0) << (k + 1 < wc ? ' ' : '\n');
    }
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t k = 0; k < wr; ++k)
            os << (k < sup[r].size() ? sup[r][k] + 1 : 0) << (k + 1 < wr ? ' ' : '\n');
    }
    return os.str();
}

std::string check_matrices_json(const CssCode& code) {
    json j;
    j["n"] = code.n;
    j["hx"] = code.hx.support();
    j["hz"] = code.hz.support();
    return j.dump(2) + "\n";
}

namespace {

void emit_header(std::ostringstream& os, const CssCode& code, const Circuit& c) {
    CellIndexer ix(code.h);
    os << "# lattice " << code.h.str() << "\n";
    os << "# qubits " << c.num_qubits() << " data " << c.n_data << " xanc " << c.n_xanc
       << " zanc " << c.n_zanc << "\n";
    for (std::size_t q = 0; q < c.n_data; ++q)
        os << "# id " << q << " data " << ix.cell_at(2, std::int64_t(q)).str() << "\n";
    for (std::size_t a = 0; a < c.n_xanc; ++a)
        os << "# id " << c.n_data + a << " xanc " << ix.cell_at(1, std::int64_t(a)).str() << "\n";
    for (std::size_t a = 0; a < c.n_zanc; ++a)
        os << "# id " << c.n_data + c.n_xanc + a << " zanc "
           << ix.cell_at(3, std::int64_t(a)).str() << "\n";
}

const char* op_name(OpKind k) {
    switch (k) {
        case OpKind::PrepX: return "PX";
        case OpKind::PrepZ: return "PZ";
        case OpKind::CX: return "CX";
        case OpKind::MeasX: return "MX";
        case OpKind::MeasZ: return "MZ";
    }
    return "?";
}

void emit_op(std::ostringstream& os, const Op& op) {
    os << op_name(op.kind) << ' ' << op.q0;
    if (op.kind == OpKind::CX) os << ' ' << op.q1;
    os << '\n';
}

}  // namespace

std::string circuit_text(const CssCode& code, const Circuit& c) {
    std::ostringstream os;
    emit_header(os, code, c);
    for (std::size_t l = 0; l < c.layers.size(); ++l) {
        if (c.layers[l].noiseless) os << "# noiseless\n";
        for (const Op& op : c.layers[l].ops) emit_op(os, op);
        os << "TICK\n";
    }
    return os.str();
}

std::string noisy_circuit_text(const CssCode& code, const NoisyCircuit& nc) {
    std::ostringstream os;
    emit_header(os, code, nc.circuit);
    os << "# p " << nc.model.p << "\n";
    std::size_t si = 0;
    for (std::size_t l = 0; l < nc.circuit.layers.size(); ++l) {
        if (nc.circuit.layers[l].noiseless) os << "# noiseless\n";
        for (std::size_t o = 0; o < nc.circuit.layers[l].ops.size(); ++o) {
            const Op& op = nc.circuit.layers[l].ops[o];
            // noise before a measurement comes first, after anything else last
            bool site_here = si < nc.sites.size() && nc.sites[si].layer == std::int32_t(l) &&
                             nc.sites[si].op == std::int32_t(o);
            if (site_here && nc.sites[si].kind == SiteKind::MeasFlip) {
                os << "FLIP " << nc.model.p << ' ' << nc.sites[si].q0 << '\n';
                ++si;
                site_here = false;
            }
            emit_op(os, op);
            if (site_here) {
                if (nc.sites[si].kind == SiteKind::Depol2)
                    os << "DEPOL2 " << nc.model.p << ' ' << nc.sites[si].q0 << ' '
                       << nc.sites[si].q1 << '\n';
                else
                    os << "FLIP " << nc.model.p << ' ' << nc.sites[si].q0 << '\n';
                ++si;
            }
        }
        os << "TICK\n";
    }
    return os.str();
}

std::string circuit_meta_json(const CssCode& code, const Circuit& c) {
    CellIndexer ix(code.h);
    json j;
    j["lattice"] = code.h.to_flat();
    j["kind"] = c.kind;
    j["noisy_rounds"] = c.noisy_rounds;
    j["total_rounds"] = c.total_rounds;
    j["cnot_layers"] = c.cnot_layer_count();
    json cells = json::array();
    for (std::size_t q = 0; q < c.n_data; ++q)
        cells.push_back({{"id", q}, {"role", "data"}, {"cell", ix.cell_at(2, std::int64_t(q)).str()}});
    for (std::size_t a = 0; a < c.n_xanc; ++a)
        cells.push_back(
            {{"id", c.n_data + a}, {"role", "xanc"}, {"cell", ix.cell_at(1, std::int64_t(a)).str()}});
    for (std::size_t a = 0; a < c.n_zanc; ++a)
        cells.push_back({{"id", c.n_data + c.n_xanc + a},
                         {"role", "zanc"},
                         {"cell", ix.cell_at(3, std::int64_t(a)).str()}});
    j["qubits"] = std::move(cells);
    json sched = json::array();
    for (const MeasRef& m : c.meas)
        sched.push_back({{"sector", m.sector}, {"stab", m.stab}, {"round", m.round}});
    j["meas_schedule"] = std::move(sched);
    return j.dump(2) + "\n";
}

std::string distance_report_json(const DistanceReport& r) {
    json j;
    j["dx"] = r.dx;
    j["dz"] = r.dz;
    j["d"] = r.d;
    j["method"] = r.method;
    j["exact"] = r.exact;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["w_max"] = r.w_max;
    j["certificate_x"] = r.certificate_x;
    j["certificate_z"] = r.certificate_z;
    json tr = json::array();
    for (const auto& [t, w] : r.trace) tr.push_back({{"trial", t}, {"best", w}});
    j["trace"] = std::move(tr);
    return j.dump(2) + "\n";
}

void write_shots(std::ostream& os, const Circuit& c, const std::vector<ShotRecord>& shots) {
    const std::size_t det_bits = std::size_t(c.total_rounds) * 4 * std::size_t(c.det);
    const std::size_t det_bytes = (det_bits + 7) / 8;
    json hdr;
    hdr["shots"] = shots.size();
    hdr["det_bits_per_sector"] = det_bits;
    hdr["logical_bytes_per_sector"] = 1;
    os << hdr.dump() << '\n';
    std::vector<unsigned char> buf(det_bytes);
    for (const ShotRecord& s : shots) {
        for (int sector = 0; sector < 2; ++sector) {
            if (s.det[sector].n != det_bits) throw std::invalid_argument("shot size mismatch");
            std::fill(buf.begin(), buf.end(), 0);
            for (std::size_t b = 0; b < det_bits; ++b)
                if (s.det[sector].get(b)) buf[b / 8] |= (unsigned char)(1u << (b % 8));
            os.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
        }
        os.put(char(s.logical[0]));
        os.put(char(s.logical[1]));
    }
}

std::vector<ShotRecord> read_shots(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("missing shot stream header");
    json hdr;
    try {
        hdr = json::parse(line);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad shot stream header: ") + e.what());
    }
    const std::size_t count = hdr.at("shots").get<std::size_t>();
    const std::size_t det_bits = hdr.at("det_bits_per_sector").get<std::size_t>();
    const std::size_t det_bytes = (det_bits + 7) / 8;
    std::vector<ShotRecord> shots(count);
    std::vector<unsigned char> buf(det_bytes);
    for (ShotRecord& s : shots) {
        for (int sector = 0; sector < 2; ++sector) {
            is.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
            s.det[sector] = BitVec(det_bits);
            for (std::size_t b = 0; b < det_bits; ++b)
                if (buf[b / 8] >> (b % 8) & 1) s.det[sector].set(b);
        }
        s.logical[0] = std::uint8_t(is.get());
        s.logical[1] = std::uint8_t(is.get());
        if (!is) throw std::invalid_argument("truncated shot stream");
    }
    return shots;
}

std::string dem_text(const DemModel& m) {
    std::ostringstream os;
    os << "# sector " << m.sector << " detectors " << m.det_bits << " columns " << m.cols.size()
       << "\n";
    os << std::setprecision(12);
    for (const DemColumn& c : m.cols) {
        os << "error(" << c.prior << ")";
        for (std::size_t b : c.det.ones()) os << " D" << b;
        for (int i = 0; i < 6; ++i)
            if (c.logical >> i & 1) os << " L" << i;
        os << "\n";
    }
    return os.str();
}

MemoryConfig parse_memory_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad config: ") + e.what());
    }
    static const std::set<std::string> known = {
        "lattice",   "circuit",     "decoder",    "rounds",       "distance",
        "ps",        "seed",        "min_shots",  "max_shots",    "min_failures",
        "rel_ci",    "postselect_weight", "bp_iters", "bp_scale", "table_depth",
        "k_max",     "threads"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument("unknown config key: " + it.key());

    MemoryConfig cfg;
    if (j.contains("lattice")) {
        const json& l = j["lattice"];
        if (l.is_string()) {
            const std::string s = l.get<std::string>();
            if (const NamedLattice* nl = find_lattice(s)) {
                cfg.h = nl->h;
                cfg.distance = nl->distance;
            } else {
                cfg.h = parse_hnf_flat(s);
            }
        } else if (l.is_array() && l.size() == 10) {
            std::array<std::int64_t, 10> v{};
            for (int i = 0; i < 10; ++i) v[std::size_t(i)] = l[std::size_t(i)].get<std::int64_t>();
            cfg.h = Hnf::from_flat(v);
        } else {
            throw std::invalid_argument("lattice must be a name or a flat 10-entry array");
        }
    } else {
        throw std::invalid_argument("config needs a lattice");
    }
    if (j.contains("circuit")) cfg.circuit = j["circuit"].get<std::string>();
    if (j.contains("decoder")) cfg.decoder = j["decoder"].get<std::string>();
    if (j.contains("rounds")) cfg.rounds = j["rounds"].get<int>();
    if (j.contains("distance")) cfg.distance = j["distance"].get<int>();
    if (j.contains("ps")) cfg.ps = j["ps"].get<std::vector<double>>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("min_shots")) cfg.min_shots = j["min_shots"].get<std::uint64_t>();
    if (j.contains("max_shots")) cfg.max_shots = j["max_shots"].get<std::uint64_t>();
    if (j.contains("min_failures")) cfg.min_failures = j["min_failures"].get<std::uint64_t>();
    if (j.contains("rel_ci")) cfg.rel_ci = j["rel_ci"].get<double>();
    if (j.contains("postselect_weight")) cfg.postselect_weight = j["postselect_weight"].get<long>();
    if (j.contains("bp_iters")) cfg.bp.iters = j["bp_iters"].get<int>();
    if (j.contains("bp_scale")) cfg.bp.scale = j["bp_scale"].get<double>();
    if (j.contains("table_depth")) cfg.table_depth = j["table_depth"].get<int>();
    if (j.contains("k_max")) cfg.k_max = j["k_max"].get<int>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    return cfg;
}

std::string dump_memory_config(const MemoryConfig& cfg) {
    json j;
    j["lattice"] = cfg.h.to_flat();
    j["circuit"] = cfg.circuit;
    j["decoder"] = cfg.decoder;
    j["rounds"] = cfg.rounds;
    j["distance"] = cfg.distance;
    j["ps"] = cfg.ps;
    j["seed"] = cfg.seed;
    j["min_shots"] = cfg.min_shots;
    j["max_shots"] = cfg.max_shots;
    j["min_failures"] = cfg.min_failures;
    j["rel_ci"] = cfg.rel_ci;
    j["postselect_weight"] = cfg.postselect_weight;
    j["bp_iters"] = cfg.bp.iters;
    j["bp_scale"] = cfg.bp.scale;
    j["table_depth"] = cfg.table_depth;
    j["k_max"] = cfg.k_max;
    j["threads"] = cfg.threads;
    return j.dump(2) + "\n";
}

std::uint64_t config_hash(const MemoryConfig& cfg) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : dump_memory_config(cfg)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

json point_json(const MemoryPoint& pt) {
    return {{"p", pt.p},
            {"shots", pt.shots},
            {"failures", pt.failures},
            {"discarded", pt.discarded},
            {"rate", pt.rate},
            {"lo", pt.lo},
            {"hi", pt.hi},
            {"per_round", pt.per_round},
            {"per_round_lo", pt.per_round_lo},
            {"per_round_hi", pt.per_round_hi},
            {"per_qubit", pt.per_qubit},
            {"discard_fraction", pt.discard_fraction},
            {"seconds", pt.seconds}};
}

}  // namespace

std::string results_json(const MemoryResult& r) {
    json j;
    j["config"] = json::parse(dump_memory_config(r.cfg));
    j["config_hash"] = config_hash(r.cfg);
    j["rounds"] = r.rounds;
    j["n"] = r.n;
    json pts = json::array();
    for (const MemoryPoint& pt : r.points) pts.push_back(point_json(pt));
    j["points"] = std::move(pts);
    return j.dump(2) + "\n";
}

std::string results_csv(const MemoryResult& r) {
    std::ostringstream os;
    os << "# config_hash " << config_hash(r.cfg) << " seed " << r.cfg.seed << "\n";
    os << "p,shots,failures,discarded,rate,lo,hi,per_round,per_round_lo,per_round_hi,per_qubit,"
          "discard_fraction,seconds\n";
    os << std::setprecision(12);
    for (const MemoryPoint& pt : r.points)
        os << pt.p << ',' << pt.shots << ',' << pt.failures << ',' << pt.discarded << ','
           << pt.rate << ',' << pt.lo << ',' << pt.hi << ',' << pt.per_round << ','
           << pt.per_round_lo << ',' << pt.per_round_hi << ',' << pt.per_qubit << ','
           << pt.discard_fraction << ',' << pt.seconds << "\n";
    return os.str();
}

std::string plot_data(const MemoryResult& r) {
    std::ostringstream os;
    os << "# x y ylo yhi   (block failure per round vs physical rate)\n";
    os << std::setprecision(12);
    for (const MemoryPoint& pt : r.points)
        os << pt.p << ' ' << pt.per_round << ' ' << pt.per_round_lo << ' ' << pt.per_round_hi
           << "\n";
    return os.str();
}

namespace {

json isometry_json(const Isometry& g) {
    json e;
    e["axes"] = g.m.perm;
    e["signs"] = g.m.sign;
    e["shift"] = g.shift;
    return e;
}

json action_json(const LogicalAction& a) {
    json rows = json::array();
    for (std::size_t r = 0; r < a.s.rows; ++r) {
        std::string line(a.s.cols, '0');
        for (std::size_t c = 0; c < a.s.cols; ++c)
            if (a.s.get(r, c)) line[c] = '1';
        rows.push_back(line);
    }
    json e;
    e["symplectic"] = std::move(rows);
    e["phases"] = a.phases;
    return e;
}

json gate_entry(const char* kind, const Isometry& prov, const FoldGate& g,
                const LogicalAction& a) {
    json e;
    e["kind"] = kind;
    e["provenance"] = isometry_json(prov);
    e["tau"] = g.tau;
    if (g.kind == FoldKind::PhaseType) e["dagger"] = g.dagger;
    e["logical"] = action_json(a);
    return e;
}

}  // namespace

std::string gate_catalog_json(const Hnf& h, const SymmetrySummary& s,
                              const std::vector<ZxDuality>& duals) {
    CssCode code = build_css(h);
    LogicalBasis basis = logical_basis_linear(code);
    json j;
    j["lattice"] = h.to_flat();
    j["isometries"] = s.isometries;
    j["automorphisms"] = s.autos;
    j["qubit_permutations"] = s.qubit_perms;
    j["logical_permutations"] = s.logical_perms;
    j["dualities"] = s.dualities;
    j["involutions"] = s.involutions;
    j["fold_gates"] = s.fold_gates;
    j["logical_group_order"] = s.logical_group.order;
    j["logical_group_exact"] = s.logical_group.exact;
    j["phase_rank"] = s.logical_group.phase_rank;

    json gates = json::array();
    // one permutation gate per distinct qubit action, tagged with the first
    // automorphism that induces it
    std::vector<SignedPerm> autos = lattice_automorphisms(h);
    std::set<std::vector<std::int64_t>> seen;
    for (const SignedPerm& m : autos) {
        Isometry g{m, Point{0, 0, 0, 0}};
        auto tau = cell_permutation(h, g, 2);
        if (!seen.insert(tau).second) continue;
        FoldGate gate = make_permutation_gate(tau);
        if (!preserves_stabilizers(gate, code))
            throw std::runtime_error("automorphism gate failed the stabilizer check");
        gates.push_back(gate_entry("permutation", g, gate, logical_action({&gate}, code, basis)));
    }
    for (const ZxDuality& d : duals) {
        FoldGate g = make_fold_gate(FoldKind::HadamardType, d);
        if (!preserves_stabilizers(g, code)) continue;
        gates.push_back(gate_entry("hadamard", d.g, g, logical_action({&g}, code, basis)));
        break;
    }
    for (const ZxDuality& d : duals) {
        if (!d.involution) continue;
        bool added = false;
        for (bool dag : {false, true}) {
            FoldGate g = make_fold_gate(FoldKind::PhaseType, d, dag);
            if (!preserves_stabilizers(g, code)) continue;
            gates.push_back(gate_entry("phase", d.g, g, logical_action({&g}, code, basis)));
            added = true;
            break;
        }
        if (added) break;
    }
    j["gates"] = std::move(gates);

    json dl = json::array();
    for (const ZxDuality& d : duals) {
        json e = isometry_json(d.g);
        e["involution"] = d.involution;
        e["qubit_perm"] = d.qubit_perm;
        dl.push_back(std::move(e));
    }
    j["zx_dualities"] = std::move(dl);
    return j.dump(2) + "\n";
}

bool verify_gate_catalog(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad catalog: ") + e.what());
    }
    std::array<std::int64_t, 10> flat{};
    for (int i = 0; i < 10; ++i) flat[std::size_t(i)] = j.at("lattice")[std::size_t(i)].get<std::int64_t>();
    Hnf h = Hnf::from_flat(flat);
    CssCode code = build_css(h);
    LogicalBasis basis = logical_basis_linear(code);

    for (const json& e : j.at("gates")) {
        const std::string kind = e.at("kind").get<std::string>();
        FoldGate g;
        g.tau = e.at("tau").get<std::vector<std::int64_t>>();
        if (kind == "hadamard") g.kind = FoldKind::HadamardType;
        else if (kind == "phase") g.kind = FoldKind::PhaseType;
        else if (kind != "permutation") return false;
        if (e.contains("dagger")) g.dagger = e.at("dagger").get<bool>();
        if (g.tau.size() != code.n) return false;
        if (!preserves_stabilizers(g, code)) return false;
        LogicalAction a = logical_action({&g}, code, basis);
        if (!is_symplectic(a.s)) return false;
        if (a.phases != e.at("logical").at("phases").get<std::uint16_t>()) return false;
        const json& rows = e.at("logical").at("symplectic");
        if (rows.size() != a.s.rows) return false;
        for (std::size_t r = 0; r < a.s.rows; ++r) {
            const std::string line = rows[r].get<std::string>();
            if (line.size() != a.s.cols) return false;
            for (std::size_t c = 0; c < a.s.cols; ++c)
                if ((line[c] == '1') != a.s.get(r, c)) return false;
        }
    }
    return true;
}

}  // namespace torus4
