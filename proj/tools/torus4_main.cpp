#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "torus4/io.hpp"
#include "torus4/stats.hpp"

namespace fs = std::filesystem;
using namespace torus4;

namespace {

struct LatticeOpts {
    std::string hnf;
    std::string file;
    std::string name;
};

void add_lattice_flags(CLI::App* cmd, LatticeOpts& lo) {
    auto* a = cmd->add_option("--hnf", lo.hnf,
                              "upper-triangle entries a11,a12,a13,a14,a22,a23,a24,a33,a34,a44");
    auto* b = cmd->add_option("--lattice-file", lo.file, "JSON file with an hnf or basis matrix");
    auto* c = cmd->add_option("--lattice", lo.name, "named lattice from the built-in registry");
    a->excludes(b)->excludes(c);
    b->excludes(c);
}

Hnf identity_hnf() { return Hnf::from_flat({1, 0, 0, 0, 1, 0, 0, 1, 0, 1}); }

// known exact/estimated distance when the lattice comes from the registry
Hnf resolve_lattice(const LatticeOpts& lo, int* distance = nullptr) {
    if (!lo.name.empty()) {
        const NamedLattice* nl = find_lattice(lo.name);
        if (!nl) throw std::invalid_argument("unknown lattice name: " + lo.name);
        if (distance) *distance = nl->distance;
        return nl->h;
    }
    if (!lo.file.empty()) return load_lattice_json(lo.file);
    if (!lo.hnf.empty()) return parse_hnf_flat(lo.hnf);
    return identity_hnf();
}

void set_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
}

std::string hash_header(const MemoryConfig& cfg) {
    std::ostringstream os;
    os << "# config " << std::hex << std::setw(16) << std::setfill('0') << config_hash(cfg)
       << std::dec << " seed " << cfg.seed << "\n";
    return os.str();
}

int cmd_params(const LatticeOpts& lo, int trials, int w_max, std::uint64_t seed,
               const std::string& report_path) {
    int known = 0;
    Hnf h = resolve_lattice(lo, &known);
    CssCode code = build_css(h);
    LogicalBasis basis = logical_basis_linear(code);
    const std::size_t k =
        code.n - code.hx.rank() - code.hz.rank();

    DistanceReport rep;
    if (code.h.det() <= 9) {
        rep = distance_exact(code, w_max);
    } else {
        rep = distance_upper_bound(code, basis, trials, seed);
    }
    if (!report_path.empty()) write_file(report_path, distance_report_json(rep));

    std::cout << "[[" << code.n << "," << k << "," << rep.d << "]]";
    if (!rep.exact) std::cout << "  (upper bound, " << rep.trials << " trials)";
    std::cout << "\n";
    return 0;
}

MemoryConfig circuit_config(const Hnf& h, const std::string& kind, int rounds, double p,
                            std::uint64_t seed) {
    MemoryConfig cfg;
    cfg.h = h;
    cfg.circuit = kind;
    cfg.rounds = rounds;
    if (p > 0) cfg.ps = {p};
    cfg.seed = seed;
    return cfg;
}

int cmd_circuit(const LatticeOpts& lo, const std::string& kind, int rounds, double p,
                std::uint64_t seed, const std::string& out_dir) {
    Hnf h = resolve_lattice(lo);
    CssCode code = build_css(h);
    Circuit round = kind == "starfish" ? starfish_round(code) : compact_round(code);
    Circuit c = repeat_rounds(round, rounds);
    EffectiveCheckReport chk = effective_checks(code, round);
    if (!chk.ok) throw std::runtime_error("scheduled circuit does not measure the stabilizers");

    fs::create_directories(out_dir);
    const std::string hdr = hash_header(circuit_config(h, kind, rounds, p, seed));
    write_file(fs::path(out_dir) / "circuit.txt", hdr + circuit_text(code, c));
    write_file(fs::path(out_dir) / "circuit_meta.json", circuit_meta_json(code, c));
    if (p > 0) {
        NoiseModel nm;
        nm.p = p;
        NoisyCircuit nc = insert_noise(c, nm);
        write_file(fs::path(out_dir) / "noisy_circuit.txt", hdr + noisy_circuit_text(code, nc));
    }
    std::cout << "wrote " << (fs::path(out_dir) / "circuit.txt").string() << " ("
              << c.cnot_layer_count() / c.total_rounds << " cnot layers per round, "
              << c.num_qubits() << " qubits)\n";
    return 0;
}

int cmd_simulate(MemoryConfig cfg, bool dump_only, bool emit_plot, std::string out_dir) {
    if (dump_only) {
        std::cout << dump_memory_config(cfg);
        return 0;
    }
    MemoryResult res = run_memory_experiment(cfg);

    if (out_dir.empty()) {
        std::ostringstream os;
        os << "run-" << std::hex << std::setw(16) << std::setfill('0') << config_hash(cfg);
        out_dir = os.str();
    }
    fs::create_directories(fs::path(out_dir) / "circuits");
    fs::create_directories(fs::path(out_dir) / "logs");
    write_file(fs::path(out_dir) / "config.json", dump_memory_config(cfg));
    write_file(fs::path(out_dir) / "results.csv", results_csv(res));
    write_file(fs::path(out_dir) / "results.json", results_json(res));
    if (emit_plot) write_file(fs::path(out_dir) / "plot.dat", hash_header(cfg) + plot_data(res));

    CssCode code = build_css(cfg.h);
    Circuit round = cfg.circuit == "starfish" ? starfish_round(code) : compact_round(code);
    Circuit c = repeat_rounds(round, res.rounds);
    write_file(fs::path(out_dir) / "circuits" / "circuit.txt",
               hash_header(cfg) + circuit_text(code, c));
    write_file(fs::path(out_dir) / "circuits" / "circuit_meta.json", circuit_meta_json(code, c));

    std::ostringstream log;
    log << hash_header(cfg);
    log << std::setprecision(6);
    for (const MemoryPoint& pt : res.points)
        log << "p=" << pt.p << " shots=" << pt.shots << " failures=" << pt.failures
            << " discarded=" << pt.discarded << " rate=" << pt.rate << " per_round="
            << pt.per_round << " seconds=" << pt.seconds << "\n";
    write_file(fs::path(out_dir) / "logs" / "run.log", log.str());

    std::cout << "# " << res.n << " data qubits, " << res.rounds << " rounds, " << cfg.decoder
              << " decoder\n";
    std::cout << std::left << std::setw(12) << "p" << std::setw(10) << "shots" << std::setw(10)
              << "failures" << std::setw(14) << "block_rate" << std::setw(14) << "per_round"
              << std::setw(14) << "per_qubit" << "discard\n";
    std::cout << std::setprecision(5);
    for (const MemoryPoint& pt : res.points)
        std::cout << std::left << std::setw(12) << pt.p << std::setw(10) << pt.shots
                  << std::setw(10) << pt.failures << std::setw(14) << pt.rate << std::setw(14)
                  << pt.per_round << std::setw(14) << pt.per_qubit << pt.discard_fraction << "\n";

    if (res.points.size() >= 2) {
        std::vector<double> ps, y, ylo, yhi;
        for (const MemoryPoint& pt : res.points) {
            ps.push_back(pt.p);
            y.push_back(pt.per_round);
            ylo.push_back(pt.per_round_lo);
            yhi.push_back(pt.per_round_hi);
        }
        Crossing cr = pseudo_threshold(ps, y, 6, ylo, yhi);
        if (cr.found)
            std::cout << "pseudo-threshold ~ " << cr.p << " [" << cr.lo << ", " << cr.hi << "]\n";
    }
    std::cout << "results in " << out_dir << "\n";
    return 0;
}

int cmd_specs(const LatticeOpts& lo, int distance, std::uint64_t blocks,
              const std::string& circuit) {
    std::vector<SpecsRow> rows;
    if (!lo.hnf.empty() || !lo.file.empty() || !lo.name.empty()) {
        int known = 0;
        Hnf h = resolve_lattice(lo, &known);
        if (distance == 0) distance = known;
        std::string name = lo.name.empty() ? "custom" : lo.name;
        rows.push_back(specs_row(name, h, distance, blocks, circuit));
    } else {
        const NamedLattice* had = find_lattice("hadamard");
        const NamedLattice* d45 = find_lattice("det45");
        rows.push_back(specs_row("hadamard", had->h, had->distance, 9, circuit));
        rows.push_back(specs_row("det45", d45->h, d45->distance, 16, circuit));
        rows.push_back(specs_row("utility", d45->h, d45->distance, 250, circuit));
    }
    std::cout << std::left << std::setw(10) << "name" << std::right << std::setw(6) << "det"
              << std::setw(4) << "d" << std::setw(8) << "blocks" << std::setw(9) << "logical"
              << std::setw(9) << "data" << std::setw(9) << "meas" << std::setw(12) << "cnots/rnd"
              << std::setw(7) << "depth" << "\n";
    for (const SpecsRow& r : rows)
        std::cout << std::left << std::setw(10) << r.name << std::right << std::setw(6) << r.det
                  << std::setw(4) << r.distance << std::setw(8) << r.blocks << std::setw(9)
                  << r.logical << std::setw(9) << r.data << std::setw(9) << r.meas
                  << std::setw(12) << r.cnots_per_round << std::setw(7) << r.depth << "\n";
    return 0;
}

int cmd_symmetries(const LatticeOpts& lo, std::uint64_t budget, const std::string& out_dir,
                   const std::string& check_path) {
    if (!check_path.empty()) {
        std::ifstream in(check_path, std::ios::binary);
        if (!in) throw std::invalid_argument("cannot open catalog: " + check_path);
        std::stringstream ss;
        ss << in.rdbuf();
        if (!verify_gate_catalog(ss.str())) {
            std::cout << "catalog FAILED re-verification\n";
            return 2;
        }
        std::cout << "catalog verified\n";
        return 0;
    }
    Hnf h = resolve_lattice(lo);
    SymmetrySummary s = summarize_symmetries(h, budget);
    std::vector<ZxDuality> duals = find_zx_dualities(build_css(h));

    fs::create_directories(out_dir);
    const fs::path path = fs::path(out_dir) / "catalog.json";
    write_file(path, gate_catalog_json(h, s, duals));

    std::cout << "lattice isometries   " << s.isometries << "\n";
    std::cout << "cell automorphisms   " << s.autos << "\n";
    std::cout << "qubit permutations   " << s.qubit_perms << "\n";
    std::cout << "logical permutations " << s.logical_perms << "\n";
    std::cout << "zx dualities         " << s.dualities << " (" << s.involutions
              << " involutions)\n";
    std::cout << "verified fold gates  " << s.fold_gates << "\n";
    std::cout << "logical group order  " << s.logical_group.order
              << (s.logical_group.exact ? "" : " (lower bound)") << ", sign freedom rank "
              << s.logical_group.phase_rank << "\n";
    std::cout << "catalog in " << path.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for four-dimensional toric memories on skewed lattices"};
    app.require_subcommand(1);

    LatticeOpts lo_params, lo_circuit, lo_sim, lo_specs, lo_sym;

    auto* p_params = app.add_subcommand("params", "compute [[n,k,d]] for a lattice");
    add_lattice_flags(p_params, lo_params);
    int trials = 10000, w_max = 8;
    std::uint64_t params_seed = 1;
    std::string report_path;
    p_params->add_option("--trials", trials, "information-set trials for large lattices");
    p_params->add_option("--wmax", w_max, "exhaustive search cap for small lattices");
    p_params->add_option("--seed", params_seed, "search seed");
    p_params->add_option("--report", report_path, "also write a JSON distance report");

    auto* p_circuit = app.add_subcommand("circuit", "emit a syndrome-extraction circuit");
    add_lattice_flags(p_circuit, lo_circuit);
    std::string ckind = "compact", circuit_out = ".";
    int crounds = 1;
    double cp = 0;
    std::uint64_t circuit_seed = 1;
    p_circuit->add_option("--circuit", ckind, "starfish or compact")
        ->check(CLI::IsMember({"starfish", "compact"}));
    p_circuit->add_option("--rounds", crounds, "noisy rounds")->check(CLI::PositiveNumber);
    p_circuit->add_option("--p", cp, "also emit the circuit with noise annotations");
    p_circuit->add_option("--seed", circuit_seed, "provenance seed for the header");
    p_circuit->add_option("--out", circuit_out, "output directory");

    auto* p_sim = app.add_subcommand("simulate", "run a logical-memory Monte Carlo sweep");
    add_lattice_flags(p_sim, lo_sim);
    MemoryConfig sim;
    std::string config_path, sim_out;
    bool dump_config = false, emit_plot = false;
    p_sim->add_option("--config", config_path, "JSON config; flags below override it");
    auto* o_kind = p_sim->add_option("--circuit", sim.circuit, "starfish or compact")
                       ->check(CLI::IsMember({"starfish", "compact"}));
    auto* o_dec = p_sim->add_option("--decoder", sim.decoder, "bposd or power")
                      ->check(CLI::IsMember({"bposd", "power"}));
    auto* o_rounds = p_sim->add_option("--rounds", sim.rounds, "noisy rounds; 0 = distance");
    auto* o_ps = p_sim->add_option("--p", sim.ps, "physical error rates")->delimiter(',');
    auto* o_shots = p_sim->add_option("--shots", sim.max_shots, "shot cap per point");
    auto* o_min_shots = p_sim->add_option("--min-shots", sim.min_shots, "shot floor per point");
    auto* o_min_fail =
        p_sim->add_option("--min-failures", sim.min_failures, "failure floor per point");
    auto* o_rel = p_sim->add_option("--rel-ci", sim.rel_ci, "stop when CI shrinks below this");
    auto* o_seed = p_sim->add_option("--seed", sim.seed, "master seed");
    auto* o_post = p_sim->add_option("--postselect-weight", sim.postselect_weight,
                                     "discard shots with heavier corrections; -1 keeps all");
    auto* o_thr = p_sim->add_option("--threads", sim.threads, "worker threads; 0 = all")
                      ->envname("TORUS4_THREADS");
    p_sim->add_flag("--emit-plot-data", emit_plot, "write plot.dat next to the results");
    p_sim->add_flag("--dump-config", dump_config, "print the canonical config and exit");
    p_sim->add_option("--out", sim_out, "run directory (default: run-<config hash>)");

    auto* p_specs = app.add_subcommand("specs", "hardware footprint table");
    add_lattice_flags(p_specs, lo_specs);
    int specs_distance = 0;
    std::uint64_t specs_blocks = 1;
    std::string specs_circuit = "compact";
    p_specs->add_option("--distance", specs_distance, "code distance for the row");
    p_specs->add_option("--blocks", specs_blocks, "independent code blocks");
    p_specs->add_option("--circuit", specs_circuit, "starfish or compact")
        ->check(CLI::IsMember({"starfish", "compact"}));

    auto* p_sym = app.add_subcommand("symmetries", "fold-transversal gate catalog");
    add_lattice_flags(p_sym, lo_sym);
    std::uint64_t budget = 5000000;
    std::string sym_out = ".", check_path;
    int sym_threads = 0;
    p_sym->add_option("--budget", budget, "work cap for the group-order search");
    p_sym->add_option("--out", sym_out, "output directory");
    p_sym->add_option("--check", check_path, "re-verify an existing catalog and exit");
    p_sym->add_option("--threads", sym_threads, "worker threads; 0 = all")
        ->envname("TORUS4_THREADS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*p_params) return cmd_params(lo_params, trials, w_max, params_seed, report_path);
        if (*p_circuit)
            return cmd_circuit(lo_circuit, ckind, crounds, cp, circuit_seed, circuit_out);
        if (*p_sim) {
            MemoryConfig cfg;
            bool have_lattice = false;
            if (!config_path.empty()) {
                std::ifstream in(config_path, std::ios::binary);
                if (!in) throw std::invalid_argument("cannot open config: " + config_path);
                std::stringstream ss;
                ss << in.rdbuf();
                cfg = parse_memory_config(ss.str());
                have_lattice = true;
            }
            if (!lo_sim.hnf.empty() || !lo_sim.file.empty() || !lo_sim.name.empty()) {
                int known = 0;
                cfg.h = resolve_lattice(lo_sim, &known);
                if (known > 0) cfg.distance = known;
                have_lattice = true;
            }
            if (!have_lattice) throw std::invalid_argument("simulate needs a lattice or --config");
            if (o_kind->count()) cfg.circuit = sim.circuit;
            if (o_dec->count()) cfg.decoder = sim.decoder;
            if (o_rounds->count()) cfg.rounds = sim.rounds;
            if (o_ps->count()) cfg.ps = sim.ps;
            if (o_shots->count()) cfg.max_shots = sim.max_shots;
            if (o_min_shots->count()) cfg.min_shots = sim.min_shots;
            if (o_min_fail->count()) cfg.min_failures = sim.min_failures;
            if (o_rel->count()) cfg.rel_ci = sim.rel_ci;
            if (o_seed->count()) cfg.seed = sim.seed;
            if (o_post->count()) cfg.postselect_weight = sim.postselect_weight;
            if (o_thr->count()) cfg.threads = sim.threads;
            return cmd_simulate(cfg, dump_config, emit_plot, sim_out);
        }
        if (*p_specs) return cmd_specs(lo_specs, specs_distance, specs_blocks, specs_circuit);
        if (*p_sym) {
            set_threads(sym_threads);
            return cmd_symmetries(lo_sym, budget, sym_out, check_path);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
