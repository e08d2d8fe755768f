// Times the OpenMP kernels against their serial reference paths and checks
// that both produce identical output on the way.
#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "torus4/experiment.hpp"
#include "torus4/sim.hpp"

using namespace torus4;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const std::string& name, double serial_s, double parallel_s, double units,
            const std::string& unit_name) {
    std::cout << std::left << std::setw(26) << name << std::right << std::fixed
              << std::setprecision(3) << std::setw(9) << serial_s << "s " << std::setw(9)
              << parallel_s << "s   x" << std::setprecision(2) << serial_s / parallel_s << "  ("
              << std::setprecision(0) << units / parallel_s << " " << unit_name << "/s)\n";
    std::cout.unsetf(std::ios::fixed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial-reference vs parallel kernel timings"};
    std::string name = "det9";
    std::uint64_t shots = 20000;
    double p = 2e-3;
    int threads = 0;
    app.add_option("--lattice", name, "registry lattice to time");
    app.add_option("--shots", shots, "sampling shots");
    app.add_option("--p", p, "physical error rate");
    app.add_option("--threads", threads, "worker threads; 0 = all")->envname("TORUS4_THREADS");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::cout << "# openmp with " << (threads > 0 ? threads : omp_get_max_threads())
              << " threads\n";
#else
    std::cout << "# built without openmp; parallel paths run serially\n";
#endif

    const NamedLattice* nl = find_lattice(name);
    if (!nl) {
        std::cerr << "unknown lattice: " << name << "\n";
        return 2;
    }
    CssCode code = build_css(nl->h);
    LogicalBasis basis = logical_basis_linear(code);
    Circuit round = compact_round(code);
    Circuit c = repeat_rounds(round, nl->distance > 0 ? nl->distance : 1);
    NoiseModel nm;
    nm.p = p;
    NoisyCircuit nc = insert_noise(c, nm);

    std::cout << "# " << name << ": " << code.n << " data qubits, " << c.total_rounds
              << " rounds, " << nc.sites.size() << " noise sites, p=" << p << "\n";
    std::cout << std::left << std::setw(26) << "kernel" << std::right << std::setw(10) << "serial"
              << std::setw(11) << "parallel" << "\n";

    // single-fault dictionary: one frame propagation per (site, pauli)
    auto t0 = Clock::now();
    FaultDictionary dict_serial = enumerate_single_faults(code, nc, basis, false);
    const double enum_serial = seconds_since(t0);
    t0 = Clock::now();
    FaultDictionary dict = enumerate_single_faults(code, nc, basis, true);
    const double enum_parallel = seconds_since(t0);
    if (dict.entries.size() != dict_serial.entries.size()) {
        std::cerr << "dictionary size mismatch between serial and parallel runs\n";
        return 3;
    }
    for (std::size_t i = 0; i < dict.entries.size(); ++i) {
        const DictEntry &a = dict.entries[i], &b = dict_serial.entries[i];
        if (a.det[0] != b.det[0] || a.det[1] != b.det[1] || a.logical[0] != b.logical[0] ||
            a.logical[1] != b.logical[1]) {
            std::cerr << "dictionary entry " << i << " differs between serial and parallel\n";
            return 3;
        }
    }
    report("fault dictionary", enum_serial, enum_parallel, double(dict.entries.size()), "entries");

    // shot sampling: op-by-op frame propagation vs precomputed-effect XOR
    FrameSim ref(code, nc, basis);
    SparseSampler fast(nc, dict);
    const std::uint64_t master = splitmix64(12345);

    std::uint64_t check = std::min<std::uint64_t>(shots, 2000);
    for (std::uint64_t s = 0; s < check; ++s) {
        Rng rng(master, s);
        std::vector<Fault> faults = sample_faults(nc, rng);
        ShotRecord a = ref.run(faults);
        ShotRecord b = fast.run(faults);
        if (a.det[0] != b.det[0] || a.det[1] != b.det[1] || a.logical[0] != b.logical[0] ||
            a.logical[1] != b.logical[1]) {
            std::cerr << "shot " << s << " differs between engines\n";
            return 3;
        }
    }

    t0 = Clock::now();
    std::uint64_t sink = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        Rng rng(master, s);
        ShotRecord a = ref.run(sample_faults(nc, rng));
        sink += a.fault_count;
    }
    const double samp_serial = seconds_since(t0);

    t0 = Clock::now();
    std::uint64_t sink2 = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : sink2)
#endif
    for (long long s = 0; s < (long long)shots; ++s) {
        ShotRecord b = fast.sample(master, std::uint64_t(s));
        sink2 += b.fault_count;
    }
    const double samp_parallel = seconds_since(t0);
    if (sink != sink2) {
        std::cerr << "fault totals differ: " << sink << " vs " << sink2 << "\n";
        return 3;
    }
    report("shot sampling", samp_serial, samp_parallel, double(shots), "shots");

    // distance search: information-set trials fan out across threads
    const int trials = 600;
    t0 = Clock::now();
    DistanceReport dr_serial = distance_upper_bound(code, basis, trials, 7, false);
    const double dist_serial = seconds_since(t0);
    t0 = Clock::now();
    DistanceReport dr = distance_upper_bound(code, basis, trials, 7, true);
    const double dist_parallel = seconds_since(t0);
    if (dr.d != dr_serial.d) {
        std::cerr << "distance estimate differs: " << dr.d << " vs " << dr_serial.d << "\n";
        return 3;
    }
    report("distance search", dist_serial, dist_parallel, double(trials), "trials");

    std::cout << "# all parallel kernels matched the serial reference\n";
    return 0;
}
