#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "torus4/experiment.hpp"
#include "torus4/stats.hpp"

using namespace torus4;

TEST_CASE("wilson interval against a hand-computed case") {
    // the point estimate is the plain rate; the band is the Wilson score interval
    Wilson w = wilson_interval(10, 1000);
    CHECK(w.center == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(w.lo == doctest::Approx(0.0054407544447740265).epsilon(1e-12));
    CHECK(w.hi == doctest::Approx(0.018309468872823392).epsilon(1e-12));
}

TEST_CASE("wilson interval behaves at the extremes") {
    Wilson zero = wilson_interval(0, 500);
    CHECK(zero.lo == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(zero.center == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(zero.hi == doctest::Approx(0.007624340465103374).epsilon(1e-12));
    Wilson all = wilson_interval(500, 500);
    CHECK(all.hi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(all.lo == doctest::Approx(0.9923756595348967).epsilon(1e-12));
    CHECK_THROWS_AS(wilson_interval(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(5, 4), std::invalid_argument);
}

TEST_CASE("wilson interval brackets the point estimate") {
    for (std::uint64_t f : {0ULL, 1ULL, 7ULL, 250ULL, 499ULL})
        for (std::uint64_t n : {500ULL, 20000ULL}) {
            Wilson w = wilson_interval(f, n);
            CHECK(w.lo >= 0.0);
            CHECK(w.hi <= 1.0);
            CHECK(w.lo <= double(f) / double(n));
            CHECK(w.hi >= double(f) / double(n));
            CHECK(w.lo <= w.center);
            CHECK(w.center <= w.hi);
        }
}

TEST_CASE("pseudo-threshold crossing on an exact quadratic") {
    // y = 1e4 p^2 crosses 6p at p = 6e-4; log-log interpolation is exact here
    std::vector<double> ps = {2e-4, 4e-4, 8e-4, 1.6e-3};
    std::vector<double> y, ylo, yhi;
    for (double p : ps) {
        y.push_back(1e4 * p * p);
        ylo.push_back(0.5e4 * p * p);
        yhi.push_back(2e4 * p * p);
    }
    Crossing c = pseudo_threshold(ps, y, 6, ylo, yhi);
    REQUIRE(c.found);
    CHECK(c.p == doctest::Approx(6e-4).epsilon(1e-9));
    // the optimistic band crosses later, the pessimistic band earlier
    CHECK(c.lo == doctest::Approx(3e-4).epsilon(1e-9));
    CHECK(c.hi == doctest::Approx(1.2e-3).epsilon(1e-9));
}

TEST_CASE("pseudo-threshold reports when the curves never cross") {
    std::vector<double> ps = {1e-3, 2e-3, 4e-3};
    std::vector<double> above = {1e-1, 1.5e-1, 2e-1};  // always above 6p
    Crossing c = pseudo_threshold(ps, above, 6);
    CHECK_FALSE(c.found);
    // lower band never crossing pins the upper bound at the last swept point
    std::vector<double> y = {3e-3, 1.4e-2, 6e-2};  // crosses between p1 and p2
    std::vector<double> tiny = {1e-9, 1e-9, 1e-9};
    Crossing d = pseudo_threshold(ps, y, 6, tiny, y);
    CHECK(d.found);
    CHECK(d.hi == doctest::Approx(4e-3).epsilon(1e-12));
}

TEST_CASE("pseudo-threshold ignores empty failure points") {
    // a leading zero (no failures seen) must not fake a crossing: with the
    // zero skipped every usable point sits above the k*p line, so no crossing
    std::vector<double> ps = {5e-4, 1e-3, 2e-3, 4e-3};
    std::vector<double> above = {0.0, 1e-2, 3e-2, 9e-2};
    CHECK_FALSE(pseudo_threshold(ps, above, 6).found);
    // when the usable points do bracket the line, the zero point is simply
    // dropped and the crossing comes from the real bracket
    std::vector<double> y = {0.0, 1e-3, 3e-2, 9e-2};
    Crossing c = pseudo_threshold(ps, y, 6);
    REQUIRE(c.found);
    CHECK(c.p > 1e-3);
    CHECK(c.p < 2e-3);
}

TEST_CASE("log-log slope on an exact power law") {
    std::vector<double> ps = {1e-3, 2e-3, 4e-3, 8e-3};
    std::vector<double> y;
    for (double p : ps) y.push_back(7.5 * std::pow(p, 4.0));
    SlopeFit fit = fit_loglog_slope(ps, y);
    REQUIRE(fit.ok);
    CHECK(fit.slope == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(fit.err == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(std::exp(fit.intercept) == doctest::Approx(7.5).epsilon(1e-6));
    // two points fit but carry no error estimate
    SlopeFit two = fit_loglog_slope({1e-3, 2e-3}, {1e-6, 4e-6});
    CHECK(two.ok);
    CHECK(two.slope == doctest::Approx(2.0).epsilon(1e-9));
    // zero rates cannot be fitted
    CHECK_FALSE(fit_loglog_slope({1e-3, 2e-3}, {0.0, 1e-6}).ok);
}

TEST_CASE("footprint arithmetic for the published columns") {
    const NamedLattice* had = find_lattice("hadamard");
    const NamedLattice* d45 = find_lattice("det45");
    SpecsRow a = specs_row("hadamard", had->h, 8, 9, "compact");
    CHECK(a.det == 16);
    CHECK(a.logical == 54);
    CHECK(a.data == 864);
    CHECK(a.meas == 1152);
    CHECK(a.cnots_per_round == 6912);
    CHECK(a.depth == 8);
    SpecsRow b = specs_row("det45", d45->h, 15, 16, "compact");
    CHECK(b.logical == 96);
    CHECK(b.data == 4320);
    CHECK(b.meas == 5760);
    SpecsRow c = specs_row("utility", d45->h, 15, 250, "compact");
    CHECK(c.logical == 1500);
    CHECK(c.data == 67500);
    CHECK(c.meas == 90000);
    SpecsRow d = specs_row("split", had->h, 8, 9, "starfish");
    CHECK(d.depth == 16);
    CHECK(d.cnots_per_round == 6912);
}

TEST_CASE("memory experiment smoke run is deterministic") {
    MemoryConfig cfg;
    cfg.h = find_lattice("det3")->h;
    cfg.circuit = "compact";
    cfg.decoder = "bposd";
    cfg.rounds = 1;
    cfg.distance = 3;
    cfg.ps = {6e-3};
    cfg.seed = 9;
    cfg.min_shots = 1000;
    cfg.max_shots = 1000;
    cfg.min_failures = 1;
    MemoryResult a = run_memory_experiment(cfg);
    MemoryResult b = run_memory_experiment(cfg);
    REQUIRE(a.points.size() == 1);
    CHECK(a.n == 18);
    CHECK(a.rounds == 1);
    CHECK(a.points[0].shots >= 1000);
    CHECK(a.points[0].shots == b.points[0].shots);
    CHECK(a.points[0].failures == b.points[0].failures);
    CHECK(a.points[0].rate == doctest::Approx(double(a.points[0].failures) /
                                              double(a.points[0].shots)));
    CHECK(a.points[0].per_round == doctest::Approx(a.points[0].rate));
    CHECK(a.points[0].per_qubit == doctest::Approx(a.points[0].per_round / 6));
}

TEST_CASE("an unreachable postselection cut changes nothing") {
    MemoryConfig cfg;
    cfg.h = find_lattice("det3")->h;
    cfg.circuit = "compact";
    cfg.decoder = "bposd";
    cfg.rounds = 1;
    cfg.distance = 3;
    cfg.ps = {6e-3};
    cfg.seed = 21;
    cfg.min_shots = 1000;
    cfg.max_shots = 1000;
    cfg.min_failures = 1;
    MemoryResult keep = run_memory_experiment(cfg);
    cfg.postselect_weight = 1000000000L;
    MemoryResult cut = run_memory_experiment(cfg);
    CHECK(cut.points[0].discarded == 0);
    CHECK(cut.points[0].shots == keep.points[0].shots);
    CHECK(cut.points[0].failures == keep.points[0].failures);
}

TEST_CASE("postselection discards heavy shots and reports the fraction") {
    MemoryConfig cfg;
    cfg.h = find_lattice("det3")->h;
    cfg.circuit = "compact";
    cfg.decoder = "bposd";
    cfg.rounds = 1;
    cfg.distance = 3;
    cfg.ps = {2e-2};
    cfg.seed = 33;
    cfg.min_shots = 2000;
    cfg.max_shots = 2000;
    cfg.min_failures = 1;
    cfg.postselect_weight = 1;
    MemoryResult res = run_memory_experiment(cfg);
    const MemoryPoint& pt = res.points[0];
    CHECK(pt.discarded > 0);
    CHECK(pt.discard_fraction ==
          doctest::Approx(double(pt.discarded) / double(pt.shots + pt.discarded)));
}

TEST_CASE("single-shot power path runs end to end") {
    MemoryConfig cfg;
    cfg.h = find_lattice("det3")->h;
    cfg.circuit = "starfish";
    cfg.decoder = "power";
    cfg.rounds = 1;
    cfg.distance = 3;
    cfg.ps = {3e-3};
    cfg.seed = 4;
    cfg.min_shots = 500;
    cfg.max_shots = 500;
    cfg.min_failures = 1;
    MemoryResult res = run_memory_experiment(cfg);
    REQUIRE(res.points.size() == 1);
    CHECK(res.points[0].shots >= 500);
    CHECK(res.points[0].rate >= 0.0);
    CHECK(res.points[0].rate <= 1.0);
}

TEST_CASE("bad configurations are rejected up front") {
    MemoryConfig cfg;
    cfg.h = find_lattice("det3")->h;
    cfg.ps = {3e-3};
    cfg.rounds = 0;
    cfg.distance = 0;  // no way to choose a round count
    CHECK_THROWS_AS(run_memory_experiment(cfg), std::invalid_argument);
    cfg.rounds = 1;
    cfg.decoder = "telepathy";
    CHECK_THROWS_AS(run_memory_experiment(cfg), std::invalid_argument);
    cfg.decoder = "bposd";
    cfg.ps = {};
    CHECK_THROWS_AS(run_memory_experiment(cfg), std::invalid_argument);
    cfg.ps = {1.5};  // probabilities live in [0, 1]
    CHECK_THROWS_AS(run_memory_experiment(cfg), std::invalid_argument);
}
