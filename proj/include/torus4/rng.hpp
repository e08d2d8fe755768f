#pragma once

#include <cmath>
#include <cstdint>

#include "torus4/f2.hpp"

namespace torus4 {

// Counter-based stream: splitmix64 over an incrementing state. Streams are
// derived from (master seed, stream index), so shot i draws the same values
// no matter how work is split across threads.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}
    Rng(std::uint64_t master, std::uint64_t stream)
        : state(splitmix64(master ^ splitmix64(stream + 0x51ed2701a03full))) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }
    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // uniform in [0, m)
    std::uint64_t below(std::uint64_t m) { return next() % m; }

    // number of Bernoulli(p) failures skipped before the next success;
    // returns a huge value when p == 0
    std::int64_t geometric_skip(double p) {
        if (p <= 0.0) return INT64_MAX / 2;
        if (p >= 1.0) return 0;
        double u = uniform();
        if (u <= 0.0) u = 0x1.0p-53;
        return static_cast<std::int64_t>(std::log(u) / std::log1p(-p));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }
};

}  // namespace torus4
