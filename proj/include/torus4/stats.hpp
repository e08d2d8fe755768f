#pragma once

#include <cstdint>
#include <vector>

namespace torus4 {

struct Wilson {
    double center = 0, lo = 0, hi = 0;
};

// Wilson score interval for a binomial rate (default 95%).
Wilson wilson_interval(std::uint64_t fails, std::uint64_t shots, double z = 1.959963985);

struct Crossing {
    bool found = false;
    double p = 0;        // where the curve meets y = k * p
    double lo = 0, hi = 0;
};

// Log-log interpolated crossing of a failure curve with the line k*p.
// ylo/yhi, when non-empty, give confidence bands that are carried through.
Crossing pseudo_threshold(const std::vector<double>& p, const std::vector<double>& y, double k,
                          const std::vector<double>& ylo = {},
                          const std::vector<double>& yhi = {});

struct SlopeFit {
    bool ok = false;
    double slope = 0, err = 0, intercept = 0;
};

// Least squares on (ln p, ln y); zero-failure points are skipped.
SlopeFit fit_loglog_slope(const std::vector<double>& p, const std::vector<double>& y);

}  // namespace torus4
