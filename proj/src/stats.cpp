#include "torus4/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace torus4 {

Wilson wilson_interval(std::uint64_t fails, std::uint64_t shots, double z) {
    if (shots == 0) throw std::invalid_argument("no shots");
    if (fails > shots) throw std::invalid_argument("more failures than shots");
    const double n = double(shots), x = double(fails);
    const double ph = x / n, z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double mid = (ph + z2 / (2 * n)) / denom;
    const double half = (z / denom) * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n));
    Wilson w;
    w.center = ph;
    w.lo = std::max(0.0, mid - half);
    w.hi = std::min(1.0, mid + half);
    return w;
}

namespace {

// first downward-to-upward sign change of ln(y) - ln(k p), interpolated in
// log space; curves that never rise above the line yield no crossing
bool cross_one(const std::vector<double>& p, const std::vector<double>& y, double k,
               double& out) {
    double prev_f = 0, prev_lp = 0;
    bool have_prev = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0) || !(y[i] > 0)) {
            have_prev = false;
            continue;
        }
        double f = std::log(y[i]) - std::log(k * p[i]);
        double lp = std::log(p[i]);
        if (have_prev && prev_f <= 0 && f > 0) {
            out = std::exp(prev_lp - prev_f * (lp - prev_lp) / (f - prev_f));
            return true;
        }
        prev_f = f;
        prev_lp = lp;
        have_prev = true;
    }
    return false;
}

}  // namespace

Crossing pseudo_threshold(const std::vector<double>& p, const std::vector<double>& y, double k,
                          const std::vector<double>& ylo, const std::vector<double>& yhi) {
    if (p.size() != y.size()) throw std::invalid_argument("curve size mismatch");
    Crossing c;
    c.found = cross_one(p, y, k, c.p);
    if (!c.found) return c;
    c.lo = c.p;
    c.hi = c.p;
    // a lower failure band crosses later, an upper band earlier
    if (yhi.size() == p.size()) {
        double v;
        if (cross_one(p, yhi, k, v)) c.lo = v;
    }
    if (ylo.size() == p.size()) {
        double v;
        if (cross_one(p, ylo, k, v))
            c.hi = v;
        else
            c.hi = p.back();  // still below the line at the largest rate probed
    }
    return c;
}

SlopeFit fit_loglog_slope(const std::vector<double>& p, const std::vector<double>& y) {
    if (p.size() != y.size()) throw std::invalid_argument("curve size mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0) || !(y[i] > 0)) continue;
        double x = std::log(p[i]), v = std::log(y[i]);
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
        ++m;
    }
    SlopeFit fit;
    if (m < 2) return fit;
    double n = double(m);
    double sxx_c = sxx - sx * sx / n;
    if (sxx_c <= 0) return fit;
    fit.slope = (sxy - sx * sy / n) / sxx_c;
    fit.intercept = (sy - fit.slope * sx) / n;
    if (m > 2) {
        double sse = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!(p[i] > 0) || !(y[i] > 0)) continue;
            double r = std::log(y[i]) - (fit.intercept + fit.slope * std::log(p[i]));
            sse += r * r;
        }
        fit.err = std::sqrt(sse / (n - 2) / sxx_c);
    }
    fit.ok = true;
    return fit;
}

}  // namespace torus4
