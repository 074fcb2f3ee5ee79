#include "swanson/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "swanson/error.hpp"

namespace swanson::numeric {
namespace {

constexpr int kGaussPoints = 20;

struct GaussRule {
    std::array<double, kGaussPoints> nodes{};
    std::array<double, kGaussPoints> weights{};
};

// Legendre nodes on [-1, 1] by Newton iteration from the Chebyshev guess.
GaussRule make_gauss_rule() {
    GaussRule rule;
    const int n = kGaussPoints;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussRule& gauss_rule() {
    static const GaussRule rule = make_gauss_rule();
    return rule;
}

struct PanelSum {
    double value = 0.0;
    double abs_value = 0.0;
};

PanelSum composite(const RealFn& f, double lo, double hi, int panels) {
    const GaussRule& g = gauss_rule();
    const double width = (hi - lo) / panels;
    PanelSum s;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        const double half = 0.5 * width;
        double acc = 0.0, acc_abs = 0.0;
        for (int i = 0; i < kGaussPoints; ++i) {
            const double v = f(mid + half * g.nodes[i]);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "quadrature: non-finite integrand at " << mid + half * g.nodes[i];
                fail(Errc::non_convergent, os.str());
            }
            acc += g.weights[i] * v;
            acc_abs += g.weights[i] * std::abs(v);
        }
        s.value += half * acc;
        s.abs_value += half * acc_abs;
    }
    return s;
}

double doubling(const RealFn& f, double lo, double hi, double rel_tol, int max_panels) {
    PanelSum prev = composite(f, lo, hi, 2);
    for (int panels = 4; panels <= max_panels; panels *= 2) {
        const PanelSum cur = composite(f, lo, hi, panels);
        const double scale = std::max(cur.abs_value, std::numeric_limits<double>::min());
        if (std::abs(cur.value - prev.value) <= rel_tol * scale) return cur.value;
        prev = cur;
    }
    std::ostringstream os;
    os << "quadrature on [" << lo << ", " << hi << "] did not converge with " << max_panels
       << " panels";
    fail(Errc::non_convergent, os.str());
}

} // namespace

TridiagSystem fd_discretize(const RealFn& potential, double z_min, double z_max, int n_points) {
    if (n_points < 2) fail(Errc::invalid_parameter, "fd_discretize: need at least 2 interior points");
    if (!(z_min > 0.0) || !(z_max > z_min))
        fail(Errc::invalid_parameter, "fd_discretize: need 0 < z_min < z_max");
    TridiagSystem sys;
    sys.z_min = z_min;
    sys.z_max = z_max;
    sys.n_points = n_points;
    const double h = sys.step();
    const double inv_h2 = 1.0 / (h * h);
    sys.diagonal.resize(n_points);
    sys.off_diagonal.assign(n_points - 1, -inv_h2);
    for (int i = 0; i < n_points; ++i) {
        const double z = z_min + (i + 1) * h;
        const double v = potential(z);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "fd_discretize: non-finite potential sample at z = " << z;
            fail(Errc::domain_error, os.str());
        }
        sys.diagonal[i] = 2.0 * inv_h2 + v;
    }
    return sys;
}

int sturm_count(const TridiagSystem& sys, double lambda) {
    const auto& dg = sys.diagonal;
    const auto& off = sys.off_diagonal;
    const double tiny = std::numeric_limits<double>::min() * 1e10;
    int count = 0;
    double q = dg[0] - lambda;
    for (std::size_t i = 0;; ++i) {
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
        if (i + 1 == dg.size()) break;
        q = dg[i + 1] - lambda - off[i] * off[i] / q;
    }
    return count;
}

std::vector<double> tridiag_eigs(const TridiagSystem& sys, int k) {
    const int n = static_cast<int>(sys.diagonal.size());
    if (k < 0 || k > n) fail(Errc::invalid_parameter, "tridiag_eigs: k must be in [0, n_points]");
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(sys.off_diagonal[i - 1]);
        if (i + 1 < n) r += std::abs(sys.off_diagonal[i]);
        lo = std::min(lo, sys.diagonal[i] - r);
        hi = std::max(hi, sys.diagonal[i] + r);
    }
    std::vector<double> eigs(k);
    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        while (b - a > 1e-12) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (sturm_count(sys, mid) > j)
                b = mid;
            else
                a = mid;
        }
        eigs[j] = 0.5 * (a + b);
        lo = a;  // eigenvalue j+1 is not below eigenvalue j
    }
    return eigs;
}

Extrapolation refine_extrapolate(const RealFn& potential, int k, const std::vector<int>& grids,
                                 double z_min, double z_max) {
    if (grids.size() < 2)
        fail(Errc::invalid_parameter, "refine_extrapolate: at least two grids are required");
    for (std::size_t i = 0; i + 1 < grids.size(); ++i)
        if (grids[i + 1] != 2 * grids[i])
            fail(Errc::invalid_parameter, "refine_extrapolate: grid sizes must double");

    Extrapolation ex;
    ex.grids = grids;
    if (grids.size() == 2) ex.grids.insert(ex.grids.begin(), grids.front() / 2);
    for (int n : ex.grids) ex.per_grid.push_back(tridiag_eigs(fd_discretize(potential, z_min, z_max, n), k));

    const std::size_t m = ex.grids.size();
    auto step = [&](std::size_t i) { return (z_max - z_min) / (ex.grids[i] + 1); };
    const double ratio = step(m - 2) / step(m - 1);
    const double ratio_prev = step(m - 3) / step(m - 2);
    ex.values.resize(k);
    ex.observed_order.resize(k);
    for (int j = 0; j < k; ++j) {
        const double e0 = ex.per_grid[m - 3][j];
        const double e1 = ex.per_grid[m - 2][j];
        const double e2 = ex.per_grid[m - 1][j];
        ex.values[j] = e2 + (e2 - e1) / (ratio * ratio - 1.0);
        const double coarse = e1 - e0;
        const double fine = e2 - e1;
        ex.observed_order[j] = std::log(std::abs(coarse / fine)) / std::log(0.5 * (ratio + ratio_prev));
        if (!(ex.observed_order[j] >= 1.5)) {
            std::ostringstream os;
            os << "refine_extrapolate: level " << j << " observed order " << ex.observed_order[j]
               << " < 1.5";
            fail(Errc::non_convergent, os.str());
        }
    }
    return ex;
}

double quad_halfline(const RealFn& f, double scale_hint) {
    if (!(scale_hint > 0.0)) fail(Errc::invalid_parameter, "quad_halfline: scale_hint must be > 0");
    // exp(-scale Z^2) < 1e-18, then stretch until the integrand itself is negligible.
    double upper = std::sqrt(18.0 * std::log(10.0) / scale_hint);
    const double bulk = composite(f, 0.0, upper, 16).abs_value;
    for (int it = 0; it < 60; ++it) {
        const double tail = std::max(std::abs(f(upper)), std::abs(f(0.9 * upper))) * upper;
        if (tail <= 1e-18 * std::max(bulk, std::numeric_limits<double>::min())) break;
        upper *= 1.2;
    }
    return doubling(f, 0.0, upper, 1e-11, 1 << 14);
}

double quad_interval(const RealFn& f, double lo, double hi, double rel_tol) {
    if (lo == hi) return 0.0;
    if (lo > hi) return -quad_interval(f, hi, lo, rel_tol);
    return doubling(f, lo, hi, rel_tol, 1 << 14);
}

double SpectrumComparison::max_rel_error() const noexcept {
    double m = 0.0;
    for (const auto& p : pairs) m = std::max(m, p.rel_error);
    return m;
}

SpectrumComparison compare_spectra(const std::vector<double>& analytic,
                                   const std::vector<double>& numeric, double tol) {
    std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
    for (std::size_t i = 0; i < analytic.size(); ++i)
        for (std::size_t j = 0; j < numeric.size(); ++j)
            candidates.emplace_back(std::abs(analytic[i] - numeric[j]), i, j);
    std::sort(candidates.begin(), candidates.end());

    std::vector<int> match(analytic.size(), -1);
    std::vector<bool> used(numeric.size(), false);
    for (const auto& [dist, i, j] : candidates) {
        if (match[i] >= 0 || used[j]) continue;
        match[i] = static_cast<int>(j);
        used[j] = true;
    }

    SpectrumComparison out;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        if (match[i] < 0) continue;
        SpectrumPair p;
        p.analytic = analytic[i];
        p.numeric = numeric[match[i]];
        p.abs_error = std::abs(p.numeric - p.analytic);
        p.rel_error = p.analytic != 0.0 ? p.abs_error / std::abs(p.analytic) : p.abs_error;
        out.pairs.push_back(p);
    }
    for (std::size_t j = 0; j < numeric.size(); ++j)
        if (!used[j]) out.unmatched_numeric_levels.push_back(numeric[j]);
    if (!analytic.empty()) {
        const double floor = analytic.front() - tol * std::max(1.0, std::abs(analytic.front()));
        for (double e : numeric)
            if (e < floor) out.unexpected_low_levels.push_back(e);
    }
    return out;
}

} // namespace swanson::numeric
