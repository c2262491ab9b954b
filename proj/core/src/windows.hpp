#pragma once

// Internal helpers: piecewise integration over unions of intervals where the
// integrand is non-negligible (Gaussian windows, atom needles, compact
// supports). Every original window edge is kept as a panel boundary so that
// a narrow needle window swallowed by a wide one still seeds a panel of its
// own scale; otherwise the initial Gauss-Kronrod nodes can straddle the
// needle and report a spurious zero.

#include <algorithm>
#include <vector>

#include "roughheat/quadrature.hpp"

namespace roughheat::detail {

struct Window {
    double lo, hi;
};

inline std::vector<Window> merge_windows(std::vector<Window> ws) {
    std::sort(ws.begin(), ws.end(), [](const Window& a, const Window& b) { return a.lo < b.lo; });
    std::vector<Window> out;
    for (const auto& w : ws) {
        if (!out.empty() && w.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, w.hi);
        else
            out.push_back(w);
    }
    return out;
}

inline std::vector<Window> clip_windows(const std::vector<Window>& ws, double lo, double hi) {
    std::vector<Window> out;
    for (const auto& w : ws) {
        const double a = std::max(w.lo, lo);
        const double b = std::min(w.hi, hi);
        if (a < b) out.push_back({a, b});
    }
    return out;
}

// Integral of f over the union of the windows, split at every window edge.
inline double integrate_over_windows(const Integrand& f, const std::vector<Window>& ws,
                                     const QuadConfig& cfg) {
    std::vector<double> edges;
    for (const auto& w : ws) {
        if (!(w.lo < w.hi)) continue;
        edges.push_back(w.lo);
        edges.push_back(w.hi);
    }
    std::sort(edges.begin(), edges.end());

    const auto merged = merge_windows(ws);
    double total = 0.0;
    for (const auto& m : merged) {
        if (!(m.lo < m.hi)) continue;
        double a = m.lo;
        for (double e : edges) {
            if (e <= a || e >= m.hi) continue;
            total += integrate_adaptive(f, a, e, cfg).value;
            a = e;
        }
        total += integrate_adaptive(f, a, m.hi, cfg).value;
    }
    return total;
}

}  // namespace roughheat::detail
