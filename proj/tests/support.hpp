#pragma once

// Random generators and brute-force oracles shared by the unit tests and the
// acceptance run. Oracles deliberately avoid the library's own algorithms.

#include "ttsem/ttsem.hpp"

#include <random>
#include <vector>

namespace ttsem::testing {

using Rng = std::mt19937_64;

inline Rational rand_rational(Rng& rng, long lo, long hi, long den = 4)
{
    std::uniform_int_distribution<long> d(lo * den, hi * den);
    return make_rational(d(rng), den);
}

inline bool coin(Rng& rng, double p = 0.5)
{
    return std::bernoulli_distribution(p)(rng);
}

inline int rand_int(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// A random Dyck path on a window of length l: random heights on a coarse
/// grid (often zero), pulled down to the largest 1-Lipschitz minorant.
inline DyckPath random_dyck(Rng& rng, const Rational& l, int cells = 8, double zero_p = 0.3)
{
    std::vector<Breakpoint> pts;
    for (int k = 0; k <= cells; ++k) {
        const Rational x = l * k / cells;
        Rational y = 0;
        if (0 < k && k < cells && !coin(rng, zero_p))
            y = rand_rational(rng, 0, 1) * l / 2;
        pts.push_back({x, y});
    }
    const Window w(l);
    return DyckPath(w, pw_min(tent(w), lipschitz_envelope(PLF(std::move(pts)), 1)));
}

/// A random finite PLF on [0, l] with values in [lo, hi].
inline PLF random_plf(Rng& rng, const Rational& l, int cells, long lo, long hi)
{
    std::vector<Breakpoint> pts;
    std::vector<Rational> xs{0, l};
    for (int k = 1; k < cells; ++k)
        xs.push_back(l * rand_rational(rng, 0, 1, 64));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (const auto& x : xs)
        pts.push_back({x, rand_rational(rng, lo, hi)});
    return PLF(std::move(pts));
}

/// Exact evaluation of a PLF given as raw breakpoints, by direct search.
inline Rational eval_raw(const std::vector<Breakpoint>& pts, const Rational& x)
{
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i].x <= x && x <= pts[i + 1].x)
            return pts[i].y + (pts[i + 1].y - pts[i].y) * (x - pts[i].x) / (pts[i + 1].x - pts[i].x);
    throw Error("eval_raw: outside");
}

/// Grid forcing oracle: every grid interval point strictly inside [a, b]
/// lies in the open. Sound for refuting, approximate for confirming.
inline bool forces_grid(const DyckPath& p, const Rational& a, const Rational& b, int n = 48)
{
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Rational d = a + (b - a) * i / n;
            const Rational u = a + (b - a) * j / n;
            if (!p.contains(IntervalPoint(d, u)))
                return false;
        }
    return true;
}

/// The set of grid points (i, j) of [0, l] whose interval lies in the open.
inline std::vector<bool> membership_table(const DyckPath& p, int n)
{
    std::vector<bool> t;
    const Rational& l = p.length();
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            t.push_back(p.contains(IntervalPoint(l * i / n, l * j / n)));
    return t;
}

/// A random walk over the command graph, transitions on a 1/64 grid of l.
inline Walk random_walk(Rng& rng, const Rational& l, int max_transitions = 4)
{
    const int k = rand_int(rng, 0, max_transitions);
    std::vector<Rational> ts;
    for (int i = 0; i < k; ++i) {
        const Rational t = rand_rational(rng, 0, 1, 64) * l;
        if (0 < t && t < l)
            ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<std::string> vs{coin(rng) ? "level" : "climb"};
    std::vector<std::string> es;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const bool to_climb = vs.back() == "level";
        es.push_back(to_climb ? "climb!" : "level!");
        vs.push_back(to_climb ? "climb" : "level");
    }
    return Walk(Window(l), std::move(vs), std::move(es), std::move(ts));
}

/// A random signal on [0, l] (l an integer) with endpoints on a 1/4 grid
/// and random flags.
inline BoolSignal random_signal(Rng& rng, long l, int max_spans = 3)
{
    std::vector<Span> spans;
    const int k = rand_int(rng, 0, max_spans);
    for (int i = 0; i < k; ++i) {
        Rational a = rand_rational(rng, 0, l);
        Rational b = rand_rational(rng, 0, l);
        if (b < a)
            std::swap(a, b);
        spans.push_back({a, b, coin(rng), coin(rng)});
    }
    return BoolSignal(Window(Rational(l)), std::move(spans));
}

/// Brute-force until at t0 = (k + 1/2) / 256: scans every multiple of 1/256
/// after t0 and the midpoints between them, which visits every endpoint of
/// a signal on the 1/4 grid and every gap between endpoints.
inline bool until_brute(const BoolSignal& p, const BoolSignal& q, const Rational& t0)
{
    const Rational step(1, 512);
    for (Rational t = t0; t <= p.length(); t += step) {
        if (!p.contains(t))
            return false;
        if (q.contains(t))
            return true;
    }
    return false;
}

inline bool since_brute(const BoolSignal& p, const BoolSignal& q, const Rational& t0)
{
    const Rational step(1, 512);
    for (Rational t = t0; 0 <= t; t -= step) {
        if (!p.contains(t))
            return false;
        if (q.contains(t))
            return true;
    }
    return false;
}

} // namespace ttsem::testing
