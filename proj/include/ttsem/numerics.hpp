#pragma once

// Kaucher interval arithmetic and piecewise-linear sections of the numeric
// sheaves, with their comparison opens.

#include "ttsem/modalities.hpp"

#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ttsem {

// ---------------------------------------------------------------------------
// Kaucher intervals

/// A pair [d, u] with no order constraint; improper when u < d.
struct KInterval {
    ExtRational d;
    ExtRational u;

    bool proper() const { return d <= u; }

    friend bool operator==(const KInterval&, const KInterval&) = default;

    friend std::ostream& operator<<(std::ostream& os, const KInterval& k)
    {
        return os << '[' << k.d << ',' << k.u << ']';
    }
};

inline KInterval k_add(const KInterval& a, const KInterval& b)
{
    return {a.d + b.d, a.u + b.u};
}

inline KInterval k_sub(const KInterval& a, const KInterval& b)
{
    return {a.d - b.u, a.u - b.d};
}

inline KInterval k_max(const KInterval& a, const KInterval& b)
{
    return {emax(a.d, b.d), emax(a.u, b.u)};
}

/// Meet in the information order: the widest of the two.
inline KInterval k_meet(const KInterval& a, const KInterval& b)
{
    return {emin(a.d, b.d), emax(a.u, b.u)};
}

namespace detail {

inline ExtRational pos_part(const ExtRational& q)
{
    return emax(q, ExtRational(0));
}

inline ExtRational neg_part(const ExtRational& q)
{
    return emax(-q, ExtRational(0));
}

} // namespace detail

inline KInterval k_mul(const KInterval& a, const KInterval& b)
{
    using detail::neg_part;
    using detail::pos_part;
    const ExtRational d1p = pos_part(a.d), d1m = neg_part(a.d), u1p = pos_part(a.u), u1m = neg_part(a.u);
    const ExtRational d2p = pos_part(b.d), d2m = neg_part(b.d), u2p = pos_part(b.u), u2m = neg_part(b.u);
    return {emax(d1p * d2p, u1m * u2m) - emax(u1p * d2m, u2p * d1m),
            emax(u1p * u2p, d1m * d2m) - emax(d1p * u2m, d2p * u1m)};
}

inline KInterval k_recip(const KInterval& a)
{
    if (!(ExtRational(0) < a.d) || !(ExtRational(0) < a.u))
        throw Error("k_recip: interval " + to_string(a.d) + ", " + to_string(a.u) + " is not positive");
    auto inv = [](const ExtRational& q) { return q.is_pos_inf() ? ExtRational(0) : ExtRational(Rational(1 / q.value())); };
    return {inv(a.u), inv(a.d)};
}

/// Way-below on the improper predomain: b lies strictly inside a.
inline bool k_way_below(const KInterval& a, const KInterval& b)
{
    return a.d < b.d && b.u < a.u;
}

/// Information order: b refines a.
inline bool k_below(const KInterval& a, const KInterval& b)
{
    return a.d <= b.d && b.u <= a.u;
}

struct ApproxReport {
    bool monotone = true;
    bool interpolative = true;
    std::size_t samples = 0;
    std::string counterexample;

    bool ok() const { return monotone && interpolative; }
};

using BinaryEndpointFn = std::function<KInterval(const KInterval&, const KInterval&)>;

/// Samples the two conditions of an approximable mapping in each argument:
/// monotonicity along b << b', and for c << f(b) some b' << b with
/// c << f(b'), searched among dyadic widenings of b.
inline ApproxReport approx_map_check(const BinaryEndpointFn& f, std::size_t samples, std::uint64_t seed = 1)
{
    if (samples == 0)
        throw Error("approx_map_check: need at least one sample");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-40, 40);
    std::uniform_int_distribution<int> den(1, 8);
    std::uniform_int_distribution<int> step(1, 16);
    auto rnd = [&] { return Rational(make_rational(num(rng), den(rng))); };
    auto rnd_pos = [&] { return Rational(make_rational(step(rng), 16)); };
    auto widen = [](const KInterval& k, const Rational& e) {
        return KInterval{k.d - ExtRational(e), k.u + ExtRational(e)};
    };
    auto shrink = [&](const KInterval& k) {
        return KInterval{k.d + ExtRational(rnd_pos()), k.u - ExtRational(rnd_pos())};
    };
    auto apply = [&](int arg, const KInterval& x, const KInterval& other) {
        return arg == 0 ? f(x, other) : f(other, x);
    };

    ApproxReport rep;
    rep.samples = samples;
    for (std::size_t i = 0; i < samples; ++i) {
        const KInterval b{rnd(), rnd()};
        const KInterval other{rnd(), rnd()};
        for (int arg = 0; arg < 2; ++arg) {
            const KInterval b2 = shrink(b);
            const KInterval fb = apply(arg, b, other);
            if (rep.monotone && !k_below(fb, apply(arg, b2, other))) {
                rep.monotone = false;
                std::ostringstream os;
                os << "condition 1, argument " << arg << ": " << b << " << " << b2 << " but f not monotone";
                rep.counterexample = os.str();
            }
            const KInterval c = widen(fb, rnd_pos());
            bool found = false;
            Rational eps = 1;
            for (int k = 0; k < 40 && !found; ++k) {
                eps /= 2;
                found = k_way_below(c, apply(arg, widen(b, eps), other));
            }
            if (rep.interpolative && !found) {
                rep.interpolative = false;
                std::ostringstream os;
                os << "condition 2, argument " << arg << ": no b' << " << b << " with " << c << " << f(b')";
                if (rep.counterexample.empty())
                    rep.counterexample = os.str();
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Sections

/// A variable real: a continuous trajectory g on the window, in local time.
class VariableReal {
public:
    VariableReal(Clock clock, PLF g) : clock_(std::move(clock)), g_(std::move(g))
    {
        if (g_.is_infinite() || g_.lo() != 0 || g_.hi() != clock_.length())
            throw Error("VariableReal: trajectory must be a finite PLF on [0, " + to_string(clock_.length())
                        + "]");
    }

    static VariableReal constant(const Clock& clock, const Rational& c)
    {
        return VariableReal(clock, PLF::constant(0, clock.length(), c));
    }

    const Clock& clock() const { return clock_; }
    Window window() const { return clock_.window(); }
    const PLF& g() const { return g_; }

    friend bool operator==(const VariableReal&, const VariableReal&) = default;

private:
    Clock clock_;
    PLF g_;
};

/// A pair of real-axis endpoint functions (lo, hi) of a numeric section.
class IntervalSection {
public:
    IntervalSection(Clock clock, PLF lo, PLF hi) : clock_(std::move(clock)), lo_(std::move(lo)), hi_(std::move(hi))
    {
        for (const PLF* f : {&lo_, &hi_})
            if (f->is_infinite() || f->lo() != 0 || f->hi() != clock_.length())
                throw Error("IntervalSection: endpoints must be finite PLFs on [0, "
                            + to_string(clock_.length()) + "]");
    }

    IntervalSection(const VariableReal& x) : IntervalSection(x.clock(), x.g(), x.g()) {}

    const Clock& clock() const { return clock_; }
    Window window() const { return clock_.window(); }
    const PLF& lo() const { return lo_; }
    const PLF& hi() const { return hi_; }

    bool proper() const { return pw_leq(lo_, hi_); }

    friend bool operator==(const IntervalSection&, const IntervalSection&) = default;

private:
    Clock clock_;
    PLF lo_, hi_;
};

namespace detail {

inline void require_same_clock(const Clock& a, const Clock& b, const char* what)
{
    if (a != b)
        throw Error(std::string(what) + ": clock mismatch");
}

} // namespace detail

inline VariableReal vr_add(const VariableReal& x, const VariableReal& y)
{
    detail::require_same_clock(x.clock(), y.clock(), "vr_add");
    return VariableReal(x.clock(), pw_add(x.g(), y.g()));
}

inline VariableReal vr_scale(const Rational& c, const VariableReal& x)
{
    return VariableReal(x.clock(), pw_scale(c, x.g()));
}

inline VariableReal vr_max(const VariableReal& x, const VariableReal& y)
{
    detail::require_same_clock(x.clock(), y.clock(), "vr_max");
    return VariableReal(x.clock(), pw_max(x.g(), y.g()));
}

/// The interpolant of x * y at the union of breakpoints, each gap divided
/// into `refinement` equal parts.
inline VariableReal vr_mul(const VariableReal& x, const VariableReal& y, unsigned refinement)
{
    detail::require_same_clock(x.clock(), y.clock(), "vr_mul");
    if (refinement == 0)
        throw Error("vr_mul: refinement must be positive");
    const auto xs = detail::merged_abscissae(x.g(), y.g());
    std::vector<Breakpoint> pts;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rational h = (xs[i + 1] - xs[i]) / refinement;
        for (unsigned k = 0; k < refinement; ++k) {
            const Rational t = xs[i] + h * k;
            pts.push_back({t, Rational(x.g().value(t) * y.g().value(t))});
        }
    }
    pts.push_back({xs.back(), Rational(x.g().value(xs.back()) * y.g().value(xs.back()))});
    return VariableReal(x.clock(), PLF(std::move(pts)));
}

/// (min of lo, max of hi) over the local interval p.
inline KInterval lift(const IntervalSection& s, const IntervalPoint& p)
{
    const Rational& l = s.clock().length();
    if (p.d < 0 || l < p.u)
        throw Error("lift: point outside the window");
    return {min_on(s.lo(), p.d, p.u), max_on(s.hi(), p.d, p.u)};
}

/// The value of x at global time r.
inline Rational at_value(const VariableReal& x, const Rational& r)
{
    if (!(x.clock().d_t() < r && r < x.clock().u_t()))
        throw Error("at_value: time " + to_string(r) + " outside the open window");
    return x.g().value(x.clock().local(r));
}

// ---------------------------------------------------------------------------
// Comparison opens

namespace detail {

/// cm*m + cr*rho + cs*s + ct*t >= c
struct LinIneq {
    Rational cm, cr, cs, ct, c;
};

/// Eliminates the variable picked by `coef` from a system of inequalities.
template <class Coef>
std::vector<LinIneq> fm_eliminate(const std::vector<LinIneq>& sys, Coef coef)
{
    std::vector<LinIneq> out, pos, neg;
    for (const auto& e : sys) {
        const int sg = sgn(coef(e));
        (sg > 0 ? pos : sg < 0 ? neg : out).push_back(e);
    }
    for (const auto& p : pos) {
        for (const auto& n : neg) {
            const Rational a = -coef(n);
            const Rational b = coef(p);
            out.push_back({p.cm * a + n.cm * b, p.cr * a + n.cr * b, p.cs * a + n.cs * b, p.ct * a + n.ct * b,
                           p.c * a + n.c * b});
        }
    }
    return out;
}

/// The L-infinity distance from (m, m) to the cell's part of
/// {(s, t) : x(s) >= y(t)}, as a PLF in m on [0, l]; nullopt if that part is
/// empty. s ranges over [s0, s1] where x = xs0 + kx (s - s0), and likewise t.
inline std::optional<PLF> cell_distance(const Rational& l, const Breakpoint& xa, const Breakpoint& xb,
                                        const Breakpoint& ya, const Breakpoint& yb)
{
    if (rmax(xa.y, xb.y) < rmin(ya.y, yb.y))
        return std::nullopt;
    const Rational kx = (xb.y - xa.y) / (xb.x - xa.x);
    const Rational ky = (yb.y - ya.y) / (yb.x - ya.x);
    std::vector<LinIneq> sys{
        {-1, 1, 1, 0, 0},                 // s >= m - rho
        {1, 1, -1, 0, 0},                 // s <= m + rho
        {-1, 1, 0, 1, 0},                 // t >= m - rho
        {1, 1, 0, -1, 0},                 // t <= m + rho
        {0, 0, 1, 0, xa.x},               // s >= s0
        {0, 0, -1, 0, Rational(-xb.x)},   // s <= s1
        {0, 0, 0, 1, ya.x},               // t >= t0
        {0, 0, 0, -1, Rational(-yb.x)},   // t <= t1
        {0, 0, kx, Rational(-ky), Rational(ya.y - ky * ya.x - xa.y + kx * xa.x)}, // x(s) >= y(t)
        {0, 1, 0, 0, 0},                  // rho >= 0
    };
    sys = fm_eliminate(sys, [](const LinIneq& e) -> const Rational& { return e.cs; });
    sys = fm_eliminate(sys, [](const LinIneq& e) -> const Rational& { return e.ct; });
    std::optional<PLF> g;
    for (const auto& e : sys) {
        if (e.cr == 0) {
            if (e.cm != 0)
                throw Error("lt_open: internal elimination produced an m-only constraint");
            if (0 < e.c)
                return std::nullopt;
            continue;
        }
        if (e.cr < 0)
            throw Error("lt_open: internal elimination produced an upper bound on the radius");
        // rho >= (c - cm m) / cr
        const PLF line = PLF::line(0, l, Rational(e.c / e.cr), Rational((e.c - e.cm * l) / e.cr));
        g = g ? pw_max(*g, line) : line;
    }
    return g;
}

} // namespace detail

/// The open of x < y: interval points [a, b] with max hi_x < min lo_y over
/// [a, b]. Its path is the distance from the diagonal to the bad set
/// {(s, t) : hi_x(s) >= lo_y(t)}, computed cell by cell.
inline DyckPath lt_open(const IntervalSection& x, const IntervalSection& y)
{
    detail::require_same_clock(x.clock(), y.clock(), "lt_open");
    const Window w = x.window();
    const Rational& l = w.length();
    const auto& px = x.hi().points();
    const auto& py = y.lo().points();
    PLF d = tent(w);
    for (std::size_t i = 0; i + 1 < px.size(); ++i)
        for (std::size_t j = 0; j + 1 < py.size(); ++j)
            if (auto g = detail::cell_distance(l, px[i], px[i + 1], py[j], py[j + 1]))
                d = pw_min(d, *g);
    return DyckPath(w, d);
}

inline DyckPath leq_open(const IntervalSection& x, const IntervalSection& y)
{
    return not_(lt_open(y, x));
}

enum class Cmp { lt, gt };

/// x < r or x > r for a constant r.
inline DyckPath cmp_const_open(const IntervalSection& x, const Rational& r, Cmp dir)
{
    const VariableReal c = VariableReal::constant(x.clock(), r);
    return dir == Cmp::lt ? lt_open(x, c) : lt_open(c, x);
}

} // namespace ttsem
