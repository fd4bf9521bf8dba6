#pragma once

// Points of the interval domain, the half-plane picture, windows and clocks.

#include "ttsem/plf.hpp"

#include <ostream>

namespace ttsem {

/// A compact interval [d, u], d <= u; an element of the interval domain.
struct IntervalPoint {
    Rational d;
    Rational u;

    IntervalPoint(Rational lo, Rational hi) : d(std::move(lo)), u(std::move(hi))
    {
        if (u < d)
            throw Error("IntervalPoint: [" + to_string(d) + ", " + to_string(u) + "] has u < d");
    }

    friend bool operator==(const IntervalPoint&, const IntervalPoint&) = default;

    friend std::ostream& operator<<(std::ostream& os, const IntervalPoint& p)
    {
        return os << '[' << to_string(p.d) << ',' << to_string(p.u) << ']';
    }
};

/// Midpoint/radius coordinates of an interval point.
struct HalfPlanePoint {
    Rational m;
    Rational r;

    HalfPlanePoint(Rational mid, Rational rad) : m(std::move(mid)), r(std::move(rad))
    {
        if (r < 0)
            throw Error("HalfPlanePoint: negative radius " + to_string(r));
    }

    friend bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;
};

/// Information order: q refines p (q is a narrower interval inside p).
inline bool below(const IntervalPoint& p, const IntervalPoint& q)
{
    return p.d <= q.d && q.d <= q.u && q.u <= p.u;
}

/// p is way below q: q sits strictly inside p.
inline bool way_below(const IntervalPoint& p, const IntervalPoint& q)
{
    return p.d < q.d && q.u < p.u;
}

/// Greatest lower bound in the information order (the interval hull).
inline IntervalPoint point_meet(const IntervalPoint& p, const IntervalPoint& q)
{
    return {rmin(p.d, q.d), rmax(p.u, q.u)};
}

inline HalfPlanePoint to_halfplane(const IntervalPoint& p)
{
    return {Rational((p.u + p.d) / 2), Rational((p.u - p.d) / 2)};
}

inline IntervalPoint from_halfplane(const HalfPlanePoint& h)
{
    return {Rational(h.m - h.r), Rational(h.m + h.r)};
}

/// A window length; zero-length windows are excluded.
class Window {
public:
    explicit Window(Rational length) : length_(std::move(length))
    {
        if (!(0 < length_))
            throw Error("Window: length must be positive, got " + to_string(length_));
    }

    const Rational& length() const { return length_; }

    friend bool operator==(const Window&, const Window&) = default;

private:
    Rational length_;
};

/// A section of Time: the readings (d_t, u_t) of a unit-speed clock at the
/// two ends of the window.
class Clock {
public:
    Clock(Rational d_t, Rational u_t) : d_t_(std::move(d_t)), u_t_(std::move(u_t))
    {
        if (!(d_t_ < u_t_))
            throw Error("Clock: need d_t < u_t, got (" + to_string(d_t_) + ", " + to_string(u_t_) + ")");
    }

    const Rational& d_t() const { return d_t_; }
    const Rational& u_t() const { return u_t_; }
    Window window() const { return Window(Rational(u_t_ - d_t_)); }
    Rational length() const { return u_t_ - d_t_; }

    /// Window-local coordinate of a clock reading.
    Rational local(const Rational& t) const { return t - d_t_; }
    Rational global(const Rational& x) const { return x + d_t_; }

    /// The clock restricted to the subwindow [r, l - s].
    Clock restrict(const Rational& r, const Rational& s) const
    {
        return Clock(Rational(d_t_ + r), Rational(u_t_ - s));
    }

    friend bool operator==(const Clock&, const Clock&) = default;

private:
    Rational d_t_, u_t_;
};

/// x -> min(x, l - x): the boundary of the whole cone above [0, l].
inline PLF tent(const Window& w)
{
    const Rational& l = w.length();
    return PLF({{0, 0}, {Rational(l / 2), Rational(l / 2)}, {l, 0}});
}

/// x -> max(0, min(x - a, b - x)) on [0, l]: the cone above a subinterval.
inline PLF tent_on(const Window& w, const Rational& a, const Rational& b)
{
    const Rational& l = w.length();
    if (!(a < b) || a < 0 || l < b)
        throw Error("tent_on: [" + to_string(a) + ", " + to_string(b) + "] is not a subwindow");
    std::vector<Breakpoint> pts{{0, 0}};
    if (0 < a)
        pts.push_back({a, 0});
    pts.push_back({Rational((a + b) / 2), Rational((b - a) / 2)});
    if (b < l)
        pts.push_back({b, 0});
    pts.push_back({l, 0});
    return PLF(std::move(pts));
}

} // namespace ttsem
