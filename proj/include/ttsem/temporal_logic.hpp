#pragma once

// Classical Until/Since and metric until over boolean signals with exact
// interval endpoints, and the embedding of signals as opens.

#include "ttsem/omega.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

namespace ttsem {

/// An interval of the window with open/closed flags at each end.
struct Span {
    Rational lo, hi;
    bool lo_closed = true;
    bool hi_closed = true;

    bool empty() const { return hi < lo || (lo == hi && !(lo_closed && hi_closed)); }

    bool contains(const Rational& t) const
    {
        return (lo < t || (lo_closed && lo == t)) && (t < hi || (hi_closed && hi == t));
    }

    friend bool operator==(const Span&, const Span&) = default;
};

inline Span intersect(const Span& a, const Span& b)
{
    Span s;
    if (a.lo < b.lo || (a.lo == b.lo && !b.lo_closed)) {
        s.lo = b.lo;
        s.lo_closed = b.lo_closed;
    } else {
        s.lo = a.lo;
        s.lo_closed = a.lo_closed;
    }
    if (b.hi < a.hi || (a.hi == b.hi && !b.hi_closed)) {
        s.hi = b.hi;
        s.hi_closed = b.hi_closed;
    } else {
        s.hi = a.hi;
        s.hi_closed = a.hi_closed;
    }
    return s;
}

/// The set of instants of [0, l] where an atomic proposition holds, as
/// sorted, disjoint, maximal spans.
class BoolSignal {
public:
    BoolSignal(Window w, std::vector<Span> spans) : window_(std::move(w))
    {
        const Rational& l = window_.length();
        for (auto& s : spans) {
            if (s.lo < 0 || l < s.hi)
                throw Error("BoolSignal: span outside the window");
            if (!s.empty())
                spans_.push_back(s);
        }
        std::sort(spans_.begin(), spans_.end(), [](const Span& a, const Span& b) {
            return a.lo < b.lo || (a.lo == b.lo && a.lo_closed && !b.lo_closed);
        });
        normalize();
    }

    static BoolSignal always(const Window& w) { return BoolSignal(w, {{0, w.length(), true, true}}); }
    static BoolSignal never(const Window& w) { return BoolSignal(w, {}); }

    friend std::ostream& operator<<(std::ostream& os, const BoolSignal& s)
    {
        os << "Signal[" << to_string(s.length()) << "]{";
        for (const auto& sp : s.spans_)
            os << (sp.lo_closed ? '[' : '(') << to_string(sp.lo) << ',' << to_string(sp.hi)
               << (sp.hi_closed ? ']' : ')');
        return os << '}';
    }

    const Window& window() const { return window_; }
    const Rational& length() const { return window_.length(); }
    const std::vector<Span>& spans() const { return spans_; }

    bool contains(const Rational& t) const
    {
        return std::any_of(spans_.begin(), spans_.end(), [&](const Span& s) { return s.contains(t); });
    }

    /// The span containing t, if any.
    const Span* span_at(const Rational& t) const
    {
        for (const auto& s : spans_)
            if (s.contains(t))
                return &s;
        return nullptr;
    }

    /// Endpoints of all spans plus the window ends.
    std::vector<Rational> endpoints() const
    {
        std::vector<Rational> e{0, length()};
        for (const auto& s : spans_) {
            e.push_back(s.lo);
            e.push_back(s.hi);
        }
        return e;
    }

    /// The signal that holds where pred holds, given that pred is constant
    /// on the open gaps between consecutive candidate points.
    static BoolSignal from_predicate(const Window& w, std::vector<Rational> cand,
                                     const std::function<bool(const Rational&)>& pred)
    {
        const Rational& l = w.length();
        cand.push_back(0);
        cand.push_back(l);
        std::erase_if(cand, [&](const Rational& x) { return x < 0 || l < x; });
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        std::vector<Span> out;
        auto add = [&](Span s) {
            if (!out.empty() && out.back().hi == s.lo && (out.back().hi_closed || s.lo_closed)) {
                out.back().hi = s.hi;
                out.back().hi_closed = s.hi_closed;
            } else {
                out.push_back(s);
            }
        };
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (pred(cand[i]))
                add({cand[i], cand[i], true, true});
            if (i + 1 < cand.size() && pred(Rational((cand[i] + cand[i + 1]) / 2)))
                add({cand[i], cand[i + 1], false, false});
        }
        return BoolSignal(w, std::move(out));
    }

    friend bool operator==(const BoolSignal&, const BoolSignal&) = default;

private:
    void normalize()
    {
        std::vector<Span> merged;
        for (const auto& s : spans_) {
            if (!merged.empty()) {
                Span& b = merged.back();
                const bool touch = s.lo < b.hi || (s.lo == b.hi && (b.hi_closed || s.lo_closed));
                if (touch) {
                    if (b.hi < s.hi || (b.hi == s.hi && s.hi_closed)) {
                        b.hi = s.hi;
                        b.hi_closed = s.hi_closed || (b.hi == s.hi && b.hi_closed);
                    }
                    continue;
                }
            }
            merged.push_back(s);
        }
        spans_ = std::move(merged);
    }

    Window window_;
    std::vector<Span> spans_;
};

namespace detail {

inline void require_same_window(const BoolSignal& p, const BoolSignal& q, const char* what)
{
    if (p.window() != q.window())
        throw Error(std::string(what) + ": window mismatch");
}

inline std::vector<Rational> joint_endpoints(const BoolSignal& p, const BoolSignal& q)
{
    auto e = p.endpoints();
    auto f = q.endpoints();
    e.insert(e.end(), f.begin(), f.end());
    return e;
}

inline bool meets(const Span& s, const BoolSignal& q)
{
    if (s.empty())
        return false;
    return std::any_of(q.spans().begin(), q.spans().end(), [&](const Span& c) { return !intersect(s, c).empty(); });
}

/// Whether the nonempty span s lies inside one component of q.
inline bool inside(const Span& s, const BoolSignal& q)
{
    for (const auto& c : q.spans()) {
        const bool lo_ok = c.lo < s.lo || (c.lo == s.lo && (c.lo_closed || !s.lo_closed));
        const bool hi_ok = s.hi < c.hi || (c.hi == s.hi && (c.hi_closed || !s.hi_closed));
        if (lo_ok && hi_ok)
            return true;
    }
    return false;
}

} // namespace detail

inline BoolSignal not_(const BoolSignal& p)
{
    return BoolSignal::from_predicate(p.window(), p.endpoints(), [&](const Rational& t) { return !p.contains(t); });
}

inline BoolSignal and_(const BoolSignal& p, const BoolSignal& q)
{
    detail::require_same_window(p, q, "and");
    return BoolSignal::from_predicate(p.window(), detail::joint_endpoints(p, q),
                                      [&](const Rational& t) { return p.contains(t) && q.contains(t); });
}

inline BoolSignal or_(const BoolSignal& p, const BoolSignal& q)
{
    detail::require_same_window(p, q, "or");
    return BoolSignal::from_predicate(p.window(), detail::joint_endpoints(p, q),
                                      [&](const Rational& t) { return p.contains(t) || q.contains(t); });
}

/// (p U q)(t0): some t >= t0 has q(t) with p on [t0, t].
inline BoolSignal until(const BoolSignal& p, const BoolSignal& q)
{
    detail::require_same_window(p, q, "until");
    return BoolSignal::from_predicate(p.window(), detail::joint_endpoints(p, q), [&](const Rational& t0) {
        const Span* c = p.span_at(t0);
        return c && detail::meets(Span{t0, c->hi, true, c->hi_closed}, q);
    });
}

/// (p S q)(t0): some t <= t0 has q(t) with p on [t, t0].
inline BoolSignal since(const BoolSignal& p, const BoolSignal& q)
{
    detail::require_same_window(p, q, "since");
    return BoolSignal::from_predicate(p.window(), detail::joint_endpoints(p, q), [&](const Rational& t0) {
        const Span* c = p.span_at(t0);
        return c && detail::meets(Span{c->lo, t0, c->lo_closed, true}, q);
    });
}

/// (p R q)(t0): q holds at every t >= t0 until and including the first p.
inline BoolSignal release(const BoolSignal& p, const BoolSignal& q)
{
    detail::require_same_window(p, q, "release");
    const BoolSignal np = not_(p);
    return BoolSignal::from_predicate(p.window(), detail::joint_endpoints(p, q), [&](const Rational& t0) {
        const Span* c = np.span_at(t0);
        return !c || detail::inside(Span{t0, c->hi, true, c->hi_closed}, q);
    });
}

/// Some t with t0 + d < t < t0 + u, q(t), and p on the open (t0, t).
inline BoolSignal metric_until(const BoolSignal& p, const BoolSignal& q, const Rational& d, const Rational& u)
{
    detail::require_same_window(p, q, "metric_until");
    const Rational& l = p.length();
    std::vector<Rational> cand;
    for (const auto& e : detail::joint_endpoints(p, q)) {
        cand.push_back(e);
        cand.push_back(e - d);
        cand.push_back(e - u);
    }
    return BoolSignal::from_predicate(p.window(), std::move(cand), [&](const Rational& t0) {
        if (!(d < u))
            return false;
        // Reach of p to the right of t0: (t0, t) inside p iff t <= reach.
        Rational reach = t0;
        for (const auto& c : p.spans())
            if (c.lo <= t0 && t0 < c.hi)
                reach = c.hi;
        const Span window{0, l, true, true};
        const Span horizon{Rational(t0 + d), Rational(t0 + u), false, false};
        const Span before = intersect(intersect(horizon, window), Span{Rational(t0 + d), t0, false, true});
        const Span after = intersect(intersect(horizon, window), Span{t0, reach, false, true});
        return detail::meets(before, q) || detail::meets(after, q);
    });
}

inline BoolSignal box(const BoolSignal& p)
{
    return BoolSignal::from_predicate(p.window(), p.endpoints(), [&](const Rational& t0) {
        return detail::inside(Span{t0, p.length(), true, true}, p);
    });
}

inline BoolSignal diamond(const BoolSignal& p)
{
    return BoolSignal::from_predicate(p.window(), p.endpoints(), [&](const Rational& t0) {
        return detail::meets(Span{t0, p.length(), true, true}, p);
    });
}

/// (next p)(t0) = p(t0 + step); false past the window.
inline BoolSignal next(const BoolSignal& p, const Rational& step = 1)
{
    std::vector<Rational> cand;
    for (const auto& e : p.endpoints())
        cand.push_back(e - step);
    return BoolSignal::from_predicate(p.window(), std::move(cand), [&](const Rational& t0) {
        const Rational t = t0 + step;
        return 0 <= t && t <= p.length() && p.contains(t);
    });
}

/// The largest open all of whose interval points sit inside the true set.
inline DyckPath to_open(const BoolSignal& s)
{
    const Window& w = s.window();
    std::vector<ClosedSet1D::Component> off;
    const BoolSignal f = not_(s);
    for (const auto& c : f.spans())
        off.emplace_back(c.lo, c.hi);
    return DyckPath(w, pw_min(tent(w), dist_to(ClosedSet1D(0, w.length(), std::move(off)))));
}

} // namespace ttsem
