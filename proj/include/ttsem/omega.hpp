#pragma once

// Temporal propositions over a window, as Dyck paths.
//
// An open U of the cone above [0, l] is stored as its boundary radius
// function D(m) = sup{r : (m, r) in U}; a half-plane point (m, r) lies in U
// iff r < D(m). D is 1-Lipschitz and vanishes at both ends, and the frame
// operations on opens become exact operations on these paths.

#include "ttsem/interval_domain.hpp"

#include <span>
#include <vector>

namespace ttsem {

class DyckPath {
public:
    DyckPath(Window w, PLF path) : window_(std::move(w)), path_(std::move(path))
    {
        const Rational& l = window_.length();
        if (path_.is_infinite() || path_.lo() != 0 || path_.hi() != l)
            throw Error("DyckPath: path must be a finite PLF on [0, " + to_string(l) + "]");
        if (path_.points().front().y != 0 || path_.points().back().y != 0)
            throw Error("DyckPath: path must vanish at both ends of the window");
        for (std::size_t i = 0; i < path_.segments(); ++i)
            if (1 < rabs(path_.slope(i)))
                throw Error("DyckPath: segment " + std::to_string(i) + " has slope "
                            + to_string(path_.slope(i)) + ", not 1-Lipschitz");
        for (const auto& p : path_.points())
            if (p.y < 0)
                throw Error("DyckPath: negative height at " + to_string(p.x));
    }

    const Window& window() const { return window_; }
    const Rational& length() const { return window_.length(); }
    const PLF& path() const { return path_; }

    Rational operator()(const Rational& x) const { return path_.value(x); }

    /// Strict membership of a half-plane point in the open.
    bool contains(const HalfPlanePoint& p) const
    {
        return path_.in_domain(p.m) && p.r < path_.value(p.m);
    }

    bool contains(const IntervalPoint& p) const { return contains(to_halfplane(p)); }

    friend bool operator==(const DyckPath&, const DyckPath&) = default;

    friend std::ostream& operator<<(std::ostream& os, const DyckPath& d)
    {
        return os << "Dyck[" << to_string(d.length()) << "]" << d.path_;
    }

private:
    Window window_;
    PLF path_;
};

inline DyckPath top(const Window& w)
{
    return DyckPath(w, tent(w));
}

inline DyckPath bottom(const Window& w)
{
    return DyckPath(w, PLF::constant(0, w.length(), 0));
}

namespace detail {

inline void require_same_window(const DyckPath& p, const DyckPath& q, const char* what)
{
    if (p.window() != q.window())
        throw Error(std::string(what) + ": window mismatch (" + to_string(p.length()) + " vs "
                    + to_string(q.length()) + ")");
}

/// Closures of the components of {x : h(x) > 0}.
inline std::vector<std::pair<Rational, Rational>> positive_closure(const PLF& h)
{
    std::vector<std::pair<Rational, Rational>> comps;
    const auto& p = h.points();
    bool open = false;
    Rational start;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (0 < p[i].y) {
            if (!open) {
                open = true;
                start = p[i].x;
            }
        }
        if (i + 1 == p.size())
            break;
        const Rational& y0 = p[i].y;
        const Rational& y1 = p[i + 1].y;
        // Entering or leaving positivity strictly inside the segment.
        const bool rising = y0 <= 0 && 0 < y1;
        const bool falling = 0 < y0 && y1 <= 0;
        if (rising || falling) {
            Rational x = y0 == 0 ? p[i].x
                                 : (y1 == 0 ? p[i + 1].x
                                            : Rational(p[i].x + (p[i + 1].x - p[i].x) * y0 / (y0 - y1)));
            if (rising && !open) {
                open = true;
                start = x;
            } else if (falling) {
                comps.emplace_back(start, x);
                open = false;
            }
        }
    }
    if (open)
        comps.emplace_back(start, p.back().x);
    return comps;
}

/// The closed linear pieces of f over [a, b].
inline void append_pieces(const PLF& f, const Rational& a, const Rational& b, std::vector<Segment>& out)
{
    Rational x0 = a;
    Rational y0 = f.value(a);
    for (const auto& p : f.points()) {
        if (a < p.x && p.x < b) {
            out.push_back({x0, p.x, y0, p.y});
            x0 = p.x;
            y0 = p.y;
        }
    }
    out.push_back({x0, b, y0, f.value(b)});
}

} // namespace detail

inline DyckPath and_(const DyckPath& p, const DyckPath& q)
{
    detail::require_same_window(p, q, "and");
    return DyckPath(p.window(), pw_min(p.path(), q.path()));
}

inline DyckPath or_(const DyckPath& p, const DyckPath& q)
{
    detail::require_same_window(p, q, "or");
    return DyckPath(p.window(), pw_max(p.path(), q.path()));
}

/// Heyting implication: the largest path D with min(D, P) <= Q.
///
/// D is constrained to stay under Q on the closure of {P > Q} and is free
/// elsewhere; the answer is the 1-Lipschitz envelope of that bound, capped by
/// the tent.
inline DyckPath implies(const DyckPath& p, const DyckPath& q)
{
    detail::require_same_window(p, q, "implies");
    const PLF excess = pw_sub(p.path(), q.path());
    std::vector<Segment> pieces;
    for (const auto& [a, b] : detail::positive_closure(excess))
        detail::append_pieces(q.path(), a, b, pieces);
    const PLF t = tent(p.window());
    if (pieces.empty())
        return DyckPath(p.window(), t);
    const PLF env = lipschitz_envelope(pieces, 1, 0, p.length());
    return DyckPath(p.window(), pw_min(t, env));
}

inline DyckPath not_(const DyckPath& p)
{
    return implies(p, bottom(p.window()));
}

/// Entailment: inclusion of opens.
inline bool leq(const DyckPath& p, const DyckPath& q)
{
    detail::require_same_window(p, q, "leq");
    return pw_leq(p.path(), q.path());
}

/// Restriction along the subwindow [r, l - s].
inline DyckPath restrict(const DyckPath& p, const Rational& r, const Rational& s)
{
    if (r < 0 || s < 0 || !(r + s < p.length()))
        throw Error("restrict: invalid cut (" + to_string(r) + ", " + to_string(s) + ") of window "
                    + to_string(p.length()));
    const Window w(Rational(p.length() - r - s));
    return DyckPath(w, pw_min(reparam(p.path(), r, Rational(p.length() - s)), tent(w)));
}

/// Whether the subwindow [a, b] (local coordinates) forces P: the cone above
/// [a, b] lies inside P's open.
inline bool forces(const DyckPath& p, const Rational& a, const Rational& b)
{
    if (!(0 <= a && a < b && b <= p.length()))
        throw Error("forces: [" + to_string(a) + ", " + to_string(b) + "] is not a subwindow of [0, "
                    + to_string(p.length()) + "]");
    return pw_leq(tent_on(p.window(), a, b), p.path());
}

inline bool forces(const DyckPath& p)
{
    return forces(p, 0, p.length());
}

/// The open generated by finitely many half-plane segments: the union of
/// the way-above sets of their points. Used as an independent representation
/// of opens when checking the open/Lipschitz correspondence.
class ConeUnion {
public:
    struct Generator {
        HalfPlanePoint from;
        HalfPlanePoint to;
    };

    ConeUnion(Window w, std::vector<Generator> gens) : window_(std::move(w)), gens_(std::move(gens))
    {
        const Rational& l = window_.length();
        for (const auto& g : gens_)
            for (const HalfPlanePoint* p : {&g.from, &g.to})
                if (p->m - p->r < 0 || l < p->m + p->r)
                    throw Error("ConeUnion: generator leaves the cone above the window");
    }

    /// The open U_f of a Dyck path, generated by the segments of its graph.
    static ConeUnion of(const DyckPath& d)
    {
        std::vector<Generator> gens;
        const auto& p = d.path().points();
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            gens.push_back({HalfPlanePoint(p[i].x, p[i].y), HalfPlanePoint(p[i + 1].x, p[i + 1].y)});
        return ConeUnion(d.window(), std::move(gens));
    }

    const Window& window() const { return window_; }
    const std::vector<Generator>& generators() const { return gens_; }

    /// (m, r) lies in U iff some generator point p has |m - m_p| < r_p - r.
    bool contains(const HalfPlanePoint& q) const
    {
        for (const auto& g : gens_) {
            if (q.r < reach(g, q.m))
                return true;
        }
        return false;
    }

    /// f_U(m) = sup{r >= 0 : (m, r) in U}, as a Dyck path.
    DyckPath boundary() const
    {
        const Rational& l = window_.length();
        std::vector<Segment> neg;
        for (const auto& g : gens_) {
            const bool fwd = g.from.m <= g.to.m;
            const auto& a = fwd ? g.from : g.to;
            const auto& b = fwd ? g.to : g.from;
            neg.push_back({a.m, b.m, Rational(-a.r), Rational(-b.r)});
        }
        PLF hat = PLF::constant(0, l, 0);
        if (!neg.empty())
            hat = pw_max(hat, pw_scale(-1, lipschitz_envelope(neg, 1, 0, l)));
        return DyckPath(window_, pw_min(hat, tent(window_)));
    }

private:
    /// sup over the generator's points p of r_p - |m - m_p|.
    static Rational reach(const Generator& g, const Rational& m)
    {
        auto at = [&](const HalfPlanePoint& p) { return Rational(p.r - rabs(Rational(m - p.m))); };
        Rational best = rmax(at(g.from), at(g.to));
        const Rational& m0 = g.from.m;
        const Rational& m1 = g.to.m;
        if (m0 != m1 && rmin(m0, m1) < m && m < rmax(m0, m1)) {
            const Rational r = g.from.r + (g.to.r - g.from.r) * (m - m0) / (m1 - m0);
            if (best < r)
                best = r;
        }
        return best;
    }

    Window window_;
    std::vector<Generator> gens_;
};

} // namespace ttsem
