#pragma once

// Exact piecewise-linear functions on a closed rational interval.
//
// Every other module is expressed in terms of these: Dyck paths, variable
// reals, interval sections and the boundary functions of comparison opens.

#include "ttsem/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace ttsem {

struct Breakpoint {
    Rational x;
    Rational y;

    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// A continuous piecewise-linear function on [lo, hi], lo < hi.
///
/// Breakpoints are kept strictly increasing in x and normalized (no interior
/// breakpoint lies on the segment joining its neighbours), so two PLFs are
/// equal as functions iff their breakpoint lists are equal. The one extended
/// value admitted is the constant +inf function, used for distances to an
/// empty set and for unconstrained envelopes.
class PLF {
public:
    explicit PLF(std::vector<Breakpoint> points) : points_(std::move(points))
    {
        if (points_.size() < 2)
            throw Error("a PLF needs at least two breakpoints");
        for (std::size_t i = 1; i < points_.size(); ++i)
            if (!(points_[i - 1].x < points_[i].x))
                throw Error("PLF breakpoints must be strictly increasing, got " + to_string(points_[i - 1].x)
                            + " then " + to_string(points_[i].x));
        normalize();
    }

    static PLF constant(const Rational& lo, const Rational& hi, const Rational& c)
    {
        return PLF({{lo, c}, {hi, c}});
    }

    static PLF line(const Rational& lo, const Rational& hi, const Rational& y_lo, const Rational& y_hi)
    {
        return PLF({{lo, y_lo}, {hi, y_hi}});
    }

    static PLF identity(const Rational& lo, const Rational& hi) { return line(lo, hi, lo, hi); }

    static PLF pos_infinity(const Rational& lo, const Rational& hi)
    {
        PLF f = constant(lo, hi, 0);
        f.infinite_ = true;
        return f;
    }

    bool is_infinite() const { return infinite_; }

    const Rational& lo() const { return points_.front().x; }
    const Rational& hi() const { return points_.back().x; }
    Rational width() const { return hi() - lo(); }

    /// Breakpoints; meaningless for the +inf constant.
    const std::vector<Breakpoint>& points() const { return points_; }
    std::size_t segments() const { return points_.size() - 1; }

    Rational slope(std::size_t seg) const
    {
        const auto& a = points_[seg];
        const auto& b = points_[seg + 1];
        return Rational((b.y - a.y) / (b.x - a.x));
    }

    bool in_domain(const Rational& x) const { return lo() <= x && x <= hi(); }

    /// Finite value at x. Throws outside the domain or on the +inf constant.
    Rational value(const Rational& x) const
    {
        if (!in_domain(x))
            throw Error("evaluation point " + to_string(x) + " outside [" + to_string(lo()) + ", "
                        + to_string(hi()) + "]");
        if (infinite_)
            throw Error("finite value requested from the +inf function");
        auto it = std::lower_bound(points_.begin(), points_.end(), x,
                                   [](const Breakpoint& p, const Rational& v) { return p.x < v; });
        if (it->x == x)
            return it->y;
        const auto& b = *it;
        const auto& a = *(it - 1);
        return Rational(a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x));
    }

    ExtRational operator()(const Rational& x) const
    {
        if (infinite_) {
            if (!in_domain(x))
                throw Error("evaluation point " + to_string(x) + " outside domain");
            return ExtRational::pos_inf();
        }
        return ExtRational(value(x));
    }

    Rational max_value() const
    {
        Rational m = points_.front().y;
        for (const auto& p : points_)
            if (m < p.y)
                m = p.y;
        return m;
    }

    Rational min_value() const
    {
        Rational m = points_.front().y;
        for (const auto& p : points_)
            if (p.y < m)
                m = p.y;
        return m;
    }

    friend bool operator==(const PLF& a, const PLF& b)
    {
        if (a.infinite_ || b.infinite_)
            return a.infinite_ == b.infinite_ && a.lo() == b.lo() && a.hi() == b.hi();
        return a.points_ == b.points_;
    }

    friend std::ostream& operator<<(std::ostream& os, const PLF& f)
    {
        if (f.infinite_)
            return os << "inf on [" << to_string(f.lo()) << ", " << to_string(f.hi()) << "]";
        os << '{';
        for (std::size_t i = 0; i < f.points_.size(); ++i)
            os << (i ? "," : "") << '(' << to_string(f.points_[i].x) << ',' << to_string(f.points_[i].y) << ')';
        return os << '}';
    }

private:
    void normalize()
    {
        std::vector<Breakpoint> out;
        out.reserve(points_.size());
        for (auto& p : points_) {
            while (out.size() >= 2) {
                const auto& a = out[out.size() - 2];
                const auto& b = out.back();
                if ((b.y - a.y) * (p.x - b.x) == (p.y - b.y) * (b.x - a.x))
                    out.pop_back();
                else
                    break;
            }
            out.push_back(std::move(p));
        }
        points_ = std::move(out);
    }

    std::vector<Breakpoint> points_;
    bool infinite_ = false;
};

namespace detail {

inline void require_same_domain(const PLF& f, const PLF& g, const char* what)
{
    if (f.lo() != g.lo() || f.hi() != g.hi())
        throw Error(std::string(what) + ": domain mismatch [" + to_string(f.lo()) + ", " + to_string(f.hi())
                    + "] vs [" + to_string(g.lo()) + ", " + to_string(g.hi()) + "]");
}

/// Sorted union of the breakpoint abscissae of f and g.
inline std::vector<Rational> merged_abscissae(const PLF& f, const PLF& g)
{
    std::vector<Rational> xs;
    xs.reserve(f.points().size() + g.points().size());
    const auto& a = f.points();
    const auto& b = g.points();
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].x < b[j].x))
            xs.push_back(a[i++].x);
        else if (i == a.size() || b[j].x < a[i].x)
            xs.push_back(b[j++].x);
        else {
            xs.push_back(a[i].x);
            ++i;
            ++j;
        }
    }
    return xs;
}

/// Values of f at sorted abscissae inside its domain.
inline std::vector<Rational> sample_sorted(const PLF& f, const std::vector<Rational>& xs)
{
    std::vector<Rational> ys;
    ys.reserve(xs.size());
    const auto& pts = f.points();
    std::size_t seg = 0;
    for (const auto& x : xs) {
        while (seg + 2 < pts.size() && pts[seg + 1].x < x)
            ++seg;
        const auto& a = pts[seg];
        const auto& b = pts[seg + 1];
        if (x == a.x)
            ys.push_back(a.y);
        else if (x == b.x)
            ys.push_back(b.y);
        else
            ys.push_back(Rational(a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)));
    }
    return ys;
}

/// Pointwise min (take_min) or max of two finite PLFs, with breakpoints at
/// every strict crossing.
inline PLF lattice_op(const PLF& f, const PLF& g, bool take_min)
{
    const auto xs = merged_abscissae(f, g);
    const auto fy = sample_sorted(f, xs);
    const auto gy = sample_sorted(g, xs);
    std::vector<Breakpoint> out;
    out.reserve(xs.size() * 2);
    auto pick = [&](const Rational& a, const Rational& b) -> const Rational& {
        return take_min ? rmin(a, b) : rmax(a, b);
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out.push_back({xs[i], pick(fy[i], gy[i])});
        if (i + 1 == xs.size())
            break;
        const Rational d0 = fy[i] - gy[i];
        const Rational d1 = fy[i + 1] - gy[i + 1];
        if (sgn(d0) * sgn(d1) < 0) {
            const Rational t = d0 / (d0 - d1);
            const Rational x = xs[i] + (xs[i + 1] - xs[i]) * t;
            const Rational y = fy[i] + (fy[i + 1] - fy[i]) * t;
            out.push_back({x, y});
        }
    }
    return PLF(std::move(out));
}

template <class Op>
PLF pointwise_linear(const PLF& f, const PLF& g, Op op)
{
    const auto xs = merged_abscissae(f, g);
    const auto fy = sample_sorted(f, xs);
    const auto gy = sample_sorted(g, xs);
    std::vector<Breakpoint> out;
    out.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.push_back({xs[i], op(fy[i], gy[i])});
    return PLF(std::move(out));
}

} // namespace detail

inline PLF pw_min(const PLF& f, const PLF& g)
{
    detail::require_same_domain(f, g, "pw_min");
    if (f.is_infinite())
        return g;
    if (g.is_infinite())
        return f;
    return detail::lattice_op(f, g, true);
}

inline PLF pw_max(const PLF& f, const PLF& g)
{
    detail::require_same_domain(f, g, "pw_max");
    if (f.is_infinite())
        return f;
    if (g.is_infinite())
        return g;
    return detail::lattice_op(f, g, false);
}

inline PLF pw_add(const PLF& f, const PLF& g)
{
    detail::require_same_domain(f, g, "pw_add");
    if (f.is_infinite() || g.is_infinite())
        return PLF::pos_infinity(f.lo(), f.hi());
    return detail::pointwise_linear(f, g, [](const Rational& a, const Rational& b) { return Rational(a + b); });
}

inline PLF pw_sub(const PLF& f, const PLF& g)
{
    detail::require_same_domain(f, g, "pw_sub");
    if (f.is_infinite() || g.is_infinite())
        throw Error("pw_sub: infinite operand");
    return detail::pointwise_linear(f, g, [](const Rational& a, const Rational& b) { return Rational(a - b); });
}

inline PLF pw_scale(const Rational& c, const PLF& f)
{
    if (f.is_infinite())
        throw Error("pw_scale: infinite operand");
    std::vector<Breakpoint> pts = f.points();
    for (auto& p : pts)
        p.y *= c;
    return PLF(std::move(pts));
}

inline PLF pw_shift(const PLF& f, const Rational& c)
{
    if (f.is_infinite())
        return f;
    std::vector<Breakpoint> pts = f.points();
    for (auto& p : pts)
        p.y += c;
    return PLF(std::move(pts));
}

/// f <= g at every point of the common domain.
inline bool pw_leq(const PLF& f, const PLF& g)
{
    detail::require_same_domain(f, g, "pw_leq");
    if (g.is_infinite())
        return true;
    if (f.is_infinite())
        return false;
    const auto xs = detail::merged_abscissae(f, g);
    const auto fy = detail::sample_sorted(f, xs);
    const auto gy = detail::sample_sorted(g, xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (gy[i] < fy[i])
            return false;
    return true;
}

/// Restriction of f to [a, b], translated so the new domain is [0, b - a].
inline PLF reparam(const PLF& f, const Rational& a, const Rational& b)
{
    if (!(a < b))
        throw Error("reparam: empty interval [" + to_string(a) + ", " + to_string(b) + "]");
    if (a < f.lo() || f.hi() < b)
        throw Error("reparam: [" + to_string(a) + ", " + to_string(b) + "] not inside the domain");
    if (f.is_infinite())
        return PLF::pos_infinity(0, Rational(b - a));
    std::vector<Breakpoint> pts;
    pts.push_back({0, f.value(a)});
    for (const auto& p : f.points())
        if (a < p.x && p.x < b)
            pts.push_back({Rational(p.x - a), p.y});
    pts.push_back({Rational(b - a), f.value(b)});
    return PLF(std::move(pts));
}

/// Same function with the abscissa shifted by `by` (domain moves too).
inline PLF translate(const PLF& f, const Rational& by)
{
    if (f.is_infinite())
        return PLF::pos_infinity(Rational(f.lo() + by), Rational(f.hi() + by));
    std::vector<Breakpoint> pts = f.points();
    for (auto& p : pts)
        p.x += by;
    return PLF(std::move(pts));
}

/// Minimum of f over the closed interval [a, b] inside its domain.
inline Rational min_on(const PLF& f, const Rational& a, const Rational& b)
{
    Rational m = rmin(f.value(a), f.value(b));
    for (const auto& p : f.points())
        if (a < p.x && p.x < b && p.y < m)
            m = p.y;
    return m;
}

inline Rational max_on(const PLF& f, const Rational& a, const Rational& b)
{
    Rational m = rmax(f.value(a), f.value(b));
    for (const auto& p : f.points())
        if (a < p.x && p.x < b && m < p.y)
            m = p.y;
    return m;
}

/// One closed linear piece of a possibly discontinuous bound: the value runs
/// linearly from y0 at x0 to y1 at x1 (x0 == x1 is an isolated point).
struct Segment {
    Rational x0, x1, y0, y1;
};

namespace detail {

/// Largest L-Lipschitz function on [lo, hi] below one closed linear piece.
inline PLF piece_envelope(const Segment& s, const Rational& L, const Rational& lo, const Rational& hi)
{
    // The infimum of c(y) + L|x - y| over a linear piece is attained at an end
    // of the piece or at y = x; which one depends only on the slope.
    bool cone_left = false, cone_right = false;
    if (s.x0 == s.x1) {
        cone_left = true;
    } else {
        const Rational slope = (s.y1 - s.y0) / (s.x1 - s.x0);
        if (L < slope)
            cone_left = true;
        else if (slope < -L)
            cone_right = true;
    }
    auto value = [&](const Rational& x) -> Rational {
        if (cone_left)
            return Rational(s.y0 + L * rabs(Rational(x - s.x0)));
        if (cone_right)
            return Rational(s.y1 + L * rabs(Rational(x - s.x1)));
        if (x <= s.x0)
            return Rational(s.y0 + L * (s.x0 - x));
        if (s.x1 <= x)
            return Rational(s.y1 + L * (x - s.x1));
        return Rational(s.y0 + (s.y1 - s.y0) * (x - s.x0) / (s.x1 - s.x0));
    };
    std::vector<Rational> xs{lo};
    for (const Rational* k : {&s.x0, &s.x1})
        if (lo < *k && *k < hi)
            xs.push_back(*k);
    xs.push_back(hi);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Breakpoint> pts;
    for (const auto& x : xs)
        pts.push_back({x, value(x)});
    return PLF(std::move(pts));
}

} // namespace detail

/// Pointwise-largest L-Lipschitz function on [lo, hi] lying below every piece
/// (the infimal convolution of the bound with L|x|). With no pieces the bound
/// is vacuous and the result is the +inf constant.
inline PLF lipschitz_envelope(std::span<const Segment> pieces, const Rational& L, const Rational& lo,
                              const Rational& hi)
{
    if (!(0 < L))
        throw Error("lipschitz_envelope: L must be positive");
    PLF result = PLF::pos_infinity(lo, hi);
    for (const auto& s : pieces) {
        if (s.x1 < s.x0)
            throw Error("lipschitz_envelope: reversed piece");
        result = pw_min(result, detail::piece_envelope(s, L, lo, hi));
    }
    return result;
}

/// Envelope of a continuous PLF viewed as a bound.
inline PLF lipschitz_envelope(const PLF& c, const Rational& L)
{
    if (c.is_infinite())
        return c;
    std::vector<Segment> pieces;
    const auto& p = c.points();
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        pieces.push_back({p[i].x, p[i + 1].x, p[i].y, p[i + 1].y});
    return lipschitz_envelope(pieces, L, c.lo(), c.hi());
}

/// A finite union of disjoint closed intervals (possibly degenerate) inside
/// a domain interval. Overlapping or touching components are merged.
class ClosedSet1D {
public:
    using Component = std::pair<Rational, Rational>;

    ClosedSet1D(Rational lo, Rational hi, std::vector<Component> comps = {})
        : lo_(std::move(lo)), hi_(std::move(hi))
    {
        if (!(lo_ < hi_))
            throw Error("ClosedSet1D: empty domain");
        for (auto& [a, b] : comps) {
            if (b < a)
                throw Error("ClosedSet1D: reversed component");
            if (a < lo_ || hi_ < b)
                throw Error("ClosedSet1D: component outside the domain");
        }
        std::sort(comps.begin(), comps.end());
        for (auto& c : comps) {
            if (!comps_.empty() && c.first <= comps_.back().second) {
                if (comps_.back().second < c.second)
                    comps_.back().second = c.second;
            } else {
                comps_.push_back(std::move(c));
            }
        }
    }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    const std::vector<Component>& components() const { return comps_; }
    bool empty() const { return comps_.empty(); }

    bool contains(const Rational& x) const
    {
        for (const auto& [a, b] : comps_)
            if (a <= x && x <= b)
                return true;
        return false;
    }

    Rational distance(const Rational& x) const
    {
        if (comps_.empty())
            throw Error("distance to an empty set");
        Rational best = -1;
        for (const auto& [a, b] : comps_) {
            Rational d = x < a ? Rational(a - x) : (b < x ? Rational(x - b) : Rational(0));
            if (best < 0 || d < best)
                best = d;
        }
        return best;
    }

    friend bool operator==(const ClosedSet1D&, const ClosedSet1D&) = default;

private:
    Rational lo_, hi_;
    std::vector<Component> comps_;
};

/// {x : f(x) = 0} for a non-negative PLF.
inline ClosedSet1D zero_set(const PLF& f)
{
    if (f.is_infinite())
        return ClosedSet1D(f.lo(), f.hi());
    const auto& p = f.points();
    for (const auto& b : p)
        if (b.y < 0)
            throw Error("zero_set: function takes the negative value " + to_string(b.y) + " at "
                        + to_string(b.x));
    std::vector<ClosedSet1D::Component> comps;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].y != 0)
            continue;
        if (i + 1 < p.size() && p[i + 1].y == 0)
            comps.emplace_back(p[i].x, p[i + 1].x);
        else
            comps.emplace_back(p[i].x, p[i].x);
    }
    return ClosedSet1D(f.lo(), f.hi(), std::move(comps));
}

/// x -> distance from x to S, on S's domain; the +inf constant if S is empty.
inline PLF dist_to(const ClosedSet1D& s)
{
    if (s.empty())
        return PLF::pos_infinity(s.lo(), s.hi());
    std::vector<Rational> xs{s.lo(), s.hi()};
    const auto& c = s.components();
    for (std::size_t i = 0; i < c.size(); ++i) {
        xs.push_back(c[i].first);
        xs.push_back(c[i].second);
        if (i + 1 < c.size())
            xs.push_back(Rational((c[i].second + c[i + 1].first) / 2));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Breakpoint> pts;
    for (const auto& x : xs)
        pts.push_back({x, s.distance(x)});
    return PLF(std::move(pts));
}

} // namespace ttsem
