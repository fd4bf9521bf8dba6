#pragma once

// Lower/upper derivatives of piecewise-linear sections and the derivative
// approximation relation.

#include "ttsem/numerics.hpp"

#include <vector>

namespace ttsem {

/// Piecewise-constant derivative bounds. xs are the breakpoints (window ends
/// included); segment i is the open interval (xs[i], xs[i+1]); point k is
/// the interior breakpoint xs[k], 0 < k < xs.size() - 1.
struct DerivativeBounds {
    std::vector<Rational> xs;
    std::vector<ExtRational> seg_lo, seg_hi;
    std::vector<ExtRational> pt_lo, pt_hi; // indexed like xs; ends unused

    ExtRational lo_at(const Rational& x) const { return at(x, seg_lo, pt_lo); }
    ExtRational hi_at(const Rational& x) const { return at(x, seg_hi, pt_hi); }

    /// Index of the segment containing x, or -(k+1) for breakpoint k.
    long locate(const Rational& x) const
    {
        if (!(xs.front() < x && x < xs.back()))
            throw Error("derivative bounds: " + to_string(x) + " outside the open window");
        for (std::size_t k = 1; k < xs.size(); ++k) {
            if (x < xs[k])
                return static_cast<long>(k - 1);
            if (x == xs[k])
                return -static_cast<long>(k) - 1;
        }
        throw Error("derivative bounds: unreachable");
    }

private:
    ExtRational at(const Rational& x, const std::vector<ExtRational>& seg,
                   const std::vector<ExtRational>& pt) const
    {
        const long i = locate(x);
        return i >= 0 ? seg[i] : pt[-i - 1];
    }
};

/// Exact bounds: slopes where lo and hi coincide, +-inf where they differ.
inline DerivativeBounds derivative_bounds(const IntervalSection& s)
{
    DerivativeBounds b;
    b.xs = detail::merged_abscissae(s.lo(), s.hi());
    const auto lo = detail::sample_sorted(s.lo(), b.xs);
    const auto hi = detail::sample_sorted(s.hi(), b.xs);
    const std::size_t n = b.xs.size() - 1;
    std::vector<bool> tight(n);
    std::vector<Rational> slope(n);
    for (std::size_t i = 0; i < n; ++i) {
        tight[i] = lo[i] == hi[i] && lo[i + 1] == hi[i + 1];
        slope[i] = (lo[i + 1] - lo[i]) / (b.xs[i + 1] - b.xs[i]);
        b.seg_lo.push_back(tight[i] ? ExtRational(slope[i]) : ExtRational::neg_inf());
        b.seg_hi.push_back(tight[i] ? ExtRational(slope[i]) : ExtRational::pos_inf());
    }
    b.pt_lo.assign(b.xs.size(), ExtRational::neg_inf());
    b.pt_hi.assign(b.xs.size(), ExtRational::pos_inf());
    for (std::size_t k = 1; k < n; ++k) {
        if (tight[k - 1] && tight[k]) {
            b.pt_lo[k] = rmin(slope[k - 1], slope[k]);
            b.pt_hi[k] = rmax(slope[k - 1], slope[k]);
        }
    }
    return b;
}

/// The derivative bounds viewed as a (semicontinuous) section: used as the
/// candidate y of ad_check.
inline bool ad_check(const DerivativeBounds& y, const IntervalSection& x)
{
    const DerivativeBounds dx = derivative_bounds(x);
    std::vector<Rational> xs = y.xs;
    xs.insert(xs.end(), dx.xs.begin(), dx.xs.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    auto ok = [&](const Rational& r) { return y.lo_at(r) <= dx.lo_at(r) && dx.hi_at(r) <= y.hi_at(r); };
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (!ok(Rational((xs[i] + xs[i + 1]) / 2)))
            return false;
        if (i > 0 && !ok(xs[i]))
            return false;
    }
    return true;
}

/// y approximates the derivative of x: lo_y <= lo'_x and hi'_x <= hi_y on
/// the open window.
inline bool ad_check(const IntervalSection& y, const IntervalSection& x)
{
    detail::require_same_clock(y.clock(), x.clock(), "ad_check");
    const DerivativeBounds dx = derivative_bounds(x);
    std::vector<Rational> xs = detail::merged_abscissae(y.lo(), y.hi());
    xs.insert(xs.end(), dx.xs.begin(), dx.xs.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    // y is continuous and linear between consecutive xs, dx constant on each
    // open gap: checking gap endpoints against the gap value suffices.
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rational mid = (xs[i] + xs[i + 1]) / 2;
        const ExtRational lo = dx.lo_at(mid);
        const ExtRational hi = dx.hi_at(mid);
        for (const Rational* e : {&xs[i], &xs[i + 1]})
            if (!(ExtRational(y.lo().value(*e)) <= lo && hi <= ExtRational(y.hi().value(*e))))
                return false;
        if (i > 0) {
            const Rational& r = xs[i];
            if (!(ExtRational(y.lo().value(r)) <= dx.lo_at(r) && dx.hi_at(r) <= ExtRational(y.hi().value(r))))
                return false;
        }
    }
    return true;
}

/// inf lo' over [a, b] <= (lo(b) - hi(a)) / (b - a) and
/// sup hi' over [a, b] >= (hi(b) - lo(a)) / (b - a).
inline bool mean_value_check(const IntervalSection& s, const Rational& a, const Rational& b)
{
    if (!(0 < a && a < b && b < s.clock().length()))
        throw Error("mean_value_check: need 0 < a < b < l");
    const DerivativeBounds d = derivative_bounds(s);
    ExtRational inf_lo = ExtRational::pos_inf();
    ExtRational sup_hi = ExtRational::neg_inf();
    auto visit = [&](const Rational& r) {
        inf_lo = emin(inf_lo, d.lo_at(r));
        sup_hi = emax(sup_hi, d.hi_at(r));
    };
    std::vector<Rational> xs{a, b};
    for (const auto& x : d.xs)
        if (a < x && x < b)
            xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        visit(xs[i]);
        if (i + 1 < xs.size())
            visit(Rational((xs[i] + xs[i + 1]) / 2));
    }
    const Rational lower = (s.lo().value(b) - s.hi().value(a)) / (b - a);
    const Rational upper = (s.hi().value(b) - s.lo().value(a)) / (b - a);
    return inf_lo <= ExtRational(lower) && ExtRational(upper) <= sup_hi;
}

/// sup over the product's segments of |d(xy) - (x y' + x' y)|, evaluated at
/// both ends of each segment of the refined product.
inline Rational leibniz_residual(const VariableReal& x, const VariableReal& y, unsigned refinement)
{
    const VariableReal p = vr_mul(x, y, refinement);
    const DerivativeBounds dp = derivative_bounds(p);
    const DerivativeBounds dx = derivative_bounds(x);
    const DerivativeBounds dy = derivative_bounds(y);
    Rational worst = 0;
    const auto& xs = dp.xs;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rational mid = (xs[i] + xs[i + 1]) / 2;
        const Rational sp = dp.lo_at(mid).value();
        const Rational sx = dx.lo_at(mid).value();
        const Rational sy = dy.lo_at(mid).value();
        for (const Rational* e : {&xs[i], &xs[i + 1]}) {
            const Rational r = rabs(Rational(sp - (x.g().value(*e) * sy + sx * y.g().value(*e))));
            if (worst < r)
                worst = r;
        }
    }
    return worst;
}

/// The open of g' = c: interval points strictly inside runs of slope c.
inline DyckPath deriv_eq_open(const VariableReal& g, const Rational& c)
{
    const auto& p = g.g().points();
    std::vector<ClosedSet1D::Component> off;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (g.g().slope(i) != c)
            off.emplace_back(p[i].x, p[i + 1].x);
    const Window w = g.window();
    return DyckPath(w, pw_min(tent(w), dist_to(ClosedSet1D(0, w.length(), std::move(off)))));
}

} // namespace ttsem
