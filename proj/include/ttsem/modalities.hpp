#pragma once

// Clock atoms and the four temporal modalities as operators on Dyck paths.
//
// All clock parameters are global readings; the window-local coordinate of
// a reading q is q - d_t.

#include "ttsem/omega.hpp"

namespace ttsem {

namespace detail {

/// max(0, min(tent(x), x - a)) on [0, l].
inline PLF ramp_up(const Window& w, const Rational& a)
{
    const Rational& l = w.length();
    const PLF rising = PLF::line(0, l, Rational(-a), Rational(l - a));
    return pw_max(PLF::constant(0, l, 0), pw_min(tent(w), rising));
}

/// max(0, min(tent(x), b - x)) on [0, l].
inline PLF ramp_down(const Window& w, const Rational& b)
{
    const Rational& l = w.length();
    const PLF falling = PLF::line(0, l, b, Rational(b - l));
    return pw_max(PLF::constant(0, l, 0), pw_min(tent(w), falling));
}

} // namespace detail

/// The open of t < q: subwindows whose clock ends at or before q.
inline DyckPath atom_lt(const Rational& q, const Clock& clock)
{
    return DyckPath(clock.window(), detail::ramp_down(clock.window(), clock.local(q)));
}

/// The open of q < t: subwindows whose clock starts at or after q.
inline DyckPath atom_gt(const Rational& q, const Clock& clock)
{
    return DyckPath(clock.window(), detail::ramp_up(clock.window(), clock.local(q)));
}

/// Apartness t # [a, b], i.e. (t < a) or (b < t).
inline DyckPath apart(const Rational& a, const Rational& b, const Clock& clock)
{
    return or_(atom_lt(a, clock), atom_gt(b, clock));
}

/// The open of d < t < u.
inline DyckPath between(const Rational& d, const Rational& u, const Clock& clock)
{
    return and_(atom_gt(d, clock), atom_lt(u, clock));
}

/// See[d, u] P = t # [u, d] or P.
inline DyckPath see(const Rational& d, const Rational& u, const Clock& clock, const DyckPath& p)
{
    return or_(apart(u, d, clock), p);
}

/// In[d, u] P = (d < t < u) => P.
inline DyckPath in_(const Rational& d, const Rational& u, const Clock& clock, const DyckPath& p)
{
    return implies(between(d, u, clock), p);
}

/// At[d, u] P = (P => t # [u, d]) => t # [u, d], by double implication.
inline DyckPath at_(const Rational& d, const Rational& u, const Clock& clock, const DyckPath& p)
{
    const DyckPath a = apart(u, d, clock);
    return implies(implies(p, a), a);
}

/// At[d, u] P for d <= u by the pointwise decision rule: everything when
/// [d, u] is not strictly inside the window or already lies in P, and the
/// apartness open otherwise.
inline DyckPath at_fast(const Rational& d, const Rational& u, const Clock& clock, const DyckPath& p)
{
    if (u < d)
        throw Error("at_fast: needs d <= u");
    const Rational dl = clock.local(d);
    const Rational ul = clock.local(u);
    const bool inside = 0 < dl && ul < clock.length();
    if (!inside || p.contains(IntervalPoint(dl, ul)))
        return top(clock.window());
    return apart(u, d, clock);
}

/// pi P: the largest path with the same zeros as P.
inline DyckPath pi(const DyckPath& p)
{
    return DyckPath(p.window(), pw_min(tent(p.window()), dist_to(zero_set(p.path()))));
}

} // namespace ttsem
