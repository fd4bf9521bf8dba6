#pragma once

// Property checks behind the acceptance criteria. Each returns an empty
// string on success or a description of the first counterexample; the
// sample count is a parameter so unit tests can run them small.

#include "support.hpp"

#include <sstream>
#include <string>

namespace ttsem::testing {

template <class... T>
std::string fail(const T&... parts)
{
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

inline Clock random_clock(Rng& rng)
{
    const Rational d = rand_rational(rng, -3, 3, 2);
    return Clock(d, Rational(d + rand_int(rng, 4, 12)));
}

/// A modality parameter around the window, order unconstrained.
inline Rational random_param(Rng& rng, const Clock& c)
{
    return rand_rational(rng, -1, 1, 8) * 2 + c.d_t() + rand_rational(rng, 0, 1, 8) * c.length();
}

// --- 1. Lipschitz / Dyck bijection -----------------------------------------

inline std::string check_bijection(Rng& rng, int n)
{
    for (int i = 0; i < n; ++i) {
        const DyckPath d = random_dyck(rng, rand_int(rng, 1, 16), rand_int(rng, 2, 10));
        const ConeUnion u = ConeUnion::of(d);
        if (u.boundary() != d)
            return fail("boundary of the generated open differs from ", d);
        for (int k = 0; k < 8; ++k) {
            const HalfPlanePoint p(rand_rational(rng, 0, 1, 64) * d.length(),
                                   rand_rational(rng, 0, 1, 64) * d.length() / 2);
            if (u.contains(p) != d.contains(p))
                return fail("membership of (", p.m, ",", p.r, ") disagrees for ", d);
        }
    }
    return {};
}

// --- 2. Heyting algebra ----------------------------------------------------

inline std::string check_heyting(Rng& rng, int n)
{
    for (int i = 0; i < n; ++i) {
        const Rational l = rand_int(rng, 2, 12);
        const DyckPath r = random_dyck(rng, l), p = random_dyck(rng, l), q = random_dyck(rng, l);
        const DyckPath imp = implies(p, q);
        if (leq(r, imp) != leq(and_(r, p), q))
            return fail("adjunction fails for R=", r, " P=", p, " Q=", q);
        if (!leq(and_(imp, p), q))
            return fail("modus ponens fails for P=", p, " Q=", q);
        // Largest solution: anything strictly above imp breaks the bound.
        const DyckPath above = or_(imp, r);
        if (above != imp && leq(and_(above, p), q))
            return fail("implication is not the largest solution for P=", p, " Q=", q);
    }
    return {};
}

// --- 3. Modality laws ------------------------------------------------------

using Modality = std::function<DyckPath(const DyckPath&)>;

inline std::string modality_laws(const char* name, const Modality& j, const DyckPath& p, const DyckPath& q)
{
    const DyckPath jp = j(p);
    if (!leq(p, jp))
        return fail(name, ": unit fails for ", p);
    if (j(jp) != jp)
        return fail(name, ": not idempotent on ", p);
    if (j(and_(p, q)) != and_(jp, j(q)))
        return fail(name, ": does not preserve meets on ", p, " and ", q);
    return {};
}

inline std::string check_modalities(Rng& rng, int n)
{
    for (int i = 0; i < n; ++i) {
        const Clock c = random_clock(rng);
        const Rational l = c.length();
        const DyckPath p = random_dyck(rng, l), q = random_dyck(rng, l);
        Rational d = random_param(rng, c), u = random_param(rng, c);
        const Rational d2 = random_param(rng, c), u2 = random_param(rng, c);
        auto see_j = [&](const Rational& a, const Rational& b) {
            return [&, a, b](const DyckPath& x) { return see(a, b, c, x); };
        };
        auto in_j = [&](const Rational& a, const Rational& b) {
            return [&, a, b](const DyckPath& x) { return in_(a, b, c, x); };
        };
        auto at_j = [&](const Rational& a, const Rational& b) {
            return [&, a, b](const DyckPath& x) { return at_(a, b, c, x); };
        };
        for (auto msg : {modality_laws("see", see_j(d, u), p, q), modality_laws("in", in_j(d, u), p, q),
                         modality_laws("at", at_j(d, u), p, q),
                         modality_laws("pi", [](const DyckPath& x) { return pi(x); }, p, q)})
            if (!msg.empty())
                return fail(msg, " (d=", d, ", u=", u, ", clock ", c.d_t(), "..", c.u_t(), ")");

        if (see(d, u, c, or_(p, q)) != or_(see(d, u, c, p), see(d, u, c, q)))
            return fail("see does not commute with joins");
        if (in_(d, u, c, or_(p, q)) != or_(in_(d, u, c, p), in_(d, u, c, q)))
            return fail("in does not commute with joins");
        if (see(d, u, c, see(d2, u2, c, p)) != see(rmin(d, d2), rmax(u, u2), c, p))
            return fail("see composition fails");
        if (in_(d, u, c, in_(d2, u2, c, p)) != in_(rmax(d, d2), rmin(u, u2), c, p))
            return fail("in composition fails");
        const DyckPath a = apart(u, d, c);
        const DyckPath bot = bottom(c.window());
        if (see(d, u, c, bot) != a || at_(d, u, c, bot) != a)
            return fail("See/At of bottom is not the apartness open");

        if (u < d)
            std::swap(d, u);
        if (at_(d, u, c, or_(p, q)) != or_(at_(d, u, c, p), at_(d, u, c, q)))
            return fail("at does not commute with joins for d <= u");
        if (at_fast(d, u, c, p) != at_(d, u, c, p))
            return fail("at fast path differs from double implication, d=", d, " u=", u, " P=", p);
        // Nested At: d1 <= d2 <= u2 <= u1.
        const Rational di = d + (u - d) * rand_rational(rng, 0, 1, 8) / 2;
        const Rational ui = u - (u - d) * rand_rational(rng, 0, 1, 8) / 2;
        const DyckPath inner = at_(di, ui, c, p);
        if (at_(d, u, c, inner) != see(d, u, c, inner))
            return fail("At[d1,u1] At[d2,u2] differs from See[d1,u1] At[d2,u2]");

        const Rational t = random_param(rng, c);
        if (pi(atom_lt(t, c)) != atom_lt(t, c) || pi(atom_gt(t, c)) != atom_gt(t, c))
            return fail("time atoms are not pi-closed at ", t);
    }
    return {};
}

// --- 4. Axiom instances ----------------------------------------------------

/// Pointwise infimum of At[d, u] P over grid pairs d <= u of step h.
inline DyckPath at_infimum(const DyckPath& p, const Clock& c, int steps)
{
    PLF inf = tent(c.window());
    const Rational h = c.length() / steps;
    for (int i = 0; i <= steps; ++i)
        for (int k = i; k <= steps; ++k)
            inf = pw_min(inf, at_fast(c.global(h * i), c.global(h * k), c, p).path());
    return DyckPath(c.window(), inf);
}

inline std::string check_axioms(Rng& rng, int n)
{
    int covering_premises = 0;
    for (int i = 0; i < n; ++i) {
        const Clock c = random_clock(rng);
        const DyckPath p = random_dyck(rng, c.length()), q = random_dyck(rng, c.length());
        const Rational t = random_param(rng, c);
        const DyckPath lt = atom_lt(t, c);
        if (implies(lt, or_(p, q)) != or_(implies(lt, p), implies(lt, q)))
            return fail("coprime instance fails at q=", t);

        Rational d = random_param(rng, c), u = random_param(rng, c);
        if (u < d)
            std::swap(d, u);
        const DyckPath a = apart(u, d, c);
        if (implies(and_(p, q), a) != or_(implies(p, a), implies(q, a)))
            return fail("prime instance fails at [", d, ",", u, "]");

        if (i % 3 == 0) {
            const int steps = 16;
            const Rational h = c.length() / steps;
            const DyckPath inf = at_infimum(p, c, steps);
            if (!leq(p, inf) || !pw_leq(inf.path(), pw_shift(p.path(), 2 * h)))
                return fail("enough points: grid infimum not within 2h of ", p);
        }

        // Covering-pi: premise on a grid finer than the generator's features.
        for (const DyckPath& cand : {p, pi(p)}) {
            bool premise = true;
            const int g = 16;
            for (int x = 0; x <= g && premise; ++x)
                for (int y = x + 1; y <= g && premise; ++y)
                    premise = implies(apart(c.global(c.length() * y / g), c.global(c.length() * x / g), c), cand)
                        == cand;
            if (premise) {
                ++covering_premises;
                if (!leq(pi(cand), cand))
                    return fail("covering-pi fails for ", cand);
            }
        }
    }
    if (covering_premises == 0)
        return "covering-pi premise never satisfied";
    return {};
}

// --- 5. Kaucher arithmetic -------------------------------------------------

inline KInterval ki(const Rational& d, const Rational& u)
{
    return {d, u};
}

inline std::string check_kaucher(Rng& rng, int n_sub, int n_mul, std::size_t approx_samples)
{
    // Multiplication does not preserve meets.
    if (k_meet(ki(-1, -1), ki(1, 1)) != ki(-1, 1) || k_mul(ki(-1, 1), ki(1, -1)) != ki(0, 0))
        return "([-1,-1] meet [1,1]) * [1,-1] != [0,0]";
    if (k_mul(ki(-1, -1), ki(1, -1)) != ki(1, -1) || k_mul(ki(1, 1), ki(1, -1)) != ki(1, -1)
        || k_meet(ki(1, -1), ki(1, -1)) != ki(1, -1))
        return "([-1,-1]*[1,-1]) meet ([1,1]*[1,-1]) != [1,-1]";
    if (k_mul(ki(0, 1), k_add(ki(1, 1), ki(-1, -1))) != ki(0, 0))
        return "[0,1]*([1,1]+[-1,-1]) != [0,0]";
    if (k_add(k_mul(ki(0, 1), ki(1, 1)), k_mul(ki(0, 1), ki(-1, -1))) != ki(-1, 1))
        return "[0,1]*[1,1] + [0,1]*[-1,-1] != [-1,1]";
    if (k_sub(ki(1, 2), ki(0, 1)) != ki(0, 2))
        return "[1,2]-[0,1] != [0,2]";
    if (k_recip(ki(2, 4)) != ki(make_rational(1, 4), make_rational(1, 2)))
        return "1/[2,4] != [1/4,1/2]";

    auto r = [&] { return rand_rational(rng, -10, 10); };
    for (int i = 0; i < n_sub; ++i) {
        const Rational d1 = r(), u1 = r(), d2 = r(), u2 = r();
        if (k_sub(ki(d1, u1), ki(d2, u2)) != ki(Rational(d1 - u2), Rational(u1 - d2)))
            return "subtraction formula";
        const KInterval a = ki(d1, u1), b = ki(d2, u2), c = ki(r(), r());
        if (k_add(a, b) != k_add(b, a) || k_add(a, k_add(b, c)) != k_add(k_add(a, b), c)
            || k_add(a, ki(0, 0)) != a)
            return "addition is not a commutative monoid";
        if (k_sub(k_add(ki(d1, d1), ki(d2, d2)), ki(d2, d2)) != ki(d1, d1))
            return "subtraction does not invert addition on reals";
    }
    for (int i = 0; i < n_mul; ++i) {
        Rational d1 = r(), u1 = r(), d2 = r(), u2 = r();
        if (u1 < d1)
            std::swap(d1, u1);
        if (u2 < d2)
            std::swap(d2, u2);
        const Rational p[] = {d1 * d2, d1 * u2, u1 * d2, u1 * u2};
        const Rational lo = *std::min_element(std::begin(p), std::end(p));
        const Rational hi = *std::max_element(std::begin(p), std::end(p));
        if (k_mul(ki(d1, u1), ki(d2, u2)) != ki(lo, hi))
            return fail("proper product [", d1, ",", u1, "]*[", d2, ",", u2, "] differs from the classical one");
        if (0 < d1) {
            const KInterval x = ki(d1, d1);
            if (k_mul(x, k_recip(x)) != ki(1, 1))
                return "x * 1/x != 1 on a positive real";
            const KInterval prod = k_mul(ki(d1, u1), k_recip(ki(d1, u1)));
            if (!(prod.d <= ExtRational(1) && ExtRational(1) <= prod.u))
                return "x * 1/x does not contain 1";
        }
    }
    const ApproxReport mul = approx_map_check(k_mul, approx_samples, 7);
    if (!mul.ok())
        return "k_mul: " + mul.counterexample;
    const ApproxReport add = approx_map_check(k_add, approx_samples, 8);
    if (!add.ok())
        return "k_add: " + add.counterexample;
    return {};
}

/// Kaucher product with the negative part dropped from d2- in d': u1+ d2
/// grows with d2, so d' shrinks as the argument sharpens.
inline KInterval broken_k_mul(const KInterval& a, const KInterval& b)
{
    const auto pos = [](const ExtRational& x) { return emax(x, ExtRational(0)); };
    const auto neg = [](const ExtRational& x) { return emax(-x, ExtRational(0)); };
    return {emax(pos(a.d) * pos(b.d), neg(a.u) * neg(b.u)) - emax(pos(a.u) * b.d, pos(b.u) * neg(a.d)),
            emax(pos(a.u) * pos(b.u), neg(a.d) * neg(b.d)) - emax(pos(a.d) * neg(b.u), pos(b.d) * neg(a.u))};
}

// --- 6. Calculus -----------------------------------------------------------

inline std::string check_calculus(Rng& rng, int n_fd, int n_mv, int n_ad)
{
    const Clock c(0, 10);
    const Rational h(1, 1024);
    for (int i = 0; i < n_fd; ++i) {
        const VariableReal g(c, random_plf(rng, 10, 6, -5, 5));
        const auto& pts = g.g().points();
        const std::size_t s = rand_int(rng, 0, static_cast<int>(pts.size()) - 2);
        const Rational x = pts[s].x + (pts[s + 1].x - pts[s].x) * rand_rational(rng, 1, 7, 16) / 8;
        const Rational fd = (g.g().value(x + h) - g.g().value(x - h)) / (2 * h);
        const DerivativeBounds b = derivative_bounds(g);
        if (b.lo_at(x) != ExtRational(fd) || b.hi_at(x) != ExtRational(fd))
            return fail("derivative bounds differ from the difference quotient at ", x);
    }
    for (int i = 0; i < n_mv; ++i) {
        const PLF lo = random_plf(rng, 10, 5, -5, 5);
        const PLF hi = coin(rng) ? lo : pw_add(lo, random_plf(rng, 10, 4, 0, 2));
        const IntervalSection s(c, lo, hi);
        Rational a = rand_rational(rng, 0, 10, 16), b = rand_rational(rng, 0, 10, 16);
        if (b < a)
            std::swap(a, b);
        if (a == b || a == 0 || b == 10)
            continue;
        if (!mean_value_check(s, a, b))
            return fail("mean-value inequality fails on [", a, ",", b, "]");
        // Proper in, proper out.
        const DerivativeBounds d = derivative_bounds(s);
        for (std::size_t k = 0; k < d.seg_lo.size(); ++k)
            if (d.seg_hi[k] < d.seg_lo[k])
                return "derivative bounds of a proper section are improper";
    }
    for (int i = 0; i < n_ad; ++i) {
        const VariableReal g(c, random_plf(rng, 10, 6, -5, 5));
        if (!ad_check(derivative_bounds(g), g))
            return "derivative bounds do not approximate the derivative";
        // Widening a good approximant keeps it good.
        const VariableReal slope1(c, PLF::line(0, 10, rand_rational(rng, -3, 3), 0));
        const Rational s = slope1.g().slope(0);
        const IntervalSection y(c, PLF::constant(0, 10, s), PLF::constant(0, 10, s));
        const IntervalSection wider(c, PLF::constant(0, 10, s - 1), PLF::constant(0, 10, s + 1));
        if (!ad_check(y, slope1) || !ad_check(wider, slope1))
            return "constant slope approximant rejected";
    }
    const VariableReal t(c, PLF::identity(0, 10));
    const DerivativeBounds dt = derivative_bounds(t);
    for (int k = 1; k < 10; ++k)
        if (dt.lo_at(make_rational(k, 1)) != ExtRational(1) || dt.hi_at(make_rational(2 * k + 1, 2)) != ExtRational(1))
            return "derivative of t is not 1";
    Rational prev = -1;
    for (unsigned refinement = 1; refinement <= 64; refinement *= 2) {
        const Rational r = leibniz_residual(t, t, refinement);
        if (make_rational(10, refinement) < r)
            return fail("Leibniz residual ", r, " above the mesh bound at refinement ", refinement);
        if (0 <= prev && prev / 2 < r)
            return fail("Leibniz residual does not halve at refinement ", refinement);
        prev = r;
    }
    if (leibniz_residual(t, VariableReal::constant(c, 3), 4) != 0)
        return "Leibniz residual of t * const is not zero";
    return {};
}

// --- 7. Delay --------------------------------------------------------------

/// Pointwise-shift oracle for reals: both sides are linear between the
/// merged breakpoints, so comparing there is exact.
inline bool shift_oracle_reals(const PLF& f, const PLF& fp, const Rational& d)
{
    const Rational& l = f.hi();
    if (l <= d)
        return true;
    std::vector<Rational> xs{0, Rational(l - d)};
    for (const auto& p : f.points())
        if (p.x < l - d)
            xs.push_back(p.x);
    for (const auto& p : fp.points())
        if (d < p.x)
            xs.push_back(p.x - d);
    for (const auto& x : xs)
        if (eval_raw(f.points(), x) != eval_raw(fp.points(), Rational(x + d)))
            return false;
    return true;
}

/// Pointwise-shift oracle for walks: same transitions on (0, l - D) and the
/// same vertex between them.
inline bool shift_oracle_walks(const Walk& t, const Walk& p, const Rational& d)
{
    const Rational& l = t.length();
    if (l <= d)
        return true;
    std::vector<Rational> xs{0, Rational(l - d)};
    for (const auto& x : t.times())
        if (x < l - d)
            xs.push_back(x);
    for (const auto& x : p.times())
        if (d < x)
            xs.push_back(x - d);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    auto edge_at = [](const Walk& w, const Rational& x) -> std::string {
        for (std::size_t i = 0; i < w.transitions(); ++i)
            if (w.times()[i] == x)
                return w.edges()[i];
        return {};
    };
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rational mid = (xs[i] + xs[i + 1]) / 2;
        if (vertex_at(t, mid) != vertex_at(p, Rational(mid + d)))
            return false;
        if (i > 0 && edge_at(t, xs[i]) != edge_at(p, Rational(xs[i] + d)))
            return false;
    }
    return true;
}

/// f' = f shifted right by D with an arbitrary prefix, sometimes perturbed.
inline PLF shifted_plf(Rng& rng, const PLF& f, const Rational& d, bool perturb)
{
    const Rational& l = f.hi();
    std::vector<Breakpoint> pts{{0, 0 < d ? rand_rational(rng, -3, 3) : f.value(0)}};
    if (0 < d)
        pts.push_back({d, f.value(0)});
    for (const auto& p : f.points())
        if (0 < p.x && p.x + d < l)
            pts.push_back({p.x + d, p.y});
    pts.push_back({l, f.value(Rational(l - d))});
    if (perturb && pts.size() > 2) {
        auto& victim = pts[rand_int(rng, 1, static_cast<int>(pts.size()) - 1)];
        victim.y += rand_rational(rng, 1, 2);
    }
    return PLF(std::move(pts));
}

inline Walk shifted_walk(Rng& rng, const Walk& t, const Rational& d, bool perturb)
{
    const Rational& l = t.length();
    std::vector<Rational> ts;
    std::vector<std::string> vs;
    std::vector<std::string> es;
    // Vertex held before D is arbitrary; a transition at D itself reaches
    // T's first vertex.
    const std::string& first = t.vertices().front();
    const std::string other = first == "level" ? "climb" : "level";
    if (0 < d && coin(rng)) {
        vs = {other, first};
        es = {first == "level" ? "level!" : "climb!"};
        ts = {d};
    } else {
        vs = {first};
    }
    for (std::size_t i = 0; i < t.transitions(); ++i) {
        Rational x = t.times()[i] + d;
        if (perturb && i == 0)
            x += make_rational(1, 4);
        if (l <= x)
            break;
        if (!ts.empty() && x <= ts.back())
            continue;
        ts.push_back(x);
        es.push_back(t.edges()[i]);
        vs.push_back(t.vertices()[i + 1]);
    }
    return Walk(t.window(), std::move(vs), std::move(es), std::move(ts));
}

inline std::string check_delay(Rng& rng, int n)
{
    for (int i = 0; i < n; ++i) {
        const Rational d0 = rand_rational(rng, -2, 2);
        const Clock clock(d0, Rational(d0 + rand_int(rng, 4, 8)));
        const Rational& l = clock.length();
        const Rational d = coin(rng, 0.1) ? Rational(0) : rand_rational(rng, 0, 3, 2);
        const bool perturb = coin(rng);

        const PLF f = random_plf(rng, l, 3, -3, 3);
        const PLF fp = shifted_plf(rng, f, d, perturb);
        const bool oracle_r = shift_oracle_reals(f, fp, d);
        const VariableReal vf(clock, f), vfp(clock, fp);
        if (delay_check_reals(vf, vfp, d) != oracle_r)
            return fail("delay_check_reals disagrees with the shift oracle, D=", d);
        if (delay_check_open_reals(vf, vfp, d, 4) != oracle_r)
            return fail("open-level delay check on reals disagrees with the shift oracle, D=", d, " f=", f,
                        " f'=", fp);

        const Walk t = random_walk(rng, l, 3);
        const Walk p = shifted_walk(rng, t, d, coin(rng));
        const bool oracle_w = shift_oracle_walks(t, p, d);
        if (delay_check_walks(t, p, d) != oracle_w)
            return fail("delay_check_walks disagrees with the shift oracle, D=", d);
        if (delay_check_open_walks(t, p, d, clock, 4) != oracle_w)
            return fail("open-level delay check on walks disagrees with the shift oracle, D=", d, " T=", t,
                        " P=", p);
    }
    return {};
}

// --- 8. Walks --------------------------------------------------------------

/// Small edits of w: each transition moved by 1/128 either way, the last
/// one dropped, and the whole walk started in the other vertex.
inline std::vector<Walk> perturbations(const Walk& w)
{
    std::vector<Walk> out;
    const Rational eps(1, 128);
    for (std::size_t i = 0; i < w.transitions(); ++i)
        for (const Rational& delta : {eps, Rational(-eps)}) {
            auto ts = w.times();
            ts[i] += delta;
            const bool ok = 0 < ts[i] && ts[i] < w.length() && (i == 0 || ts[i - 1] < ts[i])
                && (i + 1 == ts.size() || ts[i] < ts[i + 1]);
            if (ok)
                out.emplace_back(w.window(), w.vertices(), w.edges(), std::move(ts));
        }
    if (w.transitions() > 0) {
        auto vs = w.vertices();
        auto es = w.edges();
        auto ts = w.times();
        vs.pop_back();
        es.pop_back();
        ts.pop_back();
        out.emplace_back(w.window(), std::move(vs), std::move(es), std::move(ts));
    }
    std::vector<std::string> flipped;
    std::vector<std::string> es;
    for (const auto& v : w.vertices())
        flipped.push_back(v == "level" ? "climb" : "level");
    for (const auto& e : w.edges())
        es.push_back(e == "level!" ? "climb!" : "level!");
    out.emplace_back(w.window(), std::move(flipped), std::move(es), w.times());
    return out;
}

inline std::string check_walks(Rng& rng, int n)
{
    const Graph g = command_graph();
    for (int i = 0; i < n; ++i) {
        const Rational L = rand_int(rng, 4, 12);
        const Walk w = random_walk(rng, L, 5);
        Rational a = rand_rational(rng, 0, 1, 16) * L, b = rand_rational(rng, 0, 1, 16) * L;
        if (b < a)
            std::swap(a, b);
        if (a == b || b == 0)
            continue;
        const Walk w1 = restrict_walk(w, 0, Rational(L - b));
        const Walk w2 = restrict_walk(w, a, 0);
        const Walk glued = glue_walks(w1, w2, a);
        if (glued != w)
            return fail("gluing the restrictions of ", w, " gives ", glued);
        if (restrict_walk(glued, 0, Rational(L - b)) != w1 || restrict_walk(glued, a, 0) != w2)
            return "restricting a glued walk does not return the pieces";
        // Uniqueness: any different walk differs on one of the two pieces.
        for (const Walk& other : perturbations(w)) {
            if (other == w)
                continue;
            if (restrict_walk(other, 0, Rational(L - b)) == w1 && restrict_walk(other, a, 0) == w2)
                return fail("two walks glue from the same pieces: ", w, " and ", other);
        }
        // Pieces that disagree on the overlap do not glue.
        if (w.transitions() > 0 && a < b) {
            const Walk bad = restrict_walk(perturbations(w).back(), a, 0);
            if (restrict_walk(w1, a, 0) != restrict_walk(bad, 0, Rational(L - b))) {
                bool threw = false;
                try {
                    glue_walks(w1, bad, a);
                } catch (const Error&) {
                    threw = true;
                }
                if (!threw)
                    return "pieces disagreeing on the overlap were glued";
            }
        }

        // Timed walks against directly computed dwell times.
        const Rational lo = rand_rational(rng, 0, 2), hi = lo + rand_rational(rng, 0, 6);
        std::vector<Rational> bounds{0};
        bounds.insert(bounds.end(), w.times().begin(), w.times().end());
        bounds.push_back(L);
        bool expect = true;
        for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
            const Rational dwell = bounds[k + 1] - bounds[k];
            const bool partial = k == 0 || k + 2 == bounds.size();
            expect = expect && dwell < hi && (partial || lo < dwell);
        }
        if (timed_walk_check(w, lo, hi) != expect)
            return fail("timed walk check wrong for ", w, " in (", lo, ",", hi, ")");

        // LTS ports are homomorphic images.
        const auto [in, out] = lts_ports(g, w);
        in.validate(lts_input_graph(g));
        out.validate(lts_output_graph(g));
        if (in.times() != w.times() || out.times() != w.times() || out.vertices() != w.vertices())
            return "ports do not preserve times or vertices";
        for (std::size_t k = 0; k < w.transitions(); ++k)
            if (g.edge(w.edges()[k]).label != lts_input_graph(g).edge(in.edges()[k]).label)
                return "input port does not preserve labels";
    }
    return {};
}

// --- 9. NAS ----------------------------------------------------------------

inline NasParams reference_params()
{
    return {100, 10, 2, 20};
}

/// Names of the contracts not forced on s.
inline std::string unforced(const Scenario& s)
{
    std::string out;
    for (const auto& c : nas_contracts())
        if (!forces(c.build(s)))
            out += (out.empty() ? "" : ",") + c.name;
    return out;
}

inline std::string check_nas(Rng& rng, int n)
{
    const NasParams ref = reference_params();
    const Clock clock(-1, 11);
    if (ref.horizon() != 7)
        return "M != 7";
    const Scenario s = simulate_closed_loop(ref, clock, 0);
    if (at_value(s.a, 4) != 100 || at_value(s.a, make_rational(13, 2)) != 150 || at_value(s.a, 10) != 150)
        return "reference altitude trace is wrong";
    if (!unforced(s).empty())
        return "reference contracts not forced: " + unforced(s);
    const Verdict v = check_system(s, nas_contracts(), safety_goal);
    if (!v.contracts || !v.goal || !v.implication)
        return "reference system verdict is not (true, true, true)";

    for (int i = 0; i < n; ++i) {
        const NasParams p{rand_rational(rng, 10, 200), rand_rational(rng, 1, 200, 8) / 4,
                          rand_rational(rng, 0, 5), rand_rational(rng, 1, 50)};
        const Rational d0 = rand_rational(rng, -8, 0);
        const Clock c(d0, Rational(d0 + rand_int(rng, 4, 30)));
        const Rational a0 = rand_rational(rng, 0, 1, 8) * (p.threshold() + 20);
        const Scenario r = simulate_closed_loop(p, c, a0);
        if (!unforced(r).empty())
            return fail("compliant scenario violates ", unforced(r), " (safe=", p.safe, " margin=", p.margin,
                        " del=", p.del, " rate=", p.rate, " a0=", a0, ")");
        if (!forces(safety_goal(r)))
            return fail("compliant scenario violates safety (safe=", p.safe, " margin=", p.margin, " del=", p.del,
                        " rate=", p.rate, " a0=", a0, ")");
        if (derivative_bounds(r.a).seg_lo.size() && min_on(r.a.g(), 0, r.clock.length()) < a0)
            return "altitude decreases";
        const DerivativeBounds da = derivative_bounds(r.a);
        for (const auto& x : da.seg_lo)
            if (x < ExtRational(0))
                return "altitude has a negative lower derivative";
    }

    // Each perturbation flags exactly its own contract.
    const std::pair<const char*, std::string> cases[] = {{"del", "theta4"}, {"rate", "theta3"}, {"margin", "theta2"}};
    for (const auto& [key, expect] : cases) {
        for (const Rational& delta : {Rational(1), make_rational(-1, 2), make_rational(1, 7)}) {
            Scenario pert = s;
            Rational& field = std::string(key) == "del" ? pert.params.del
                : std::string(key) == "rate"            ? pert.params.rate
                                                        : pert.params.margin;
            field += delta;
            if (unforced(pert) != expect)
                return fail("perturbing ", key, " by ", delta, " flags {", unforced(pert), "}");
        }
    }
    return {};
}

// --- 10. MTL ---------------------------------------------------------------

inline std::string check_mtl(Rng& rng, int n)
{
    const long l = 4;
    for (int i = 0; i < n; ++i) {
        const BoolSignal p = random_signal(rng, l), q = random_signal(rng, l);
        const BoolSignal u = until(p, q), s = since(p, q);
        for (int k = 0; k < 24; ++k) {
            const Rational t0 = make_rational(2 * rand_int(rng, 0, 256 * l - 1) + 1, 512);
            if (u.contains(t0) != until_brute(p, q, t0))
                return fail("until differs from brute force at ", t0);
            if (s.contains(t0) != since_brute(p, q, t0))
                return fail("since differs from brute force at ", t0);
        }
        if (diamond(p) != not_(box(not_(p))))
            return "diamond is not the dual of box";
        if (u != not_(release(not_(p), not_(q))))
            return "until is not the dual of release";
    }
    const Window w(10);
    const BoolSignal q(w, {{4, 6, true, true}});
    const BoolSignal m = metric_until(BoolSignal::always(w), q, 1, 3);
    if (m != BoolSignal(w, {{1, 5, false, false}}))
        return "metric until example is not true exactly on (1,5)";
    return {};
}

} // namespace ttsem::testing
