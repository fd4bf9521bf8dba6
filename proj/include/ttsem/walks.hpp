#pragma once

// Walks through graphs as hybrid behaviors, and delay checking.

#include "ttsem/calculus.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ttsem {

struct Edge {
    std::string id;
    std::string src;
    std::string tgt;
    std::string label;

    friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
public:
    Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges))
    {
        std::set<std::string> vs(vertices_.begin(), vertices_.end());
        if (vs.size() != vertices_.size())
            throw Error("Graph: duplicate vertex");
        std::set<std::string> es;
        for (const auto& e : edges_) {
            if (!es.insert(e.id).second)
                throw Error("Graph: duplicate edge '" + e.id + "'");
            if (!vs.count(e.src) || !vs.count(e.tgt))
                throw Error("Graph: edge '" + e.id + "' has an unknown endpoint");
        }
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    const Edge& edge(const std::string& id) const
    {
        for (const auto& e : edges_)
            if (e.id == id)
                return e;
        throw Error("Graph: unknown edge '" + id + "'");
    }

    bool has_vertex(const std::string& v) const
    {
        return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
};

/// v0 -e1-> v1 ... -ek-> vk, edge i traversed at local time times[i].
class Walk {
public:
    Walk(Window w, std::vector<std::string> vertices, std::vector<std::string> edges, std::vector<Rational> times)
        : window_(std::move(w)), vertices_(std::move(vertices)), edges_(std::move(edges)), times_(std::move(times))
    {
        if (vertices_.empty() || vertices_.size() != edges_.size() + 1 || edges_.size() != times_.size())
            throw Error("Walk: need k+1 vertices, k edges and k transition times");
        Rational prev = 0;
        for (const auto& t : times_) {
            if (!(prev < t))
                throw Error("Walk: transition times must be increasing and positive, got " + to_string(t));
            prev = t;
        }
        if (!(prev < window_.length()) && !times_.empty())
            throw Error("Walk: transition at " + to_string(prev) + " not inside the window");
    }

    static Walk constant(Window w, std::string v) { return Walk(std::move(w), {std::move(v)}, {}, {}); }

    const Window& window() const { return window_; }
    const Rational& length() const { return window_.length(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<std::string>& edges() const { return edges_; }
    const std::vector<Rational>& times() const { return times_; }
    std::size_t transitions() const { return times_.size(); }

    /// Throws unless every edge joins the adjacent vertices in g.
    void validate(const Graph& g) const
    {
        for (const auto& v : vertices_)
            if (!g.has_vertex(v))
                throw Error("Walk: unknown vertex '" + v + "'");
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = g.edge(edges_[i]);
            if (e.src != vertices_[i] || e.tgt != vertices_[i + 1])
                throw Error("Walk: edge '" + e.id + "' does not join " + vertices_[i] + " to " + vertices_[i + 1]);
        }
    }

    friend bool operator==(const Walk&, const Walk&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Walk& w)
    {
        Rational prev = 0;
        for (std::size_t i = 0; i < w.vertices_.size(); ++i) {
            const Rational end = i < w.times_.size() ? w.times_[i] : w.length();
            os << w.vertices_[i] << '(' << to_string(Rational(end - prev)) << ')';
            if (i < w.edges_.size())
                os << '.' << w.edges_[i] << '.';
            prev = end;
        }
        return os;
    }

private:
    Window window_;
    std::vector<std::string> vertices_;
    std::vector<std::string> edges_;
    std::vector<Rational> times_;
};

inline const std::string& vertex_at(const Walk& w, const Rational& x)
{
    if (!(0 < x && x < w.length()))
        throw Error("vertex_at: " + to_string(x) + " outside the open window");
    std::size_t k = 0;
    for (const auto& t : w.times()) {
        if (x == t)
            throw Error("vertex_at: " + to_string(x) + " is a transition instant");
        if (t < x)
            ++k;
    }
    return w.vertices()[k];
}

/// Restriction to the subwindow [r, l - s], shifted to start at 0.
inline Walk restrict_walk(const Walk& w, const Rational& r, const Rational& s)
{
    if (r < 0 || s < 0 || !(r + s < w.length()))
        throw Error("restrict_walk: invalid cut (" + to_string(r) + ", " + to_string(s) + ")");
    const Rational end = w.length() - s;
    std::size_t first = 0;
    while (first < w.times().size() && w.times()[first] <= r)
        ++first;
    std::vector<std::string> vs{w.vertices()[first]};
    std::vector<std::string> es;
    std::vector<Rational> ts;
    for (std::size_t i = first; i < w.times().size() && w.times()[i] < end; ++i) {
        es.push_back(w.edges()[i]);
        vs.push_back(w.vertices()[i + 1]);
        ts.push_back(w.times()[i] - r);
    }
    return Walk(Window(Rational(end - r)), std::move(vs), std::move(es), std::move(ts));
}

/// Glues w1 on [0, b] and w2 on [a, a + l2] (0 <= a < b, in w1's coordinates)
/// along the overlap (a, b).
inline Walk glue_walks(const Walk& w1, const Walk& w2, const Rational& a)
{
    const Rational& b = w1.length();
    if (!(0 <= a && a < b))
        throw Error("glue_walks: offset must lie inside the first window");
    if (w2.length() < b - a)
        throw Error("glue_walks: second walk ends inside the first window");
    const Walk left = restrict_walk(w1, a, 0);
    const Walk right = restrict_walk(w2, 0, Rational(w2.length() - (b - a)));
    if (left != right) {
        // First instant (in w1's coordinates) where the two disagree.
        std::optional<Rational> at;
        if (left.vertices().front() != right.vertices().front())
            at = a;
        for (std::size_t i = 0; !at && i < std::max(left.transitions(), right.transitions()); ++i) {
            if (i >= left.transitions())
                at = right.times()[i] + a;
            else if (i >= right.transitions())
                at = left.times()[i] + a;
            else if (left.times()[i] != right.times()[i])
                at = rmin(left.times()[i], right.times()[i]) + a;
            else if (left.edges()[i] != right.edges()[i] || left.vertices()[i + 1] != right.vertices()[i + 1])
                at = left.times()[i] + a;
        }
        throw Error("glue_walks: overlap mismatch at " + to_string(at.value_or(a)));
    }
    std::vector<std::string> vs = w1.vertices();
    std::vector<std::string> es = w1.edges();
    std::vector<Rational> ts = w1.times();
    for (std::size_t i = 0; i < w2.transitions(); ++i) {
        const Rational t = w2.times()[i] + a;
        if (b <= t) {
            es.push_back(w2.edges()[i]);
            vs.push_back(w2.vertices()[i + 1]);
            ts.push_back(t);
        }
    }
    return Walk(Window(Rational(a + w2.length())), std::move(vs), std::move(es), std::move(ts));
}

/// The open of walk = v: union of the tents over the segments spent at v.
inline DyckPath eq_vertex_open(const Walk& w, const std::string& v)
{
    std::vector<ClosedSet1D::Component> off;
    Rational prev = 0;
    for (std::size_t i = 0; i < w.vertices().size(); ++i) {
        const Rational end = i < w.transitions() ? w.times()[i] : w.length();
        if (w.vertices()[i] != v)
            off.emplace_back(prev, end);
        else
            off.emplace_back(prev, prev);
        prev = end;
    }
    off.emplace_back(w.length(), w.length());
    return DyckPath(w.window(), pw_min(tent(w.window()), dist_to(ClosedSet1D(0, w.length(), std::move(off)))));
}

/// Whether the walk traverses edge e at global time r; vacuously true when
/// r is outside the open window.
inline bool trav(const Walk& w, const Rational& r, const std::string& e, const Clock& clock)
{
    if (clock.length() != w.length())
        throw Error("trav: clock does not match the walk's window");
    if (!(clock.d_t() < r && r < clock.u_t()))
        return true;
    const Rational x = clock.local(r);
    for (std::size_t i = 0; i < w.transitions(); ++i)
        if (w.times()[i] == x)
            return w.edges()[i] == e;
    return false;
}

/// Interior dwell times in (a, b); the partial first and last dwell times
/// only bounded above by b.
inline bool timed_walk_check(const Walk& w, const Rational& a, const Rational& b)
{
    const auto& ts = w.times();
    if (ts.empty())
        return w.length() < b;
    if (!(ts.front() < b) || !(w.length() - ts.back() < b))
        return false;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const Rational d = ts[i + 1] - ts[i];
        if (!(a < d && d < b))
            return false;
    }
    return true;
}

/// The input graph E => {*} of a labelled transition system.
inline Graph lts_input_graph(const Graph& g)
{
    std::vector<Edge> es;
    for (const auto& e : g.edges())
        es.push_back({e.id, "*", "*", e.label});
    return Graph({"*"}, std::move(es));
}

inline std::string pair_edge(const std::string& s, const std::string& t)
{
    return "(" + s + "," + t + ")";
}

/// The complete graph V x V => V.
inline Graph lts_output_graph(const Graph& g)
{
    std::vector<Edge> es;
    for (const auto& s : g.vertices())
        for (const auto& t : g.vertices())
            es.push_back({pair_edge(s, t), s, t, ""});
    return Graph(g.vertices(), std::move(es));
}

/// Images of a walk under the input and output homomorphisms of an LTS.
inline std::pair<Walk, Walk> lts_ports(const Graph& g, const Walk& w)
{
    w.validate(g);
    std::vector<std::string> stars(w.vertices().size(), "*");
    Walk in(w.window(), std::move(stars), w.edges(), w.times());
    std::vector<std::string> pairs;
    for (std::size_t i = 0; i < w.transitions(); ++i)
        pairs.push_back(pair_edge(w.vertices()[i], w.vertices()[i + 1]));
    Walk out(w.window(), w.vertices(), std::move(pairs), w.times());
    return {std::move(in), std::move(out)};
}

// ---------------------------------------------------------------------------
// Delay

/// P repeats T with delay D: T(x) = P(x + D) on (0, l - D), transitions and
/// edges included.
inline bool delay_check_walks(const Walk& t, const Walk& p, const Rational& d)
{
    if (t.window() != p.window())
        throw Error("delay_check_walks: window mismatch");
    if (d < 0)
        throw Error("delay_check_walks: negative delay");
    if (!(d < t.length()))
        return true;
    return restrict_walk(t, 0, d) == restrict_walk(p, d, 0);
}

/// f(x) = f'(x + D) on (0, l - D).
inline bool delay_check_reals(const VariableReal& f, const VariableReal& fp, const Rational& d)
{
    detail::require_same_clock(f.clock(), fp.clock(), "delay_check_reals");
    if (d < 0)
        throw Error("delay_check_reals: negative delay");
    const Rational& l = f.clock().length();
    if (!(d < l))
        return true;
    return reparam(f.g(), 0, Rational(l - d)) == reparam(fp.g(), d, l);
}

namespace detail {

/// Sorted distinct points with their midpoints and a uniform grid of n steps.
inline std::vector<Rational> refine_grid(std::vector<Rational> pts, const Rational& lo, const Rational& hi,
                                         unsigned n)
{
    for (unsigned k = 0; k <= n; ++k)
        pts.push_back(lo + (hi - lo) * k / n);
    std::erase_if(pts, [&](const Rational& x) { return x < lo || hi < x; });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i + 1 < m; ++i)
        pts.push_back((pts[i] + pts[i + 1]) / 2);
    std::sort(pts.begin(), pts.end());
    return pts;
}

/// Grid of clock readings for the delay guard. Pairs with d <= d_t or
/// u + D >= u_t make the See guard top, so only (d_t, u_t - D) is sampled.
inline std::vector<Rational> delay_grid(std::vector<Rational> pts, const Clock& clock, const Rational& delay,
                                        unsigned steps)
{
    const Rational hi = clock.u_t() - delay;
    if (hi <= clock.d_t())
        return {};
    pts = refine_grid(std::move(pts), clock.d_t(), hi, steps);
    // Drop the ends but keep a point inside each end cell.
    pts.front() = (pts[0] + pts[1]) / 2;
    pts.back() = (pts[pts.size() - 2] + pts.back()) / 2;
    std::sort(pts.begin(), pts.end());
    return pts;
}

/// The guarded biconditional of the delay definition, over all grid pairs
/// d < u: See[d, u+D] In[d, u] phi(T) and See[d, u+D] In[d+D, u+D] phi(P)
/// are forced together.
inline bool delay_guarded_pair(const Clock& clock, const DyckPath& phi_t, const DyckPath& phi_p,
                               const Rational& delay, const Rational& d, const Rational& u)
{
    const Rational ud = u + delay;
    return forces(see(d, ud, clock, in_(d, u, clock, phi_t)))
        == forces(see(d, ud, clock, in_(Rational(d + delay), ud, clock, phi_p)));
}

inline bool delay_guarded(const Clock& clock, const DyckPath& phi_t, const DyckPath& phi_p, const Rational& delay,
                          const std::vector<Rational>& grid)
{
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j)
            if (!delay_guarded_pair(clock, phi_t, phi_p, delay, grid[i], grid[j]))
                return false;
    return true;
}

} // namespace detail

/// The delay definition evaluated on opens with phi(v) = (walk = v), over a
/// grid of clock readings induced by the transition times.
inline bool delay_check_open_walks(const Walk& t, const Walk& p, const Rational& delay, const Clock& clock,
                                   unsigned steps = 8)
{
    if (t.window() != p.window() || clock.window() != t.window())
        throw Error("delay_check_open_walks: window mismatch");
    std::vector<Rational> pts{clock.d_t(), clock.u_t()};
    for (const auto& x : t.times())
        pts.push_back(clock.global(x));
    for (const auto& x : p.times())
        pts.push_back(clock.global(x) - delay);
    const auto grid = detail::delay_grid(std::move(pts), clock, delay, steps);
    if (grid.empty())
        return true;
    std::set<std::string> vs(t.vertices().begin(), t.vertices().end());
    vs.insert(p.vertices().begin(), p.vertices().end());
    for (const auto& v : vs)
        if (!detail::delay_guarded(clock, eq_vertex_open(t, v), eq_vertex_open(p, v), delay, grid))
            return false;
    return true;
}

/// The delay definition evaluated on opens with phi = (q1 < f < q2), over a
/// grid of clock readings. For each pair (d, u) the bands tried are one
/// containing both ranges and, where the ranges differ, ones with an edge
/// strictly between the two extremes; any other band gives equal sides.
inline bool delay_check_open_reals(const VariableReal& f, const VariableReal& fp, const Rational& delay,
                                   unsigned steps = 8)
{
    detail::require_same_clock(f.clock(), fp.clock(), "delay_check_open_reals");
    const Clock& clock = f.clock();
    std::vector<Rational> times{clock.d_t(), clock.u_t()};
    for (const auto& b : f.g().points())
        times.push_back(clock.global(b.x));
    for (const auto& b : fp.g().points())
        times.push_back(clock.global(b.x) - delay);
    const auto grid = detail::delay_grid(std::move(times), clock, delay, steps);

    // (x > q, x < q) per level, built on demand.
    std::map<Rational, std::pair<DyckPath, DyckPath>> cache_f, cache_fp;
    auto cmp = [](auto& cache, const VariableReal& x, const Rational& q) -> const auto& {
        auto it = cache.find(q);
        if (it == cache.end())
            it = cache.emplace(q, std::pair{cmp_const_open(x, q, Cmp::gt), cmp_const_open(x, q, Cmp::lt)}).first;
        return it->second;
    };
    auto band = [&](auto& cache, const VariableReal& x, const Rational& q1, const Rational& q2) {
        return and_(cmp(cache, x, q1).first, cmp(cache, x, q2).second);
    };

    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            const Rational a = clock.local(grid[i]), b = clock.local(grid[j]);
            const Rational m1 = min_on(f.g(), a, b), M1 = max_on(f.g(), a, b);
            const Rational m2 = min_on(fp.g(), a + delay, b + delay), M2 = max_on(fp.g(), a + delay, b + delay);
            const Rational lo = rmin(m1, m2) - 1, hi = rmax(M1, M2) + 1;
            std::vector<std::pair<Rational, Rational>> bands{{lo, hi}};
            if (m1 != m2)
                bands.emplace_back((m1 + m2) / 2, hi);
            if (M1 != M2)
                bands.emplace_back(lo, (M1 + M2) / 2);
            for (const auto& [q1, q2] : bands)
                if (!detail::delay_guarded_pair(clock, band(cache_f, f, q1, q2), band(cache_fp, fp, q1, q2), delay,
                                                grid[i], grid[j]))
                    return false;
        }
    return true;
}

} // namespace ttsem
