#pragma once

// Behaviour contracts for the altitude-hold case study: the four component
// contracts, a deterministic closed-loop witness, and the safety goal.

#include "ttsem/walks.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ttsem {

struct NasParams {
    Rational safe;
    Rational margin;
    Rational del;
    Rational rate;

    /// Time after which the altitude is guaranteed above `safe`.
    Rational horizon() const { return del + safe / rate; }

    Rational threshold() const { return safe + margin; }
};

/// The command graph: level <-> climb.
inline Graph command_graph()
{
    return Graph({"level", "climb"},
                 {{"climb!", "level", "climb", "climb!"}, {"level!", "climb", "level", "level!"}});
}

struct Scenario {
    Clock clock;
    VariableReal a; // altitude
    Walk T;         // commanded mode
    Walk P;         // pilot's mode
    NasParams params;

    void validate() const
    {
        if (a.clock() != clock || T.window() != clock.window() || P.window() != clock.window())
            throw Error("Scenario: traces do not share the clock's window");
        const Graph g = command_graph();
        T.validate(g);
        P.validate(g);
    }
};

/// a climbs at `rate` while the pilot flies climb; the command switches to
/// level when a crosses safe + margin and the pilot follows `del` later.
inline Scenario simulate_closed_loop(const NasParams& params, const Clock& clock, const Rational& a0)
{
    if (a0 < 0)
        throw Error("simulate_closed_loop: negative initial altitude");
    if (!(0 < params.rate))
        throw Error("simulate_closed_loop: rate must be positive");
    const Window w = clock.window();
    const Rational& l = w.length();
    const Rational thr = params.threshold();
    if (thr <= a0)
        return {clock, VariableReal::constant(clock, a0), Walk::constant(w, "level"), Walk::constant(w, "level"),
                params};

    const Rational cross = (thr - a0) / params.rate;
    const Rational follow = cross + params.del;
    auto mode_walk = [&](const Rational& at) {
        if (at < l)
            return Walk(w, {"climb", "level"}, {"level!"}, {at});
        return Walk::constant(w, "climb");
    };
    const Rational stop = rmin(follow, l);
    std::vector<Breakpoint> pts{{0, a0}, {stop, Rational(a0 + params.rate * stop)}};
    if (stop < l)
        pts.push_back({l, pts.back().y});
    return {clock, VariableReal(clock, PLF(std::move(pts))), mode_walk(cross), mode_walk(follow), params};
}

/// margin > 0 and 0 <= a.
inline DyckPath theta1(const Scenario& s)
{
    const Window w = s.clock.window();
    const DyckPath pos = 0 < s.params.margin ? top(w) : bottom(w);
    return and_(pos, leq_open(VariableReal::constant(s.clock, 0), s.a));
}

/// a > safe + margin => T = level, and a < safe + margin => T = climb.
inline DyckPath theta2(const Scenario& s)
{
    const Rational thr = s.params.threshold();
    return and_(implies(cmp_const_open(s.a, thr, Cmp::gt), eq_vertex_open(s.T, "level")),
                implies(cmp_const_open(s.a, thr, Cmp::lt), eq_vertex_open(s.T, "climb")));
}

/// P = level => a' = 0, and P = climb => a' = rate.
inline DyckPath theta3(const Scenario& s)
{
    return and_(implies(eq_vertex_open(s.P, "level"), deriv_eq_open(s.a, 0)),
                implies(eq_vertex_open(s.P, "climb"), deriv_eq_open(s.a, s.params.rate)));
}

/// The pilot repeats the command with delay del; a global condition.
inline DyckPath theta4(const Scenario& s)
{
    const Window w = s.clock.window();
    return delay_check_walks(s.T, s.P, s.params.del) ? top(w) : bottom(w);
}

/// See{0}(M < t => safe <= a), M = del + safe / rate.
inline DyckPath safety_goal(const Scenario& s)
{
    const DyckPath body = implies(atom_gt(s.params.horizon(), s.clock),
                                  leq_open(VariableReal::constant(s.clock, s.params.safe), s.a));
    return see(0, 0, s.clock, body);
}

struct Contract {
    std::string name;
    std::function<DyckPath(const Scenario&)> build;
};

inline std::vector<Contract> nas_contracts()
{
    return {{"theta1", theta1}, {"theta2", theta2}, {"theta3", theta3}, {"theta4", theta4}};
}

struct Verdict {
    bool contracts = false;
    bool goal = false;
    bool implication = false;
};

inline Verdict check_system(const Scenario& s, const std::vector<Contract>& contracts,
                            const std::function<DyckPath(const Scenario&)>& goal)
{
    s.validate();
    DyckPath all = top(s.clock.window());
    for (const auto& c : contracts)
        all = and_(all, c.build(s));
    const DyckPath g = goal(s);
    return {forces(all), forces(g), forces(implies(all, g))};
}

} // namespace ttsem
