#pragma once

// Formulas as JSON trees, evaluated against a bundle of named traces.
//
//   {"op": "and", "args": [F, G]}                 and, or (n-ary), implies, not
//   {"op": "lt", "q": "4"}, {"op": "gt", "q": "0"}   clock atoms
//   {"op": "see"|"at"|"in", "d": .., "u": .., "args": [F]}, {"op": "pi", "args": [F]}
//   {"op": "cmp", "rel": "<"|"<="|">"|">=", "lhs": T, "rhs": T}   T = {"real": name} | {"const": q}
//   {"op": "deriv_eq", "real": name, "c": q}
//   {"op": "vertex", "walk": name, "v": vertex}
//   {"op": "trav", "walk": name, "r": q, "edge": id}
//   {"op": "delayed", "T": name, "P": name, "D": q}
//   {"op": "signal", "name": s}, until, since, release, metric_until (d, u),
//   box, diamond, next (step)  -- signal formulas, embedded as opens

#include "ttsem/json_io.hpp"

#include <map>
#include <optional>
#include <string>

namespace ttsem {

struct Bundle {
    Clock clock;
    std::map<std::string, IntervalSection> reals;
    std::map<std::string, Walk> walks;
    std::map<std::string, BoolSignal> signals;
    std::optional<Graph> graph;

    Window window() const { return clock.window(); }
};

inline Bundle load_bundle(const nlohmann::json& j)
{
    Bundle b{json::clock(json::field(j, "clock", "$"), "$.clock"), {}, {}, {}, {}};
    const Window w = b.window();
    if (j.contains("graph"))
        b.graph = json::graph(j["graph"], "$.graph");
    if (j.contains("reals"))
        for (const auto& [k, v] : j["reals"].items())
            b.reals.emplace(k, json::section(v, b.clock, "$.reals." + k));
    if (j.contains("walks"))
        for (const auto& [k, v] : j["walks"].items()) {
            Walk wk = json::walk(v, w, "$.walks." + k);
            if (b.graph)
                try {
                    wk.validate(*b.graph);
                } catch (const Error& e) {
                    throw Error("$.walks." + k + ": " + e.what());
                }
            b.walks.emplace(k, std::move(wk));
        }
    if (j.contains("signals"))
        for (const auto& [k, v] : j["signals"].items())
            b.signals.emplace(k, json::signal(v, w, "$.signals." + k));
    return b;
}

class Evaluator {
public:
    explicit Evaluator(const Bundle& b) : b_(b) {}

    DyckPath prop(const nlohmann::json& n, const std::string& at = "$") const
    {
        try {
            return prop_impl(n, at);
        } catch (const Error& e) {
            throw located(e, at);
        }
    }

    BoolSignal signal(const nlohmann::json& n, const std::string& at = "$") const
    {
        try {
            return signal_impl(n, at);
        } catch (const Error& e) {
            throw located(e, at);
        }
    }

    static bool is_signal_op(const std::string& op)
    {
        return op == "signal" || op == "until" || op == "since" || op == "release" || op == "metric_until"
            || op == "box" || op == "diamond" || op == "next";
    }

private:
    /// Prefixes the message with the node path unless a deeper node did.
    static Error located(const Error& e, const std::string& at)
    {
        const std::string msg = e.what();
        return msg.rfind("$", 0) == 0 ? Error(msg) : Error(at + ": " + msg);
    }

    static std::string op_of(const nlohmann::json& n)
    {
        if (!n.is_object() || !n.contains("op") || !n["op"].is_string())
            throw Error("node without a string \"op\"");
        return n["op"].get<std::string>();
    }

    static const nlohmann::json& arg(const nlohmann::json& n, std::size_t i, std::size_t arity)
    {
        const auto& a = json::field(n, "args", "node");
        if (!a.is_array() || a.size() < arity)
            throw Error("expected " + std::to_string(arity) + " argument(s)");
        return a[i];
    }

    static std::string child(const std::string& at, std::size_t i)
    {
        return at + ".args[" + std::to_string(i) + "]";
    }

    Rational num(const nlohmann::json& n, const char* key, const std::string& at) const
    {
        return json::rational(json::field(n, key, at), at + "." + key);
    }

    std::string name(const nlohmann::json& n, const char* key, const std::string& at) const
    {
        const auto& v = json::field(n, key, at);
        if (!v.is_string())
            throw Error(std::string("field '") + key + "' must be a string");
        return v.get<std::string>();
    }

    template <class M>
    const typename M::mapped_type& lookup(const M& m, const std::string& key, const char* what) const
    {
        const auto it = m.find(key);
        if (it == m.end())
            throw Error(std::string("unknown ") + what + " '" + key + "'");
        return it->second;
    }

    IntervalSection term(const nlohmann::json& t, const std::string& at) const
    {
        if (t.is_object() && t.contains("real"))
            return lookup(b_.reals, name(t, "real", at), "real");
        if (t.is_object() && t.contains("const"))
            return VariableReal::constant(b_.clock, num(t, "const", at));
        throw Error(at + ": a term is {\"real\": name} or {\"const\": q}");
    }

    DyckPath prop_impl(const nlohmann::json& n, const std::string& at) const
    {
        const std::string op = op_of(n);
        const Window w = b_.window();
        const Clock& c = b_.clock;
        auto sub = [&](std::size_t i, std::size_t arity) { return prop(arg(n, i, arity), child(at, i)); };

        if (op == "top")
            return top(w);
        if (op == "bottom")
            return bottom(w);
        if (op == "and" || op == "or") {
            const auto& a = json::field(n, "args", at);
            if (!a.is_array() || a.empty())
                throw Error("'" + op + "' needs at least one argument");
            DyckPath acc = prop(a[0], child(at, 0));
            for (std::size_t i = 1; i < a.size(); ++i)
                acc = op == "and" ? and_(acc, prop(a[i], child(at, i))) : or_(acc, prop(a[i], child(at, i)));
            return acc;
        }
        if (op == "implies")
            return implies(sub(0, 2), sub(1, 2));
        if (op == "not")
            return not_(sub(0, 1));
        if (op == "restrict")
            return restrict(sub(0, 1), num(n, "r", at), num(n, "s", at));
        if (op == "lt")
            return atom_lt(num(n, "q", at), c);
        if (op == "gt")
            return atom_gt(num(n, "q", at), c);
        if (op == "apart")
            return apart(num(n, "a", at), num(n, "b", at), c);
        if (op == "see")
            return see(num(n, "d", at), num(n, "u", at), c, sub(0, 1));
        if (op == "at")
            return at_(num(n, "d", at), num(n, "u", at), c, sub(0, 1));
        if (op == "in")
            return in_(num(n, "d", at), num(n, "u", at), c, sub(0, 1));
        if (op == "pi")
            return pi(sub(0, 1));
        if (op == "cmp") {
            const std::string rel = name(n, "rel", at);
            const IntervalSection l = term(json::field(n, "lhs", at), at + ".lhs");
            const IntervalSection r = term(json::field(n, "rhs", at), at + ".rhs");
            if (rel == "<")
                return lt_open(l, r);
            if (rel == ">")
                return lt_open(r, l);
            if (rel == "<=")
                return leq_open(l, r);
            if (rel == ">=")
                return leq_open(r, l);
            throw Error("unknown relation '" + rel + "'");
        }
        if (op == "deriv_eq") {
            const IntervalSection& s = lookup(b_.reals, name(n, "real", at), "real");
            if (s.lo() != s.hi())
                throw Error("deriv_eq needs a variable real (lo = hi)");
            return deriv_eq_open(VariableReal(c, s.lo()), num(n, "c", at));
        }
        if (op == "vertex")
            return eq_vertex_open(lookup(b_.walks, name(n, "walk", at), "walk"), name(n, "v", at));
        if (op == "trav")
            return trav(lookup(b_.walks, name(n, "walk", at), "walk"), num(n, "r", at), name(n, "edge", at), c)
                ? top(w)
                : bottom(w);
        if (op == "delayed")
            return delay_check_walks(lookup(b_.walks, name(n, "T", at), "walk"),
                                     lookup(b_.walks, name(n, "P", at), "walk"), num(n, "D", at))
                ? top(w)
                : bottom(w);
        if (is_signal_op(op))
            return to_open(signal(n, at));
        throw Error("unknown op '" + op + "'");
    }

    BoolSignal signal_impl(const nlohmann::json& n, const std::string& at) const
    {
        const std::string op = op_of(n);
        const Window w = b_.window();
        auto sub = [&](std::size_t i, std::size_t arity) { return signal(arg(n, i, arity), child(at, i)); };

        if (op == "signal")
            return lookup(b_.signals, name(n, "name", at), "signal");
        if (op == "top")
            return BoolSignal::always(w);
        if (op == "bottom")
            return BoolSignal::never(w);
        if (op == "not")
            return not_(sub(0, 1));
        if (op == "and" || op == "or") {
            const auto& a = json::field(n, "args", at);
            if (!a.is_array() || a.empty())
                throw Error("'" + op + "' needs at least one argument");
            BoolSignal acc = signal(a[0], child(at, 0));
            for (std::size_t i = 1; i < a.size(); ++i)
                acc = op == "and" ? and_(acc, signal(a[i], child(at, i))) : or_(acc, signal(a[i], child(at, i)));
            return acc;
        }
        if (op == "implies")
            return or_(not_(sub(0, 2)), sub(1, 2));
        if (op == "until")
            return until(sub(0, 2), sub(1, 2));
        if (op == "since")
            return since(sub(0, 2), sub(1, 2));
        if (op == "release")
            return release(sub(0, 2), sub(1, 2));
        if (op == "metric_until")
            return metric_until(sub(0, 2), sub(1, 2), num(n, "d", at), num(n, "u", at));
        if (op == "box")
            return box(sub(0, 1));
        if (op == "diamond")
            return diamond(sub(0, 1));
        if (op == "next")
            return next(sub(0, 1), n.contains("step") ? num(n, "step", at) : Rational(1));
        throw Error("'" + op + "' is not a signal operator");
    }

    const Bundle& b_;
};

} // namespace ttsem
