#pragma once

// JSON encoding of the library's values. Rationals are strings "p/q" (plain
// integers and finite decimals are accepted on input).

#include "ttsem/contracts.hpp"
#include "ttsem/temporal_logic.hpp"

#include <json.hpp>

#include <string>

namespace ttsem::json {

using nlohmann::json;

inline Rational rational(const json& j, const std::string& where)
{
    if (j.is_string())
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            throw Error(where + ": " + e.what());
        }
    if (j.is_number_integer())
        return Rational(j.get<long>());
    throw Error(where + ": expected a rational string such as \"3/2\"");
}

inline json to_json(const Rational& q)
{
    return to_string(q);
}

inline const json& field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline PLF plf(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() < 2)
        throw Error(where + ": expected an array of at least two [x, y] pairs");
    std::vector<Breakpoint> pts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2)
            throw Error(at + ": expected [x, y]");
        pts.push_back({rational(j[i][0], at), rational(j[i][1], at)});
    }
    try {
        return PLF(std::move(pts));
    } catch (const Error& e) {
        throw Error(where + ": " + e.what());
    }
}

inline json to_json(const PLF& f)
{
    json a = json::array();
    for (const auto& p : f.points())
        a.push_back({to_string(p.x), to_string(p.y)});
    return a;
}

inline Clock clock(const json& j, const std::string& where)
{
    return Clock(rational(field(j, "d_t", where), where + ".d_t"), rational(field(j, "u_t", where), where + ".u_t"));
}

inline json to_json(const Clock& c)
{
    return {{"d_t", to_string(c.d_t())}, {"u_t", to_string(c.u_t())}};
}

/// Either a bare PLF (a variable real) or {"lo": ..., "hi": ...}.
inline IntervalSection section(const json& j, const Clock& c, const std::string& where)
{
    try {
        if (j.is_array())
            return VariableReal(c, plf(j, where));
        return IntervalSection(c, plf(field(j, "lo", where), where + ".lo"), plf(field(j, "hi", where), where + ".hi"));
    } catch (const Error& e) {
        const std::string msg = e.what();
        throw Error(msg.rfind(where, 0) == 0 ? msg : where + ": " + msg);
    }
}

inline json to_json(const IntervalSection& s)
{
    return {{"lo", to_json(s.lo())}, {"hi", to_json(s.hi())}};
}

inline ExtRational ext_rational(const json& j, const std::string& where)
{
    if (j.is_string()) {
        try {
            return parse_ext_rational(j.get<std::string>());
        } catch (const Error& e) {
            throw Error(where + ": " + e.what());
        }
    }
    return rational(j, where);
}

inline KInterval kinterval(const json& j, const std::string& where)
{
    return {ext_rational(field(j, "d", where), where + ".d"), ext_rational(field(j, "u", where), where + ".u")};
}

inline json to_json(const KInterval& k)
{
    return {{"d", to_string(k.d)}, {"u", to_string(k.u)}};
}

inline std::vector<std::string> strings(const json& j, const std::string& where)
{
    if (!j.is_array())
        throw Error(where + ": expected an array of strings");
    std::vector<std::string> out;
    for (const auto& s : j) {
        if (!s.is_string())
            throw Error(where + ": expected an array of strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

inline Walk walk(const json& j, const Window& w, const std::string& where)
{
    std::vector<Rational> ts;
    const json& times = field(j, "times", where);
    if (!times.is_array())
        throw Error(where + ".times: expected an array");
    for (std::size_t i = 0; i < times.size(); ++i)
        ts.push_back(rational(times[i], where + ".times[" + std::to_string(i) + "]"));
    try {
        return Walk(w, strings(field(j, "vertices", where), where + ".vertices"),
                    strings(field(j, "edges", where), where + ".edges"), std::move(ts));
    } catch (const Error& e) {
        throw Error(where + ": " + e.what());
    }
}

inline json to_json(const Walk& w)
{
    json ts = json::array();
    for (const auto& t : w.times())
        ts.push_back(to_string(t));
    return {{"vertices", w.vertices()}, {"edges", w.edges()}, {"times", ts}};
}

inline Graph graph(const json& j, const std::string& where)
{
    std::vector<Edge> es;
    const json& edges = field(j, "edges", where);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string at = where + ".edges[" + std::to_string(i) + "]";
        const json& e = edges[i];
        es.push_back({field(e, "id", at).get<std::string>(), field(e, "src", at).get<std::string>(),
                      field(e, "tgt", at).get<std::string>(), e.value("label", std::string())});
    }
    try {
        return Graph(strings(field(j, "vertices", where), where + ".vertices"), std::move(es));
    } catch (const Error& e) {
        throw Error(where + ": " + e.what());
    }
}

inline json to_json(const Graph& g)
{
    json es = json::array();
    for (const auto& e : g.edges())
        es.push_back({{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}, {"label", e.label}});
    return {{"vertices", g.vertices()}, {"edges", es}};
}

/// {"true_on": [["a", "b", "closed"|"open", "closed"|"open"], ...]}
inline BoolSignal signal(const json& j, const Window& w, const std::string& where)
{
    const json& on = field(j, "true_on", where);
    if (!on.is_array())
        throw Error(where + ".true_on: expected an array");
    std::vector<Span> spans;
    for (std::size_t i = 0; i < on.size(); ++i) {
        const std::string at = where + ".true_on[" + std::to_string(i) + "]";
        const json& s = on[i];
        if (!s.is_array() || (s.size() != 2 && s.size() != 4))
            throw Error(at + ": expected [lo, hi] or [lo, hi, flag, flag]");
        auto flag = [&](std::size_t k) {
            if (s.size() == 2)
                return true;
            const std::string f = s[k].get<std::string>();
            if (f != "closed" && f != "open")
                throw Error(at + ": endpoint flag must be \"closed\" or \"open\"");
            return f == "closed";
        };
        spans.push_back({rational(s[0], at), rational(s[1], at), flag(2), flag(3)});
    }
    try {
        return BoolSignal(w, std::move(spans));
    } catch (const Error& e) {
        throw Error(where + ": " + e.what());
    }
}

inline json to_json(const BoolSignal& s)
{
    json on = json::array();
    for (const auto& sp : s.spans())
        on.push_back({to_string(sp.lo), to_string(sp.hi), sp.lo_closed ? "closed" : "open",
                      sp.hi_closed ? "closed" : "open"});
    return {{"true_on", on}};
}

inline NasParams nas_params(const json& j, const std::string& where)
{
    NasParams p{rational(field(j, "safe", where), where + ".safe"),
                rational(field(j, "margin", where), where + ".margin"),
                rational(field(j, "del", where), where + ".del"), rational(field(j, "rate", where), where + ".rate")};
    if (p.safe <= 0 || p.del < 0 || p.rate <= 0)
        throw Error(where + ": safe and rate must be positive, del non-negative");
    return p;
}

inline json to_json(const NasParams& p)
{
    return {{"safe", to_string(p.safe)}, {"margin", to_string(p.margin)}, {"del", to_string(p.del)},
            {"rate", to_string(p.rate)}};
}

} // namespace ttsem::json
