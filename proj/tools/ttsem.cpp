// ttsem: evaluate temporal propositions over traces.
//
// Exit codes: 0 forced / pass, 1 not forced / fail, 2 usage or input error.

#include "ttsem/formula.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace ttsem;
using Json = nlohmann::json;

namespace {

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(path + ": " + e.what());
    }
}

unsigned grid_size()
{
    if (const char* g = std::getenv("TTSEM_GRID")) {
        char* end = nullptr;
        const long n = std::strtol(g, &end, 10);
        if (*end != '\0' || n < 1 || n > 1000000)
            throw Error("TTSEM_GRID must be a positive integer, got '" + std::string(g) + "'");
        return static_cast<unsigned>(n);
    }
    return 256;
}

/// Breakpoints plus a uniform grid, sorted and exact.
void write_csv(std::ostream& os, const DyckPath& d)
{
    const Rational& l = d.length();
    const unsigned n = grid_size();
    std::vector<Rational> xs;
    for (const auto& p : d.path().points())
        xs.push_back(p.x);
    for (unsigned k = 0; k <= n; ++k)
        xs.push_back(l * k / n);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    os << "x,D\n";
    for (const auto& x : xs)
        os << to_string(x) << ',' << to_string(d(x)) << '\n';
}

void write_svg(std::ostream& os, const DyckPath& d)
{
    const double l = to_double(d.length());
    const double w = 640, h = 340, pad = 20;
    auto px = [&](const Rational& x) { return pad + (w - 2 * pad) * to_double(x) / l; };
    auto py = [&](const Rational& y) { return h - pad - (h - 2 * pad) * to_double(y) / (l / 2); };
    auto polyline = [&](const PLF& f) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(3);
        for (const auto& p : f.points())
            s << (&p == &f.points().front() ? "" : " ") << px(p.x) << ',' << py(p.y);
        return s.str();
    };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n"
       << "  <polyline points=\"" << polyline(tent(d.window()))
       << "\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n"
       << "  <polyline points=\"" << polyline(d.path()) << "\" fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"2\"/>\n"
       << "</svg>\n";
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write '" + path + "'");
    return out;
}

DyckPath eval_file(const std::string& scenario, const std::string& formula, Bundle& keep)
{
    keep = load_bundle(read_json(scenario));
    return Evaluator(keep).prop(read_json(formula));
}

const char* verdict(bool b)
{
    return b ? "forced" : "not forced";
}

int cmd_nas(const std::string& file, const std::vector<std::string>& perturb)
{
    const Json j = read_json(file);
    const NasParams params = json::nas_params(j, "$");
    const Clock clock = j.contains("clock") ? json::clock(j["clock"], "$.clock") : Clock(-1, 11);
    const Rational a0 = j.contains("a0") ? json::rational(j["a0"], "$.a0") : Rational(0);

    NasParams checked = params;
    for (const auto& kv : perturb) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw Error("--perturb expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const Rational v = parse_rational(kv.substr(eq + 1));
        if (key == "safe")
            checked.safe = v;
        else if (key == "margin")
            checked.margin = v;
        else if (key == "del")
            checked.del = v;
        else if (key == "rate")
            checked.rate = v;
        else
            throw Error("--perturb: unknown parameter '" + key + "'");
    }
    if (checked.rate <= 0 || checked.safe <= 0 || checked.del < 0)
        throw Error("--perturb: safe and rate must stay positive, del non-negative");

    // The witness follows the nominal parameters; the contracts are checked
    // against the (possibly perturbed) ones.
    Scenario s = simulate_closed_loop(params, clock, a0);
    s.params = checked;

    std::cout << "M = " << to_string(checked.horizon()) << '\n';
    bool all = true;
    for (const auto& c : nas_contracts()) {
        const bool f = forces(c.build(s));
        all = all && f;
        std::cout << c.name << ": " << verdict(f) << '\n';
    }
    const Verdict v = check_system(s, nas_contracts(), safety_goal);
    std::cout << "safety: " << verdict(v.goal) << '\n' << "implication: " << verdict(v.implication) << '\n';
    return all && v.goal ? 0 : 1;
}

int cmd_mtl(const std::string& file, const std::string& formula, bool dualities, const std::string& csv)
{
    const Bundle b = load_bundle(read_json(file));
    if (dualities) {
        std::size_t checks = 0;
        bool ok = true;
        for (const auto& [pn, p] : b.signals) {
            ok = ok && diamond(p) == not_(box(not_(p)));
            ++checks;
            for (const auto& [qn, q] : b.signals) {
                ok = ok && until(p, q) == not_(release(not_(p), not_(q)));
                ++checks;
            }
        }
        std::cout << "dualities: " << (ok ? "pass" : "FAIL") << " (" << checks << " checks)\n";
        if (formula.empty())
            return ok ? 0 : 1;
        if (!ok)
            return 1;
    }
    if (formula.empty())
        throw Error("mtl: give a formula file or --dualities");
    const BoolSignal s = Evaluator(b).signal(read_json(formula));
    std::cout << json::to_json(s).dump() << '\n';
    if (!csv.empty()) {
        auto out = open_out(csv);
        out << "lo,hi,lo_closed,hi_closed\n";
        for (const auto& sp : s.spans())
            out << to_string(sp.lo) << ',' << to_string(sp.hi) << ',' << sp.lo_closed << ',' << sp.hi_closed << '\n';
    }
    const bool at0 = s.contains(0);
    std::cout << "holds at 0: " << (at0 ? "yes" : "no") << '\n';
    return at0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Temporal type theory semantics engine"};
    app.require_subcommand(1);

    std::string scenario, formula, csv, out, params;
    std::string from, to;
    std::vector<std::string> perturb;
    bool dualities = false;

    auto* eval = app.add_subcommand("eval", "exit 0 iff the formula is forced over the whole window");
    eval->add_option("scenario", scenario, "scenario JSON")->required();
    eval->add_option("formula", formula, "formula JSON")->required();
    eval->add_option("--csv", csv, "write (x, D(x)) samples");

    auto* force = app.add_subcommand("force", "exit 0 iff the subwindow [from, to] forces the formula");
    force->add_option("scenario", scenario)->required();
    force->add_option("formula", formula)->required();
    force->add_option("--from", from, "clock reading at the subwindow start")->required();
    force->add_option("--to", to, "clock reading at the subwindow end")->required();

    auto* nas = app.add_subcommand("nas", "altitude-hold case study");
    nas->add_option("params", params, "parameter JSON")->required();
    nas->add_option("--perturb", perturb, "key=value override used when checking contracts");

    auto* mtl = app.add_subcommand("mtl", "evaluate a signal formula");
    mtl->add_option("signals", scenario, "bundle with signals")->required();
    mtl->add_option("formula", formula, "signal formula JSON");
    mtl->add_flag("--dualities", dualities, "check the operator dualities on every signal");
    mtl->add_option("--csv", csv, "write the resulting spans");

    auto* plot = app.add_subcommand("plot", "export a path as CSV or SVG");
    plot->add_option("scenario", scenario)->required();
    plot->add_option("formula", formula)->required();
    plot->add_option("--out", out, "output file (.svg or .csv)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        Bundle b{Clock(0, 1), {}, {}, {}, {}};
        if (*eval) {
            const DyckPath d = eval_file(scenario, formula, b);
            if (!csv.empty()) {
                auto o = open_out(csv);
                write_csv(o, d);
            }
            const bool f = forces(d);
            std::cout << verdict(f) << '\n';
            return f ? 0 : 1;
        }
        if (*force) {
            const DyckPath d = eval_file(scenario, formula, b);
            const Rational a = b.clock.local(parse_rational(from));
            const Rational c = b.clock.local(parse_rational(to));
            const bool f = forces(d, a, c);
            std::cout << verdict(f) << '\n';
            return f ? 0 : 1;
        }
        if (*nas)
            return cmd_nas(params, perturb);
        if (*mtl)
            return cmd_mtl(scenario, formula, dualities, csv);
        if (*plot) {
            const DyckPath d = eval_file(scenario, formula, b);
            auto o = open_out(out);
            if (out.size() >= 4 && out.substr(out.size() - 4) == ".svg")
                write_svg(o, d);
            else
                write_csv(o, d);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
