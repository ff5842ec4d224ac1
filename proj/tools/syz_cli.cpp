#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "syz/pl_retractions.hpp"
#include "syz/spec_io.hpp"

using namespace syz;

namespace {

constexpr int kUsage = 2;

struct UsageError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DegenerationSpec load_spec(const std::string& path) { return parse_spec(read_file(path)); }

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + out + "'");
    f << text;
}

std::vector<Rational> parse_points(const std::vector<std::string>& xs) {
    std::vector<Rational> out;
    for (const auto& x : xs) {
        try {
            out.push_back(parse_rational(x));
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
    return out;
}

DegenerationSpec named_scenario(const std::string& name, const std::vector<std::string>& points,
                                const std::vector<std::size_t>& edge) {
    auto known = scenario_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
        std::string list;
        for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
        throw UsageError("unknown scenario '" + name + "' (available: " + list + ")");
    }
    auto pts = parse_points(points);
    if (name == "k3-combined") return k3_combined(pts);
    if (name == "k3-dispersion") {
        Face e{0, 1};
        if (!edge.empty()) {
            if (edge.size() != 2 || edge[0] < 1 || edge[1] < 1) throw UsageError("--edge takes two 1-based vertices");
            e = {std::min(edge[0], edge[1]) - 1, std::max(edge[0], edge[1]) - 1};
        }
        return k3_dispersion(e, pts);
    }
    if (!pts.empty() || !edge.empty()) throw UsageError("--points/--edge apply to k3-combined and k3-dispersion only");
    return scenario_by_name(name);
}

std::string pad(std::string s, std::size_t w) {
    if (s.size() < w) s += std::string(w - s.size(), ' ');
    return s;
}

std::string text_report(const ScenarioReport& r) {
    std::ostringstream o;
    o << "scenario " << r.scenario << "\n";
    if (!r.monodromy.empty()) {
        std::size_t w = 4;
        for (const auto& e : r.monodromy) w = std::max(w, e.loop.size());
        o << "\n" << pad("loop", w) << "  origin  basis          monodromy              oracle\n";
        for (const auto& e : r.monodromy) {
            std::string basis = "(";
            for (std::size_t k = 0; k < e.basis.size(); ++k) basis += (k ? "," : "") + e.basis[k];
            basis += ")";
            o << pad(e.loop, w) << "  " << pad(e.origin, 6) << "  " << pad(basis, 13) << "  "
              << pad(format(e.closed_form), 21) << "  " << (e.agree ? "agrees" : "DIFFERS: " + format(e.oracle));
            if (!e.orientation.empty()) o << "  [" << e.orientation << "]";
            o << "\n";
        }
    }
    o << "\n";
    for (const auto& x : r.records)
        if (!x.passed) o << "FAIL " << x.name << ": expected " << x.expected << ", got " << x.actual << "\n";
    o << r.records.size() << " records, " << r.failures() << " failed\n";
    return o.str();
}

int finish_report(const ScenarioReport& r, bool as_json, const std::string& out) {
    emit(as_json ? dump_report(r) : text_report(r), out);
    return r.ok() ? 0 : 1;
}

PLMap retraction_by_name(const std::string& name) {
    if (name == "quintic-vertex") return quintic_vertex_retraction();
    if (name == "quintic-combinatorial") return quintic_combinatorial_retraction();
    if (name == "collapse") return collapse_kappa();
    if (name == "pi-prime") return pi_prime();
    if (name == "wing-model") return wing_model_retraction();
    if (name.rfind("wing(", 0) == 0 && name.back() == ')') {
        Rational a;
        try {
            a = parse_rational(name.substr(5, name.size() - 6));
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        return ks_wing_retraction(a);
    }
    throw UsageError("unknown map '" + name +
                     "' (available: quintic-vertex, quintic-combinatorial, collapse, pi-prime, wing-model, wing(a))");
}

std::string theorem_b_text(const StratumData& d, const TheoremBReport& t) {
    std::ostringstream o;
    o << "stratum " << d.id << ": dim Z = " << d.r << ", |J| = " << d.j_size() << ", |L| = " << d.l_size() << "\n";
    o << "  lambda " << format(d.lambda) << "\n";
    o << "  complete: " << (t.complete ? "yes" : "no (" + t.completeness + ")") << "\n";
    o << "  smooth: " << (t.smooth ? "yes" : "no") << "\n";
    for (const auto& e : t.nef) {
        o << "  nef j=" << e.j << ": " << (e.nef ? "yes" : "no");
        if (!e.nef && e.wall) o << " (degree " << to_string(e.value) << " on wall " << *e.wall << ")";
        o << "\n";
    }
    o << "  cone-change cycles: " << (t.loop_independent ? "identity" : t.loop_failure.empty() ? "not checked" : t.loop_failure)
      << " (" << t.cycles_checked << " checked)\n";
    o << "  verdict: " << t.verdict << "\n";
    return o.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact combinatorics of non-archimedean SYZ fibrations"};
    app.require_subcommand(1);

    bool as_json = false;
    std::size_t samples = 12;
    std::string out;
    auto common = [&](CLI::App* c) {
        c->add_flag("--json", as_json, "emit the JSON report");
        c->add_option("--samples", samples, "verification grid density")->check(CLI::PositiveNumber);
        c->add_option("--out", out, "write output to a file");
    };

    std::string name, spec_path, loop_name, stratum_id, map_name;
    std::vector<std::string> points, coords;
    std::vector<std::size_t> edge;

    auto* list = app.add_subcommand("list", "list built-in scenarios");

    auto* scenario = app.add_subcommand("scenario", "run a built-in scenario");
    scenario->add_option("name", name, "scenario name")->required();
    scenario->add_option("--points", points, "a_e values (k3-combined: one per edge; k3-dispersion: four)");
    scenario->add_option("--edge", edge, "dispersion edge as two 1-based vertices")->expected(2);
    common(scenario);

    auto* exp = app.add_subcommand("export", "write a built-in scenario as a spec document");
    exp->add_option("name", name, "scenario name")->required();
    exp->add_option("--points", points, "a_e values");
    exp->add_option("--edge", edge, "dispersion edge")->expected(2);
    exp->add_option("--out", out, "write output to a file");

    auto* run = app.add_subcommand("run", "evaluate a spec document");
    run->add_option("spec", spec_path, "spec file")->required();
    common(run);

    auto* mono = app.add_subcommand("monodromy", "monodromy of one loop of a spec document");
    mono->add_option("spec", spec_path, "spec file")->required();
    mono->add_option("loop", loop_name, "loop name")->required();
    common(mono);

    auto* toric = app.add_subcommand("check-toric", "toricity checks for one stratum of a spec document");
    toric->add_option("spec", spec_path, "spec file")->required();
    toric->add_option("stratum", stratum_id, "stratum id")->required();
    common(toric);

    auto* retract = app.add_subcommand("retract", "retraction maps");
    retract->require_subcommand(1);
    auto* reval = retract->add_subcommand("eval", "evaluate a retraction map at a rational point");
    reval->add_option("map", map_name, "map name")->required();
    reval->add_option("point", coords, "coordinates as exact fractions")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (list->parsed()) {
            for (const auto& n : scenario_names()) std::cout << n << "\n";
            return 0;
        }
        if (scenario->parsed()) {
            auto s = named_scenario(name, points, edge);
            return finish_report(evaluate(s, {samples}), as_json, out);
        }
        if (exp->parsed()) {
            emit(dump_spec(named_scenario(name, points, edge)), out);
            return 0;
        }
        if (run->parsed()) return finish_report(evaluate(load_spec(spec_path), {samples}), as_json, out);
        if (mono->parsed()) {
            auto s = load_spec(spec_path);
            auto problems = validate_spec(s);
            if (!problems.empty()) throw SpecError("", problems.front());
            const LoopSpec* loop = nullptr;
            for (const auto& l : s.loops)
                if (l.name == loop_name) loop = &l;
            if (!loop) throw UsageError("unknown loop '" + loop_name + "'");
            auto e = evaluate_loop(s, *loop);
            bool ok = e.agree && (!e.expected || *e.expected == e.closed_form);
            if (as_json) {
                ScenarioReport r;
                r.scenario = s.name;
                r.monodromy.push_back(e);
                r.records.push_back({loop_name + ": transport oracle", e.agree, format(e.closed_form), format(e.oracle), "oracle"});
                if (e.expected)
                    r.records.push_back({loop_name + ": value", *e.expected == e.closed_form, format(*e.expected),
                                         format(e.closed_form), e.ref});
                emit(dump_report(r), out);
            } else {
                std::ostringstream o;
                std::string basis;
                for (const auto& b : e.basis) basis += (basis.empty() ? "" : ",") + b;
                o << "loop " << e.loop << " origin " << e.origin << " basis (" << basis << ")";
                if (!e.orientation.empty()) o << " orientation " << e.orientation;
                o << "\nclosed form: " << format(e.closed_form) << "\noracle:      " << format(e.oracle) << "\n";
                if (e.change_of_basis.rows()) o << "change of basis: " << format(e.change_of_basis) << "\n";
                if (e.expected) o << "expected:    " << format(*e.expected) << "\n";
                o << (ok ? "ok" : "MISMATCH") << "\n";
                emit(o.str(), out);
            }
            return ok ? 0 : 1;
        }
        if (toric->parsed()) {
            auto s = load_spec(spec_path);
            auto problems = validate_spec(s);
            if (!problems.empty()) throw SpecError("", problems.front());
            const StratumSpec* st = nullptr;
            for (const auto& x : s.strata)
                if (x.id == stratum_id) st = &x;
            if (!st) throw UsageError("unknown stratum '" + stratum_id + "'");
            auto data = stratum_data(s, *st);
            ScenarioReport r;
            r.scenario = s.name;
            r.records = stratum_records(s, *st);
            std::string text;
            bool certified = false;
            if (!data) {
                text = "stratum " + stratum_id + ": cannot certify (no fan data)\n";
            } else {
                auto t = check_theorem_b(*data);
                certified = t.certified;
                text = theorem_b_text(*data, t);
            }
            for (const auto& x : r.records)
                if (!x.passed) text += "FAIL " + x.name + ": expected " + x.expected + ", got " + x.actual + "\n";
            emit(as_json ? dump_report(r) : text, out);
            return certified && r.ok() ? 0 : 1;
        }
        if (reval->parsed()) {
            PLMap m = retraction_by_name(map_name);
            RatVec p(parse_points(coords));
            if (p.dim() != m.in_dim)
                throw UsageError("map " + map_name + " takes " + std::to_string(m.in_dim) + " coordinates");
            RatVec img = eval(m, p);
            std::string line;
            for (const auto& x : img) line += (line.empty() ? "" : " ") + to_string(x);
            std::cout << line << "\n";
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    } catch (const SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kUsage;
}
