
#include "doctest.h"
#include "oracles.hpp"
#include "syz/spec_io.hpp"

using namespace syz;

namespace {

IntMatrix m2(long a, long b, long c, long d) { return IntMatrix{{a, b}, {c, d}}; }

const MonodromyEntry& entry(const ScenarioReport& r, const std::string& loop) {
    for (const auto& e : r.monodromy)
        if (e.loop == loop) return e;
    FAIL("no loop " << loop);
    return r.monodromy.front();
}

// K3 rule on X with blow-up order o: C_ab . D_x = -3 when x is the later of a, b in o, else 1.
Integer k3_rule(const std::vector<std::size_t>& o, std::size_t a, std::size_t b, std::size_t x) {
    auto pos = [&](std::size_t v) { return std::find(o.begin(), o.end(), v) - o.begin(); };
    std::size_t later = pos(a) > pos(b) ? a : b;
    return x == later ? -3 : 1;
}

IntMatrix product_2d(const std::vector<Integer>& b) {
    IntMatrix t = IntMatrix::identity(2);
    for (const auto& x : b) t = IntMatrix{{x, 1}, {-1, 0}} * t;
    return t;
}

std::string failures(const ScenarioReport& r) {
    std::string out;
    for (const auto& x : r.records)
        if (!x.passed) out += x.name + " [" + x.expected + " | " + x.actual + "]\n";
    return out;
}

}  // namespace

TEST_CASE("built-in scenarios evaluate without failed records") {
    for (const auto& name : scenario_names()) {
        CAPTURE(name);
        auto r = evaluate(scenario_by_name(name), {6});
        CHECK(failures(r) == "");
        CHECK(r.ok());
        for (const auto& e : r.monodromy) CHECK(e.agree);
    }
}

TEST_CASE("quartic K3 vertex monodromies") {
    auto s = quartic_k3();
    auto r = evaluate(s, {4});
    const auto& gi = entry(r, "X_123:gamma_1");
    CHECK(gi.closed_form == m2(21, 8, -8, -3));
    CHECK(gi.b_cycle == std::vector<Integer>{3, 3, 3});
    const auto& gj = entry(r, "X_123:gamma_2");
    CHECK(gj.closed_form == m2(-15, -4, 4, 1));
    CHECK(gj.b_cycle == std::vector<Integer>{3, -1, 3});
    const auto& gk = entry(r, "X_123:gamma_3");
    CHECK(gk.rule == m2(1, -4, 0, 1));
    CHECK(gk.closed_form == m2(1, 0, 4, 1));
    CHECK(gk.orientation == "inverse-swap");
    CHECK(entry(r, "X_123:gamma_4").closed_form == IntMatrix::identity(2));

    // Every vertex loop of every model against the ordering rule.
    for (const auto& l : s.loops) {
        CAPTURE(l.name);
        const auto& m = s.model(l.models[0]);
        std::vector<Integer> b;
        for (auto y : l.cycle) b.push_back(-k3_rule(m.order, l.origin, y, y));
        CHECK(entry(r, l.name).rule == product_2d(b));
        CHECK(entry(r, l.name).b_cycle == b);
    }
}

TEST_CASE("charges of the K3 vertex cycles") {
    CHECK(charge({3, 3, 3}) == 12);
    CHECK(charge({3, -1, 3}) == 8);
    CHECK(charge({3, -1, -1}) == 4);
    CHECK(charge({-1, -1, -1}) == 0);
}

TEST_CASE("K3 combined model edges") {
    auto r = evaluate(k3_combined(), {4});
    for (const auto& name : {"gamma_a_e12", "gamma_a_e13", "gamma_a_e14", "gamma_a_e23", "gamma_a_e24", "gamma_a_e34"})
        CHECK(entry(r, name).closed_form == m2(1, 0, 4, 1));
    const auto& e12 = entry(r, "gamma_a_e12");
    CHECK(e12.origin == "v2");
    CHECK(e12.basis == std::vector<std::string>{"v3", "v1"});
    for (const auto& name : {"gamma_1", "gamma_2", "gamma_3", "gamma_4"})
        CHECK(entry(r, name).closed_form == IntMatrix::identity(2));

    // The edge matrix does not depend on where a_e sits.
    auto moved = evaluate(k3_combined({rat(-1, 2), rat(1, 3), rat(0), rat(7, 8), rat(-9, 10), rat(1, 100)}), {4});
    CHECK(moved.ok());
    for (std::size_t k = 0; k < r.monodromy.size(); ++k)
        CHECK(moved.monodromy[k].closed_form == r.monodromy[k].closed_form);
}

TEST_CASE("K3 dispersion") {
    auto s = k3_dispersion();
    std::vector<Integer> b;
    for (long j = 0; j <= 4; ++j) b.push_back(-s.model("X_e," + std::to_string(j)).at({0, 1}, 0));
    CHECK(b == std::vector<Integer>{3, 2, 1, 0, -1});
    auto r = evaluate(s, {4});
    CHECK(r.ok());
    std::vector<IntMatrix> parts;
    for (int i = 1; i <= 4; ++i) {
        auto t = entry(r, "gamma_a_e," + std::to_string(i)).closed_form;
        CHECK(t == m2(1, 0, 1, 1));
        parts.push_back(t);
    }
    CHECK(oracle::mat_product(parts) == m2(1, 0, 4, 1));
    CHECK(entry(r, "gamma_e").closed_form == m2(1, 0, 4, 1));

    // Other edges and other interior points give the same matrices.
    auto r2 = evaluate(k3_dispersion({1, 3}, {rat(-9, 10), rat(-1, 2), rat(0), rat(1, 7)}), {4});
    CHECK(r2.ok());
    CHECK(entry(r2, "gamma_a_e,3").closed_form == m2(1, 0, 1, 1));

    CHECK_THROWS_AS(k3_dispersion({0, 1}, {rat(0), rat(0), rat(1, 2), rat(3, 4)}), Error);
    CHECK_THROWS_AS(k3_dispersion({0, 1}, {rat(-1), rat(0), rat(1, 2), rat(3, 4)}), Error);
    CHECK_THROWS_AS(k3_dispersion({0, 1}, {rat(0)}), Error);
    CHECK_THROWS_AS(k3_dispersion({0, 0}), Error);
}

TEST_CASE("K3 collisions") {
    auto r = evaluate(k3_collision(), {4});
    CHECK(failures(r) == "");
    CHECK(entry(r, "none:gamma_2").closed_form == IntMatrix::identity(2));
    CHECK(entry(r, "none:gamma_a_e24").closed_form == m2(1, 0, 4, 1));
    CHECK(entry(r, "none:gamma_a_e23@(v3,v4)").closed_form == m2(1, -4, 0, 1));
    CHECK(entry(r, "one:gamma_2").closed_form == m2(1, 0, 4, 1));
    CHECK(entry(r, "both:gamma_2").closed_form == m2(-15, -4, 4, 1));
    CHECK(m2(1, -4, 0, 1) * m2(1, 0, 4, 1) == m2(-15, -4, 4, 1));
}

TEST_CASE("quintic monodromies and relations") {
    auto r = evaluate(quintic(), {4});
    auto t34 = entry(r, "gamma_234_34").closed_form;
    auto t23 = entry(r, "gamma_234_23").closed_form;
    auto t24 = entry(r, "gamma_234_24").closed_form;
    auto t124 = entry(r, "gamma_124_24").closed_form;
    auto t245 = entry(r, "gamma_245_24").closed_form;
    CHECK(t34 == IntMatrix{{1, 0, 0}, {0, 1, 0}, {5, 0, 1}});
    CHECK(t23 == IntMatrix{{1, 0, 0}, {5, 1, 0}, {-5, 0, 1}});
    CHECK(t24 == IntMatrix{{1, 0, 0}, {5, 1, 0}, {0, 0, 1}});
    CHECK(t124 == IntMatrix{{1, 0, 0}, {0, 1, 5}, {0, 0, 1}});
    CHECK(t245 == IntMatrix{{1, 0, 0}, {5, 1, -5}, {0, 0, 1}});
    IntMatrix p{{1, 0, -1}, {0, 1, 4}, {0, 0, -1}};
    CHECK(entry(r, "gamma_245_24").change_of_basis == p);
    CHECK(oracle::mat_product({p, entry(r, "gamma_245_24'").closed_form, p}) == t245);
    CHECK(t34 * t23 == t24);
    CHECK(t124 * t245 == t24);
    for (const auto* name : {"gamma_234_34", "gamma_234_23", "gamma_234_24", "gamma_124_24", "gamma_245_24"}) {
        auto d = entry(r, name).closed_form - IntMatrix::identity(3);
        CHECK(rank(d) == 1);
        auto f = semisimple_factor(entry(r, name).closed_form, 5);
        CHECK(f.status == SemisimpleFactor::Status::Factored);
    }
}

TEST_CASE("quintic strata verdicts") {
    auto s = quintic();
    for (const auto& st : s.strata) {
        CAPTURE(st.id);
        auto recs = stratum_records(s, st);
        auto verdict = std::find_if(recs.begin(), recs.end(), [](const Record& x) {
            return x.name.size() >= 7 && x.name.substr(x.name.size() - 7) == "verdict";
        });
        REQUIRE(verdict != recs.end());
        CHECK(verdict->passed);
        if (st.source == StratumSpec::Source::None) CHECK(verdict->actual.find("cannot certify") == 0);
    }
    auto d = stratum_data(s, s.strata.front());
    REQUIRE(d);
    CHECK(d->r == 3);
    CHECK(check_theorem_b(*d).certified);
    CHECK(!stratum_data(s, s.strata.back()));
}

TEST_CASE("explicit fan and lambda overrides") {
    auto s = quartic_k3();
    StratumSpec st = s.strata.front();
    st.lambda = IntMatrix(0, 3);
    CHECK(check_theorem_b(*stratum_data(s, st)).certified);
    st.fan_z = fans::p1xp1();
    CHECK_THROWS_AS(stratum_data(s, st), Error);

    auto local = quintic_local_model();
    StratumSpec z = local.strata.front();
    auto clean = check_theorem_b(*stratum_data(local, z));
    CHECK(clean.certified);
    z.lambda = IntMatrix{{-1, 0, 0, 0}};
    auto bad = check_theorem_b(*stratum_data(local, z));
    CHECK(!bad.certified);
    bool witness = false;
    for (const auto& e : bad.nef) witness = witness || (!e.nef && e.wall.has_value());
    CHECK(witness);
}

TEST_CASE("quintic local model") {
    auto r = evaluate(quintic_local_model(), {4});
    CHECK(failures(r) == "");
    auto has = [&](const std::string& name, const std::string& actual) {
        for (const auto& x : r.records)
            if (x.name == name) return x.actual == actual;
        return false;
    };
    CHECK(has("local V_123: skeleton cells", "4"));
    CHECK(has("local G: skeleton cells", "9"));
    CHECK(has("local V_123: interior edges", "{<v13,v2>}"));
    CHECK(has("local U_12: image of v12", "v1"));
    CHECK(has("local U_12: image of v23", "v2"));
}

TEST_CASE("Fermat charts") {
    RatVec w{rat(1, 2), rat(1, 4), rat(1, 4), 0, 0};
    CHECK(fermat_chart(3, 0, w) == RatVec{rat(1, 4), rat(1, 4), 0});
    CHECK(fermat_chart(3, 4, w) == RatVec{rat(1, 2), rat(1, 4), rat(1, 4)});
    CHECK_THROWS_AS(fermat_chart(3, 5, w), Error);
    CHECK_THROWS_AS(fermat_li_charts(4), Error);
    CHECK_THROWS_AS(fermat_li_charts(1), Error);
    CHECK(evaluate(fermat_li_charts(2), {4}).ok());
}

TEST_CASE("spec validation") {
    auto s = quartic_k3();
    CHECK(validate_spec(s).empty());
    auto bad = s;
    bad.models[0].numbers(0, 0) += 1;
    CHECK(!validate_spec(bad).empty());
    CHECK(!evaluate(bad, {4}).ok());
    bad = s;
    bad.loops[0].models = {"X_999"};
    CHECK(!validate_spec(bad).empty());
    bad = s;
    bad.loops[0].cycle = {1, 2};
    CHECK(!validate_spec(bad).empty());
    bad = s;
    bad.loops[0].orientation = "sideways";
    CHECK(!validate_spec(bad).empty());
    bad = s;
    bad.relations.push_back({"r", {"nope"}, "X_123:gamma_1", ""});
    CHECK(!validate_spec(bad).empty());
    CHECK_THROWS_AS(scenario_by_name("nosuch"), Error);
}

TEST_CASE("export and ingest reproduce the report") {
    for (const auto& name : scenario_names()) {
        CAPTURE(name);
        auto s = scenario_by_name(name);
        auto text = dump_spec(s);
        auto s2 = parse_spec(text);
        CHECK(dump_spec(s2) == text);
        CHECK(dump_report(evaluate(s, {3})) == dump_report(evaluate(s2, {3})));
    }
}

TEST_CASE("spec parse errors") {
    auto j = spec_to_json(k3_collision());
    auto expect_path = [](const nlohmann::ordered_json& doc, const std::string& path) {
        try {
            spec_from_json(doc);
            FAIL("accepted");
        } catch (const SpecError& e) {
            CHECK(e.path == path);
        }
    };
    auto a = j;
    a["extra"] = 1;
    expect_path(a, "/extra");
    a = j;
    a["schema"] = 2;
    expect_path(a, "/schema");
    a = j;
    a["loops"][1]["origin"] = 17;
    expect_path(a, "/loops/1/origin");
    a = j;
    a["loops"][0]["kind"] = "spiral";
    expect_path(a, "/loops/0/kind");
    a = j;
    a["models"][0]["numbers"][1] = nlohmann::ordered_json::array({1, 2});
    expect_path(a, "/models/0/numbers/1");
    a = j;
    a.erase("complex");
    expect_path(a, "/complex");
    a = j;
    a["wings"] = nlohmann::ordered_json::array({{{"edge", {0, 1}}, {"points", {"1/0"}}}});
    expect_path(a, "/wings/0/points/0");

    try {
        parse_spec("{\n  \"schema\": 1,\n  \"name\": [,\n}");
        FAIL("accepted");
    } catch (const SpecError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("rationals survive serialization exactly") {
    auto s = k3_dispersion({0, 1}, {rat(-1, 2), rat(-123456789, 987654321), rat(1, 3), rat(2, 3)});
    auto s2 = parse_spec(dump_spec(s));
    CHECK(s2.wings[0].points == s.wings[0].points);
    auto j = spec_to_json(s);
    CHECK(j["wings"][0]["points"][1] == "-13717421/109739369");
}
