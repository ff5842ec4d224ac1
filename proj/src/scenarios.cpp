#include "syz/scenarios.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace syz {

std::optional<std::size_t> TableModel::untouched() const {
    if (order.empty()) return std::nullopt;
    return order.back();
}

Integer TableModel::at(const Face& curve, std::size_t component) const {
    Face c = curve;
    std::sort(c.begin(), c.end());
    for (std::size_t r = 0; r < curves.size(); ++r)
        if (curves[r] == c) {
            if (component >= numbers.cols()) throw Error(name + ": component out of range");
            return numbers(r, component);
        }
    std::string f;
    for (auto v : c) f += (f.empty() ? "" : ",") + std::to_string(v + 1);
    throw Error(name + ": no intersection row for curve {" + f + "}");
}

const TableModel& DegenerationSpec::model(const std::string& nm) const {
    for (const auto& m : models)
        if (m.name == nm) return m;
    throw Error("unknown model '" + nm + "'");
}

const LoopSpec& DegenerationSpec::loop(const std::string& nm) const {
    for (const auto& l : loops)
        if (l.name == nm) return l;
    throw Error("unknown loop '" + nm + "'");
}

std::size_t ScenarioReport::failures() const {
    return std::size_t(std::count_if(records.begin(), records.end(), [](const Record& r) { return !r.passed; }));
}

TableModel model_from_roles(std::string name, const std::vector<std::size_t>& order,
                            const std::vector<Face>& role_curves, const IntMatrix& role_table) {
    if (role_table.cols() != order.size() || role_table.rows() != role_curves.size())
        throw Error("model_from_roles: table shape does not match the roles");
    TableModel m;
    m.name = std::move(name);
    m.order = order;
    m.numbers = IntMatrix(role_curves.size(), order.size());
    for (std::size_t r = 0; r < role_curves.size(); ++r) {
        Face c;
        for (auto p : role_curves[r]) c.push_back(order.at(p));
        std::sort(c.begin(), c.end());
        m.curves.push_back(c);
        for (std::size_t p = 0; p < order.size(); ++p) m.numbers(r, order[p]) = role_table(r, p);
    }
    return m;
}

namespace {

std::string digits(const std::vector<std::size_t>& vs) {
    std::string out;
    for (auto v : vs) out += std::to_string(v + 1);
    return out;
}

DualComplex named_boundary(std::size_t m) {
    DualComplex c = simplex_complex(m, true);
    for (std::size_t i = 0; i <= m; ++i) c.vertex_names[i] = "v" + std::to_string(i + 1);
    return c;
}

// Roles (i, j, k, h) of a quartic model X_ijk.
const std::vector<Face>& k3_role_curves() {
    static const std::vector<Face> c{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return c;
}

const IntMatrix& k3_role_table() {
    static const IntMatrix t{{1, -3, 1, 1}, {1, 1, -3, 1}, {1, 1, 1, -3},
                             {1, 1, -3, 1}, {1, 1, 1, -3}, {1, 1, 1, -3}};
    return t;
}

// Roles (i, j, k, l, h) of a quintic model X_ijkl.
const std::vector<Face>& quintic_role_curves() {
    static const std::vector<Face> c{{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4},
                                     {0, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
    return c;
}

const IntMatrix& quintic_role_table() {
    static const IntMatrix t{{1, 1, -4, 1, 1}, {1, 1, 1, -4, 1}, {1, 1, 1, 1, -4}, {1, 1, 1, -4, 1},
                             {1, 1, 1, 1, -4}, {1, 1, 1, 1, -4}, {1, 1, 1, -4, 1}, {1, 1, 1, 1, -4},
                             {1, 1, 1, 1, -4}, {1, 1, 1, 1, -4}};
    return t;
}

TableModel k3_model(const std::vector<std::size_t>& order) {
    return model_from_roles("X_" + digits({order[0], order[1], order[2]}), order, k3_role_curves(), k3_role_table());
}

// The model leaving component h untouched, other components blown up in increasing order.
std::vector<std::size_t> order_untouched(std::size_t count, std::size_t h) {
    std::vector<std::size_t> o;
    for (std::size_t v = 0; v < count; ++v)
        if (v != h) o.push_back(v);
    o.push_back(h);
    return o;
}

std::string k3_name_untouched(std::size_t h) {
    auto o = order_untouched(4, h);
    o.pop_back();
    return "X_" + digits(o);
}

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<long>> r(rows.begin(), rows.end());
    IntMatrix m(r.size(), r.empty() ? 0 : r[0].size());
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r[i].size(); ++j) m(i, j) = r[i][j];
    return m;
}

LoopSpec vertex_loop(std::string name, std::size_t origin, std::vector<std::size_t> sigma_rest,
                     std::vector<std::size_t> cycle, std::string model) {
    LoopSpec l;
    l.name = std::move(name);
    l.kind = LoopSpec::Kind::Vertex;
    l.origin = origin;
    l.face = std::move(sigma_rest);
    l.cycle = std::move(cycle);
    l.models = {std::move(model)};
    return l;
}

LoopSpec combination_loop(std::string name, std::size_t origin, std::vector<std::size_t> face_rest, std::size_t i0,
                          std::size_t i_inf, std::string x, std::string x2) {
    LoopSpec l;
    l.name = std::move(name);
    l.kind = LoopSpec::Kind::Combination;
    l.origin = origin;
    l.face = std::move(face_rest);
    l.cycle = {i0, i_inf};
    l.models = {std::move(x), std::move(x2)};
    return l;
}

std::vector<std::size_t> others(std::size_t count, std::initializer_list<std::size_t> skip) {
    std::vector<std::size_t> o;
    for (std::size_t v = 0; v < count; ++v)
        if (std::find(skip.begin(), skip.end(), v) == skip.end()) o.push_back(v);
    return o;
}

StratumSpec table_stratum(std::string id, std::string model, Face components, std::optional<bool> expect) {
    StratumSpec st;
    st.id = std::move(id);
    st.source = StratumSpec::Source::Table;
    st.model = std::move(model);
    std::sort(components.begin(), components.end());
    st.components = std::move(components);
    st.expect_certified = expect;
    return st;
}

// Vertex loops of one K3 model with the role orientations of the single-model display.
void add_k3_vertex_loops(DegenerationSpec& s, const TableModel& m, bool with_paper_values) {
    const auto& o = m.order;
    const std::size_t i = o[0], j = o[1], k = o[2], h = o[3];
    auto li = vertex_loop(m.name + ":gamma_" + std::to_string(i + 1), i, {}, {k, h, j}, m.name);
    auto lj = vertex_loop(m.name + ":gamma_" + std::to_string(j + 1), j, {}, {h, i, k}, m.name);
    auto lk = vertex_loop(m.name + ":gamma_" + std::to_string(k + 1), k, {}, {i, j, h}, m.name);
    auto lh = vertex_loop(m.name + ":gamma_" + std::to_string(h + 1), h, {}, {i, j, k}, m.name);
    lk.orientation = "inverse-swap";
    if (with_paper_values) {
        li.expected = mat({{21, 8}, {-8, -3}});
        lj.expected = mat({{-15, -4}, {4, 1}});
        lk.expected = mat({{1, 0}, {4, 1}});
        li.ref = lj.ref = lk.ref = "k3-single-model";
    }
    lh.expected = IntMatrix::identity(2);
    lh.ref = "toric-vertex";
    for (auto* l : {&li, &lj, &lk, &lh}) s.loops.push_back(*l);
}

}  // namespace

DegenerationSpec quartic_k3() {
    DegenerationSpec s;
    s.name = "quartic-k3";
    s.n = 2;
    s.complex = named_boundary(3);
    for (std::size_t h = 4; h-- > 0;) s.models.push_back(k3_model(order_untouched(4, h)));
    for (const auto& m : s.models) add_k3_vertex_loops(s, m, true);
    for (const auto& m : s.models) {
        std::size_t h = *m.untouched();
        s.strata.push_back(table_stratum(m.name + ":D_" + std::to_string(h + 1), m.name, {h}, true));
    }
    const auto& x123 = s.models.front();
    for (const auto& c : x123.curves)
        s.strata.push_back(table_stratum(x123.name + ":C_" + digits(c), x123.name, c, false));
    return s;
}

DegenerationSpec k3_combined(const std::vector<Rational>& a_e) {
    DegenerationSpec s;
    s.name = "k3-combined";
    s.n = 2;
    s.complex = named_boundary(3);
    for (std::size_t h = 4; h-- > 0;) s.models.push_back(k3_model(order_untouched(4, h)));
    for (std::size_t v = 0; v < 4; ++v) s.regions.push_back({v, k3_name_untouched(v)});
    std::size_t e = 0;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b, ++e) {
            auto o = others(4, {a, b});
            auto l = combination_loop("gamma_a_e" + digits({a, b}), b, {a}, o[0], o[1], k3_name_untouched(a),
                                      k3_name_untouched(b));
            l.expected = mat({{1, 0}, {4, 1}});
            l.ref = "k3-combined-edge";
            s.loops.push_back(l);
            s.wings.push_back({{a, b}, {e < a_e.size() ? a_e[e] : Rational(0)}});
        }
    for (std::size_t v = 0; v < 4; ++v) {
        auto o = others(4, {v});
        auto l = vertex_loop("gamma_" + std::to_string(v + 1), v, {}, o, k3_name_untouched(v));
        l.expected = IntMatrix::identity(2);
        l.ref = "toric-vertex";
        s.loops.push_back(l);
        s.strata.push_back(table_stratum("D_" + std::to_string(v + 1), k3_name_untouched(v), {v}, true));
    }
    s.retractions.maps = {"wing-model"};
    return s;
}

DegenerationSpec k3_dispersion(const Face& edge, const std::vector<Rational>& points_in) {
    if (edge.size() != 2 || edge[0] == edge[1] || edge[0] > 3 || edge[1] > 3)
        throw Error("k3_dispersion: edge must join two distinct vertices of the tetrahedron");
    std::vector<Rational> points = points_in;
    if (points.empty()) points = {rat(-3, 5), rat(-1, 5), rat(1, 5), rat(3, 5)};
    if (points.size() != 4) throw Error("k3_dispersion: exactly four points are required");
    for (std::size_t i = 0; i < 4; ++i) {
        if (points[i] <= -1 || points[i] >= 1) throw Error("k3_dispersion: points must lie inside the edge");
        if (i > 0 && points[i] <= points[i - 1]) throw Error("k3_dispersion: points must be distinct and ordered");
    }
    const std::size_t e1 = edge[0], e2 = edge[1];
    DegenerationSpec s;
    s.name = "k3-dispersion";
    s.n = 2;
    s.complex = named_boundary(3);
    // X_{e,0} agrees with the model leaving D_{e1} untouched along C_e; each step moves one exceptional
    // curve from D_{e2} into D_{e1}.
    const TableModel base = k3_model(order_untouched(4, e1));
    Face ce{std::min(e1, e2), std::max(e1, e2)};
    for (long j = 0; j <= 4; ++j) {
        TableModel m;
        m.name = "X_e," + std::to_string(j);
        m.curves = {ce};
        m.numbers = IntMatrix(1, 4);
        for (std::size_t c = 0; c < 4; ++c) m.numbers(0, c) = base.at(ce, c);
        m.numbers(0, e1) += j;
        m.numbers(0, e2) -= j;
        s.models.push_back(m);
    }
    auto o = others(4, {e1, e2});
    for (std::size_t i = 1; i <= 4; ++i) {
        auto l = combination_loop("gamma_a_e," + std::to_string(i), e2, {e1}, o[0], o[1],
                                  "X_e," + std::to_string(i - 1), "X_e," + std::to_string(i));
        l.expected = mat({{1, 0}, {1, 1}});
        l.ref = "k3-dispersion";
        s.loops.push_back(l);
    }
    auto whole = combination_loop("gamma_e", e2, {e1}, o[0], o[1], "X_e,0", "X_e,4");
    whole.expected = mat({{1, 0}, {4, 1}});
    whole.ref = "k3-combined-edge";
    s.loops.push_back(whole);
    s.relations.push_back({"nested product", {"gamma_a_e,1", "gamma_a_e,2", "gamma_a_e,3", "gamma_a_e,4"},
                           "gamma_e", "k3-dispersion"});
    s.wings.push_back({ce, points});
    return s;
}

DegenerationSpec k3_collision() {
    DegenerationSpec s;
    s.name = "k3-collision";
    s.n = 2;
    s.complex = named_boundary(3);
    // i, j, k, h = v1, v2, v3, v4; the vertex v_j = v2 absorbs the points of the edges e24 and e23.
    const std::size_t i = 0, j = 1, k = 2, h = 3;
    s.models = {k3_model({i, k, h, j}), k3_model({i, k, j, h}), k3_model({i, j, k, h}), k3_model({i, j, h, k})};
    s.regions = {{j, "X_134"}};
    auto none = vertex_loop("none:gamma_2", j, {}, {h, i, k}, "X_134");
    none.expected = IntMatrix::identity(2);
    none.ref = "k3-collision";
    auto e24 = combination_loop("none:gamma_a_e24", j, {h}, k, i, "X_123", "X_134");
    e24.expected = mat({{1, 0}, {4, 1}});
    e24.ref = "k3-collision";
    auto e23_hk = combination_loop("none:gamma_a_e23", j, {k}, h, i, "X_124", "X_134");
    e23_hk.orientation = "inverse";
    e23_hk.expected = mat({{1, 0}, {-4, 1}});
    e23_hk.ref = "k3-collision";
    auto e23 = e23_hk;
    e23.name = "none:gamma_a_e23@(v3,v4)";
    e23.report_basis = {k, h};
    e23.expected = mat({{1, -4}, {0, 1}});
    auto one = vertex_loop("one:gamma_2", j, {}, {h, i, k}, "X_132");
    one.expected = mat({{1, 0}, {4, 1}});
    one.ref = "k3-collision";
    auto both = vertex_loop("both:gamma_2", j, {}, {h, i, k}, "X_123");
    both.expected = mat({{-15, -4}, {4, 1}});
    both.ref = "k3-collision";
    s.loops = {none, e24, e23_hk, e23, one, both};
    s.relations.push_back({"one collision", {"one:gamma_2"}, "none:gamma_a_e24", "k3-collision"});
    s.relations.push_back(
        {"double collision", {"none:gamma_a_e23@(v3,v4)", "none:gamma_a_e24"}, "both:gamma_2", "k3-collision"});
    return s;
}

namespace {

std::string quintic_name(std::size_t h) {
    auto o = order_untouched(5, h);
    return "X_" + digits({o.begin(), o.end() - 1});
}

}  // namespace

DegenerationSpec quintic() {
    DegenerationSpec s;
    s.name = "quintic";
    s.n = 3;
    s.complex = named_boundary(4);
    for (std::size_t h = 0; h < 5; ++h)
        s.models.push_back(
            model_from_roles(quintic_name(h), order_untouched(5, h), quintic_role_curves(), quintic_role_table()));
    for (std::size_t v = 0; v < 5; ++v) s.regions.push_back({v, quintic_name(v)});

    const std::size_t v1 = 0, v2 = 1, v3 = 2, v4 = 3, v5 = 4;
    auto add = [&](LoopSpec l, IntMatrix expected) {
        l.expected = std::move(expected);
        l.semisimple_scale = 5;
        l.ref = "quintic-monodromy";
        s.loops.push_back(l);
    };
    add(combination_loop("gamma_234_34", v4, {v2, v3}, v1, v5, quintic_name(v3), quintic_name(v4)),
        mat({{1, 0, 0}, {0, 1, 0}, {5, 0, 1}}));
    add(combination_loop("gamma_234_23", v4, {v2, v3}, v1, v5, quintic_name(v2), quintic_name(v3)),
        mat({{1, 0, 0}, {5, 1, 0}, {-5, 0, 1}}));
    add(combination_loop("gamma_234_24", v4, {v2, v3}, v1, v5, quintic_name(v2), quintic_name(v4)),
        mat({{1, 0, 0}, {5, 1, 0}, {0, 0, 1}}));
    auto l124 = combination_loop("gamma_124_24", v4, {v1, v2}, v3, v5, quintic_name(v2), quintic_name(v4));
    l124.report_basis = {v1, v2, v3};
    add(l124, mat({{1, 0, 0}, {0, 1, 5}, {0, 0, 1}}));
    auto l245p = combination_loop("gamma_245_24'", v4, {v2, v5}, v1, v3, quintic_name(v2), quintic_name(v4));
    add(l245p, mat({{1, 0, 0}, {5, 1, 0}, {0, 0, 1}}));
    auto l245 = l245p;
    l245.name = "gamma_245_24";
    l245.report_basis = {v1, v2, v3};
    l245.expected_basis_change = mat({{1, 0, -1}, {0, 1, 4}, {0, 0, -1}});
    add(l245, mat({{1, 0, 0}, {5, 1, -5}, {0, 0, 1}}));
    s.relations.push_back({"T_234_34 T_234_23 = T_234_24", {"gamma_234_34", "gamma_234_23"}, "gamma_234_24",
                           "quintic-monodromy"});
    s.relations.push_back({"T_124_24 T_245_24 = T_234_24", {"gamma_124_24", "gamma_245_24"}, "gamma_234_24",
                           "quintic-monodromy"});

    // Loops around the edges of the untouched component in each region.
    for (std::size_t m = 0; m < 5; ++m)
        for (std::size_t m2 = 0; m2 < 5; ++m2) {
            if (m2 == m) continue;
            auto l = vertex_loop("toric_" + std::to_string(m + 1) + "_e" + digits({std::min(m, m2), std::max(m, m2)}),
                                 m, {m2}, others(5, {m, m2}), quintic_name(m));
            l.expected = IntMatrix::identity(3);
            l.ref = "toric-vertex";
            s.loops.push_back(l);
        }

    for (std::size_t m = 0; m < 5; ++m)
        s.strata.push_back(table_stratum(quintic_name(m) + ":D_" + std::to_string(m + 1), quintic_name(m), {m}, true));
    const std::string last = quintic_name(v5);
    for (std::size_t a = 0; a < 4; ++a)
        s.strata.push_back(table_stratum(last + ":D_" + digits({a, v5}), last, {a, v5}, false));
    for (const auto& c : s.model(last).curves)
        s.strata.push_back(table_stratum(last + ":C_" + digits(c), last, c, false));
    StratumSpec d12;
    d12.id = last + ":D_12";
    d12.source = StratumSpec::Source::None;
    d12.model = last;
    d12.components = {v1, v2};
    s.strata.push_back(d12);

    s.gamma = {"two-face-graph", 20, 30};
    s.retractions.maps = {"quintic-vertex", "quintic-combinatorial", "collapse", "pi-prime"};
    s.retractions.region_check = true;
    s.retractions.expected_images = {
        {"quintic-vertex", RatVec{0, 0, 1}, RatVec{1, 0, 0}},
        {"quintic-vertex", RatVec{rat(-1, 2), rat(1, 2), 1}, RatVec{0, 1, 0}},
    };
    return s;
}

DegenerationSpec quintic_local_model() {
    DegenerationSpec s;
    s.name = "quintic-local";
    s.n = 3;
    s.complex = simplex_complex(2);
    for (std::size_t i = 0; i < 3; ++i) s.complex.vertex_names[i] = "v" + std::to_string(i + 1);
    LocalModelSpec lm;
    // Coordinates (ord x, ord y, ord z, ord t); ord w = ord x + ord y + ord z - ord t.
    lm.ray_names = {"v1", "v2", "v3", "D'1", "D'2", "D'3"};
    lm.rays = {IntVec{1, 0, 0, 1}, IntVec{0, 1, 0, 1}, IntVec{0, 0, 1, 1},
               IntVec{1, 0, 0, 0}, IntVec{0, 1, 0, 0}, IntVec{0, 0, 1, 0}};
    lm.prism = lm.ray_names;
    lm.base = "U_12";
    lm.base_cones = {{"v1", "v2", "v3", "D'3"}, {"v1", "v2", "D'2", "D'3"}, {"v1", "D'1", "D'2", "D'3"}};
    lm.steps = {{"V_12", "U_12", {"v1", "D'2"}, "v12"},
                {"V_13", "V_12", {"v1", "D'3"}, "v13"},
                {"V_123", "V_13", {"v2", "D'3"}, "v23"},
                {"G'", "V_123", {"v2", "v13"}, "v123"},
                {"G", "G'", {"v12", "D'3"}, "v'123"}};
    lm.expected_cells = {{"U_12", 1}, {"V_123", 4}, {"G", 9}};
    lm.expected_interior_edges = {{"V_123", "v2", "v13"}};
    lm.expected_images = {{"U_12", "v12", "v1"}, {"U_12", "v13", "v1"}, {"U_12", "v23", "v2"}};
    s.local = lm;
    StratumSpec z;
    z.id = "V_123:D_2.E_13";
    z.source = StratumSpec::Source::Quotient;
    z.fan = "V_123";
    z.rays = {"v2", "v13"};
    s.strata.push_back(z);
    return s;
}

DegenerationSpec fermat_li_charts(std::size_t n) {
    if (n != 2 && n != 3) throw Error("fermat_li_charts: only n = 2 and n = 3 are supported");
    DegenerationSpec s;
    s.name = "fermat-li";
    s.n = n;
    s.complex = named_boundary(n + 1);
    s.fermat_n = {n};
    return s;
}

std::vector<std::string> scenario_names() {
    return {"quartic-k3", "k3-combined", "k3-dispersion", "k3-collision", "quintic", "quintic-local", "fermat-li"};
}

DegenerationSpec scenario_by_name(const std::string& name) {
    if (name == "quartic-k3") return quartic_k3();
    if (name == "k3-combined") return k3_combined();
    if (name == "k3-dispersion") return k3_dispersion();
    if (name == "k3-collision") return k3_collision();
    if (name == "quintic") return quintic();
    if (name == "quintic-local") return quintic_local_model();
    if (name == "fermat-li") {
        auto s = fermat_li_charts(3);
        s.fermat_n = {2, 3};
        return s;
    }
    throw Error("unknown scenario '" + name + "'");
}

}  // namespace syz
