#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "syz/pl_retractions.hpp"
#include "syz/scenarios.hpp"

namespace syz {

namespace {

std::string vname(const DegenerationSpec& s, std::size_t v) {
    return v < s.complex.vertex_names.size() ? s.complex.vertex_names[v] : "#" + std::to_string(v);
}

std::string face_name(const DegenerationSpec& s, const Face& f) {
    std::string out = "{";
    for (std::size_t k = 0; k < f.size(); ++k) out += (k ? "," : "") + vname(s, f[k]);
    return out + "}";
}

Face sorted(Face f) {
    std::sort(f.begin(), f.end());
    return f;
}

Face with(Face f, std::initializer_list<std::size_t> extra) {
    f.insert(f.end(), extra.begin(), extra.end());
    return sorted(std::move(f));
}

bool is_face(const DegenerationSpec& s, const Face& f) { return s.complex.find_face(sorted(f)).has_value(); }

Record rec(std::string name, bool ok, std::string expected, std::string actual, std::string ref = {}) {
    return Record{std::move(name), ok, std::move(expected), std::move(actual), std::move(ref)};
}

IntMatrix anti_identity(std::size_t n) {
    IntMatrix j(n, n);
    for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = 1;
    return j;
}

IntMatrix orient(const std::string& how, const IntMatrix& t) {
    if (how.empty()) return t;
    if (how == "inverse") return inverse_unimodular(t);
    auto j = anti_identity(t.rows());
    if (how == "swap") return j * t * j;
    if (how == "inverse-swap") return inverse_unimodular(j * t * j);
    throw Error("unknown orientation '" + how + "'");
}

const std::set<std::string>& known_maps() {
    static const std::set<std::string> m{"quintic-vertex", "quintic-combinatorial", "collapse", "pi-prime",
                                         "wing-model"};
    return m;
}

PLMap map_by_name(const std::string& name) {
    if (name == "quintic-vertex") return quintic_vertex_retraction();
    if (name == "quintic-combinatorial") return quintic_combinatorial_retraction();
    if (name == "collapse") return collapse_kappa();
    if (name == "pi-prime") return pi_prime();
    if (name == "wing-model") return wing_model_retraction();
    throw Error("unknown retraction map '" + name + "'");
}

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : ",") + x;
    return out;
}

// ---------------------------------------------------------------- local fans

struct NamedFan {
    Fan fan;
    std::vector<std::string> names;
    std::optional<std::size_t> index(const std::string& n) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == n) return i;
        return std::nullopt;
    }
};

std::size_t ray_index(const NamedFan& f, const std::string& n) {
    auto i = f.index(n);
    if (!i) throw Error("unknown ray '" + n + "'");
    return *i;
}

std::map<std::string, NamedFan> build_local_fans(const LocalModelSpec& lm) {
    std::map<std::string, NamedFan> out;
    NamedFan base;
    base.fan.dim = lm.rays.empty() ? 0 : lm.rays[0].dim();
    base.fan.rays = lm.rays;
    base.names = lm.ray_names;
    for (const auto& c : lm.base_cones) {
        Cone k;
        for (const auto& n : c) k.push_back(ray_index(base, n));
        base.fan.cones.push_back(normalized(k));
    }
    out[lm.base] = base;
    for (const auto& st : lm.steps) {
        auto it = out.find(st.parent);
        if (it == out.end()) throw Error("fan step '" + st.fan + "': unknown parent '" + st.parent + "'");
        NamedFan f;
        Cone face;
        for (const auto& n : st.face) face.push_back(ray_index(it->second, n));
        f.fan = star_subdivide(it->second.fan, normalized(face));
        f.names = it->second.names;
        f.names.push_back(st.new_ray);
        out[st.fan] = f;
    }
    return out;
}

bool positive_t(const IntVec& u) { return u[u.dim() - 1] > 0; }

// Maximal faces of the subcomplex spanned by rays with ord_t > 0.
std::vector<Cone> skeleton_cells(const Fan& f) {
    std::set<Cone> faces;
    for (const auto& c : f.cones) {
        Cone k;
        for (auto i : c)
            if (positive_t(f.rays[i])) k.push_back(i);
        if (!k.empty()) faces.insert(normalized(k));
    }
    std::vector<Cone> out;
    for (const auto& a : faces) {
        bool maximal = true;
        for (const auto& b : faces)
            if (b.size() > a.size() && std::includes(b.begin(), b.end(), a.begin(), a.end())) maximal = false;
        if (maximal) out.push_back(a);
    }
    return out;
}

// Edges of the skeleton all of whose facets through them are shared by two top cells.
std::set<std::pair<std::size_t, std::size_t>> interior_edges(const Fan& f) {
    auto cells = skeleton_cells(f);
    std::size_t top = 0;
    for (const auto& c : cells) top = std::max(top, c.size());
    std::map<Cone, std::size_t> facet_count;
    for (const auto& c : cells) {
        if (c.size() != top) continue;
        for (std::size_t k = 0; k < c.size(); ++k) {
            Cone facet = c;
            facet.erase(facet.begin() + long(k));
            ++facet_count[facet];
        }
    }
    std::set<std::pair<std::size_t, std::size_t>> out;
    if (top < 3) return out;
    for (const auto& c : cells) {
        if (c.size() != top) continue;
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b) {
                bool interior = true;
                for (const auto& [facet, count] : facet_count)
                    if (std::binary_search(facet.begin(), facet.end(), c[a]) &&
                        std::binary_search(facet.begin(), facet.end(), c[b]) && count != 2)
                        interior = false;
                if (interior) out.insert({c[a], c[b]});
            }
    }
    return out;
}

// Picture coordinates of a lattice point of the slice: Lambda(u) / (u_x + u_y + u_z).
RatVec picture(const IntVec& u) {
    Integer psi = u[0] + u[1] + u[2];
    if (psi == 0) throw Error("picture: point at infinity");
    IntVec lam{u[1] - u[2], u[0], 2 * (u[0] + u[1] + u[2]) - 2 * u[3]};
    RatVec p(3);
    for (std::size_t k = 0; k < 3; ++k) p[k] = make_rational(lam[k], psi);
    return p;
}

std::optional<RatVec> picture_reference(const std::string& name) {
    static const std::map<std::string, std::function<RatVec()>> ref{
        {"v1", local_model::v1},   {"v2", local_model::v2},   {"v3", local_model::v3},
        {"v12", local_model::v12}, {"v13", local_model::v13}, {"v23", local_model::v23},
        {"v'123", local_model::v123_prime}};
    auto it = ref.find(name);
    if (it == ref.end()) return std::nullopt;
    return it->second();
}

// Image of a ray under the retraction of the skeleton of a finer fan onto the skeleton of f.
std::string skeleton_image(const NamedFan& f, const IntVec& u) {
    auto loc = locate(f.fan, to_rational(u));
    if (!loc) return "(outside the fan)";
    const auto& cone = f.fan.cones[loc->cone];
    std::vector<std::string> parts;
    Rational total = 0;
    for (std::size_t k = 0; k < cone.size(); ++k)
        if (loc->coefficients[k] != 0 && positive_t(f.fan.rays[cone[k]])) total += loc->coefficients[k];
    for (std::size_t k = 0; k < cone.size(); ++k) {
        const auto& c = loc->coefficients[k];
        if (c == 0 || !positive_t(f.fan.rays[cone[k]])) continue;
        Rational w = c / total;
        parts.push_back(w == 1 ? f.names[cone[k]] : to_string(w) + "*" + f.names[cone[k]]);
    }
    std::sort(parts.begin(), parts.end());
    return parts.empty() ? "(no skeleton part)" : join(parts);
}

void local_records(const DegenerationSpec& s, std::size_t samples, std::vector<Record>& out) {
    const auto& lm = *s.local;
    std::map<std::string, NamedFan> fans;
    try {
        fans = build_local_fans(lm);
    } catch (const Error& e) {
        out.push_back(rec("local: fans", false, "buildable", e.what(), "local-model"));
        return;
    }
    NamedFan all;
    all.fan.dim = lm.rays.empty() ? 0 : lm.rays[0].dim();
    all.fan.rays = lm.rays;
    all.names = lm.ray_names;
    std::vector<IntVec> prism;
    for (const auto& n : lm.prism) prism.push_back(lm.rays[ray_index(all, n)]);

    std::vector<std::string> order{lm.base};
    for (const auto& st : lm.steps) order.push_back(st.fan);
    for (const auto& name : order) {
        const auto& f = fans.at(name);
        auto bad = validate_fan(f.fan);
        auto sm = is_smooth(f.fan);
        out.push_back(rec("local " + name + ": valid smooth fan", bad.empty() && sm.smooth, "valid, smooth",
                          bad.empty() ? (sm.smooth ? "valid, smooth" : "not smooth") : bad.front(), "local-model"));
        // Every lattice point of the prism cone with small coefficients lies in the support.
        std::size_t missing = 0, checked = 0;
        const std::size_t k = std::max<std::size_t>(2, std::min<std::size_t>(samples / 4, 3));
        std::vector<std::size_t> c(prism.size(), 0);
        while (true) {
            IntVec p(f.fan.dim);
            for (std::size_t i = 0; i < prism.size(); ++i) p = p + Integer(long(c[i])) * prism[i];
            if (!p.is_zero()) {
                ++checked;
                if (!locate(f.fan, to_rational(p))) ++missing;
            }
            std::size_t i = 0;
            while (i < c.size() && ++c[i] > k) c[i++] = 0;
            if (i == c.size()) break;
        }
        out.push_back(rec("local " + name + ": covers the prism cone", missing == 0, "0 uncovered",
                          std::to_string(missing) + " uncovered of " + std::to_string(checked), "local-model"));
        for (std::size_t r = 0; r < f.fan.rays.size(); ++r) {
            if (!positive_t(f.fan.rays[r])) continue;
            auto ref = picture_reference(f.names[r]);
            if (!ref) continue;
            auto p = picture(f.fan.rays[r]);
            out.push_back(rec("local " + name + ": picture of " + f.names[r], p == *ref, format(*ref), format(p),
                              "local-model"));
        }
    }
    for (const auto& [name, count] : lm.expected_cells) {
        auto it = fans.find(name);
        std::string actual = it == fans.end() ? "unknown fan" : std::to_string(skeleton_cells(it->second.fan).size());
        out.push_back(rec("local " + name + ": skeleton cells", actual == std::to_string(count),
                          std::to_string(count), actual, "local-model"));
    }
    std::map<std::string, std::set<std::pair<std::string, std::string>>> expected_edges;
    for (const auto& e : lm.expected_interior_edges) expected_edges[e.fan].insert(std::minmax(e.a, e.b));
    for (const auto& [name, edges] : expected_edges) {
        auto it = fans.find(name);
        std::set<std::pair<std::string, std::string>> got;
        if (it != fans.end())
            for (auto [a, b] : interior_edges(it->second.fan))
                got.insert(std::minmax(it->second.names[a], it->second.names[b]));
        auto show = [](const std::set<std::pair<std::string, std::string>>& es) {
            std::vector<std::string> xs;
            for (const auto& [a, b] : es) xs.push_back("<" + a + "," + b + ">");
            return "{" + join(xs) + "}";
        };
        out.push_back(rec("local " + name + ": interior edges", got == edges, show(edges), show(got), "local-model"));
    }
    // Ray vectors by name across all fans.
    std::map<std::string, IntVec> vec;
    for (const auto& [name, f] : fans)
        for (std::size_t r = 0; r < f.names.size(); ++r) vec[f.names[r]] = f.fan.rays[r];
    for (const auto& im : lm.expected_images) {
        auto it = fans.find(im.fan);
        std::string actual = it == fans.end() || !vec.count(im.vertex) ? "unknown" : skeleton_image(it->second, vec[im.vertex]);
        out.push_back(rec("local " + im.fan + ": image of " + im.vertex, actual == im.image, im.image, actual,
                          "local-model"));
    }
}

// ---------------------------------------------------------------- strata

Fan projective_fan(std::size_t r) { return fans::projective_space(r); }

struct TableStratum {
    StratumData data;
    Face j, l;
};

std::optional<TableStratum> table_stratum_data(const DegenerationSpec& s, const StratumSpec& st) {
    const auto& m = s.model(st.model);
    const Face j = sorted(st.components);
    if (j.empty() || j.size() > s.n) return std::nullopt;
    Face l;
    for (std::size_t v = 0; v < s.complex.vertex_count(); ++v)
        if (!std::binary_search(j.begin(), j.end(), v) && is_face(s, with(j, {v}))) l.push_back(v);
    const std::size_t r = s.n + 1 - j.size();
    if (!st.fan_z && l.size() != r + 1) return std::nullopt;
    Fan f = st.fan_z ? *st.fan_z : projective_fan(r);
    if (f.dim != r || f.rays.size() != l.size())
        throw Error("stratum " + st.id + ": fan of Z must have dimension " + std::to_string(r) + " and " +
                    std::to_string(l.size()) + " rays");
    IntMatrix partial(j.size() - 1, l.size());
    if (st.lambda) {
        partial = *st.lambda;
    } else if (j.size() > 1) {
        auto ws = walls(f);
        if (ws.empty()) return std::nullopt;
        Face cw = j;
        for (auto k : ws.front().cone) cw.push_back(l[k]);
        for (std::size_t jj = 1; jj < j.size(); ++jj) partial(jj - 1, 0) = -m.at(sorted(cw), j[jj]);
    }
    TableStratum out{make_stratum(st.id, s.n, f, partial), j, l};
    for (auto v : j) out.data.j_labels.push_back(vname(s, v));
    for (auto v : l) out.data.l_labels.push_back(vname(s, v));
    return out;
}

struct QuotientStratum {
    StratumData data;
    IntMatrix lattice_lambda;  // all rows, from the lattice
    std::vector<Integer> l_ord_t;
};

std::optional<QuotientStratum> quotient_stratum_data(const DegenerationSpec& s, const StratumSpec& st) {
    if (!s.local) return std::nullopt;
    auto fans = build_local_fans(*s.local);
    auto it = fans.find(st.fan);
    if (it == fans.end()) throw Error("stratum " + st.id + ": unknown fan '" + st.fan + "'");
    const auto& f = it->second;
    const std::size_t dim = f.fan.dim;
    Cone j;
    for (const auto& n : st.rays) j.push_back(ray_index(f, n));
    if (j.empty()) return std::nullopt;
    std::vector<IntVec> jv;
    for (auto i : j) jv.push_back(f.fan.rays[i]);
    IntMatrix b = extend_to_basis(jv, dim);
    // Complement vectors with ord_t = 0, so that the first coefficient is fixed by ord_t.
    for (std::size_t c = j.size(); c < dim; ++c) {
        Integer t = b(dim - 1, c);
        for (std::size_t r = 0; r < dim; ++r) b(r, c) -= t * b(r, 0);
    }
    IntMatrix binv = inverse_unimodular(b);
    Cone js = normalized(j);
    std::vector<std::size_t> l;
    std::vector<Cone> cones;
    for (const auto& c : f.fan.cones)
        if (std::includes(c.begin(), c.end(), js.begin(), js.end()))
            for (auto i : c)
                if (!std::binary_search(js.begin(), js.end(), i) && std::find(l.begin(), l.end(), i) == l.end())
                    l.push_back(i);
    std::sort(l.begin(), l.end());
    const std::size_t r = dim - j.size();
    Fan z;
    z.dim = r;
    QuotientStratum out;
    out.lattice_lambda = IntMatrix(j.size(), l.size());
    IntMatrix partial(j.size() - 1, l.size());
    for (std::size_t k = 0; k < l.size(); ++k) {
        const auto& u = f.fan.rays[l[k]];
        IntVec p = binv * u;
        IntVec bar(r);
        for (std::size_t q = 0; q < r; ++q) bar[q] = p[j.size() + q];
        z.rays.push_back(bar);
        for (std::size_t q = 0; q < j.size(); ++q) out.lattice_lambda(q, k) = p[q];
        for (std::size_t q = 1; q < j.size(); ++q) partial(q - 1, k) = p[q];
        out.l_ord_t.push_back(u[dim - 1]);
    }
    for (const auto& c : f.fan.cones)
        if (std::includes(c.begin(), c.end(), js.begin(), js.end())) {
            Cone k;
            for (auto i : c)
                if (!std::binary_search(js.begin(), js.end(), i))
                    k.push_back(std::size_t(std::find(l.begin(), l.end(), i) - l.begin()));
            z.cones.push_back(normalized(k));
        }
    if (st.lambda) partial = *st.lambda;
    out.data = make_stratum(st.id, s.n, z, partial);
    for (auto i : j) out.data.j_labels.push_back(f.names[i]);
    for (auto i : l) out.data.l_labels.push_back(f.names[i]);
    return out;
}

// Chart of Star(v_m) from the star chart of the curve {m} u L[1..r-1] against the P^r fan structure.
Record fan_chart_record(const DegenerationSpec& s, const StratumSpec& st, const TableStratum& t) {
    const auto& model = s.model(st.model);
    const std::size_t m = t.j[0], r = t.l.size() - 1;
    Face curve{m};
    std::vector<std::size_t> order;
    for (std::size_t k = 1; k < r; ++k) {
        curve.push_back(t.l[k]);
        order.push_back(t.l[k]);
    }
    order.push_back(m);
    IntVec b(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) b[k] = -model.at(sorted(curve), order[k]);
    std::vector<std::size_t> labels{t.l[0]};
    labels.insert(labels.end(), order.begin(), order.end());
    labels.push_back(t.l[r]);
    Chart c = make_chart("star", star_chart(b), labels);
    std::vector<IntVec> cols;
    for (std::size_t k = 0; k < r; ++k) cols.push_back(to_integer(*c.at(t.l[k])));
    IntMatrix a = IntMatrix::from_columns(cols, r);
    IntVec minus_sum(r);
    for (std::size_t k = 0; k < r; ++k) minus_sum[k] = -1;
    IntVec image = a * minus_sum, last = to_integer(*c.at(t.l[r]));
    bool ok = is_unimodular(a) && image == last;
    return rec(st.id + ": chart at " + vname(s, m) + " is the fan structure", ok, format(image),
               format(last) + (is_unimodular(a) ? "" : " (A not unimodular)"), "fan-chart");
}

}  // namespace

// ---------------------------------------------------------------- validation

std::vector<std::string> validate_spec(const DegenerationSpec& s) {
    std::vector<std::string> v;
    auto bad = [&](const std::string& x) { v.push_back(x); };
    for (const auto& x : validate_complex(s.complex)) bad("complex: " + x);
    if (!v.empty()) return v;
    const std::size_t nv = s.complex.vertex_count();
    if (s.n == 0) bad("n must be positive");
    auto in_range = [&](std::size_t i) { return i < nv; };
    std::set<std::string> names;
    for (const auto& m : s.models) {
        const std::string p = "model " + m.name + ": ";
        if (!names.insert(m.name).second) bad(p + "duplicate name");
        if (m.numbers.rows() != m.curves.size() || m.numbers.cols() != nv) {
            bad(p + "table must have one row per curve and one column per component");
            continue;
        }
        if (!m.order.empty()) {
            auto o = sorted(m.order);
            for (std::size_t i = 0; i < o.size(); ++i)
                if (o[i] != i) {
                    bad(p + "order must be a permutation of the components");
                    break;
                }
            if (o.size() != nv) bad(p + "order must list every component");
        }
        for (std::size_t r = 0; r < m.curves.size(); ++r) {
            const auto& c = m.curves[r];
            if (!std::all_of(c.begin(), c.end(), in_range) || !is_face(s, c)) {
                bad(p + "curve row " + std::to_string(r) + " is not a face");
                continue;
            }
            if (c.size() != s.n) bad(p + "curve row " + std::to_string(r) + " is not a curve stratum");
            Integer sum = 0;
            for (std::size_t k = 0; k < nv; ++k) sum += s.complex.multiplicity[k] * m.numbers(r, k);
            if (sum != 0) bad(p + "row " + face_name(s, c) + " sums to " + to_string(sum));
        }
    }
    auto has_model = [&](const std::string& n) { return names.count(n) > 0; };
    for (const auto& rg : s.regions) {
        if (!in_range(rg.vertex)) bad("region: vertex out of range");
        if (!has_model(rg.model)) bad("region: unknown model '" + rg.model + "'");
    }
    std::set<std::string> loops;
    for (const auto& l : s.loops) {
        const std::string p = "loop " + l.name + ": ";
        if (!loops.insert(l.name).second) bad(p + "duplicate name");
        std::vector<std::size_t> all = l.face;
        all.push_back(l.origin);
        all.insert(all.end(), l.cycle.begin(), l.cycle.end());
        if (!std::all_of(all.begin(), all.end(), in_range)) {
            bad(p + "vertex index out of range");
            continue;
        }
        for (const auto& m : l.models)
            if (!has_model(m)) bad(p + "unknown model '" + m + "'");
        Face sigma = with(l.face, {l.origin});
        if (std::set<std::size_t>(sigma.begin(), sigma.end()).size() != sigma.size()) bad(p + "repeated vertex");
        if (l.kind == LoopSpec::Kind::Vertex) {
            if (l.models.size() != 1) bad(p + "a vertex loop needs exactly one model");
            if (l.cycle.size() < 3) bad(p + "a vertex loop needs at least three cycle vertices");
            if (sigma.size() + 1 != s.n) bad(p + "origin and face must span a codimension-2 face");
            for (auto y : l.cycle)
                if (!is_face(s, with(sigma, {y}))) bad(p + "cycle vertex " + vname(s, y) + " does not span a face");
        } else {
            if (l.models.size() != 2) bad(p + "a combination loop needs two models");
            if (l.cycle.size() != 2) bad(p + "a combination loop needs i_0 and i_inf");
            if (sigma.size() != s.n) bad(p + "origin and face must span a curve stratum");
            for (auto y : l.cycle)
                if (!is_face(s, with(sigma, {y}))) bad(p + "vertex " + vname(s, y) + " does not span a face");
        }
        if (!l.orientation.empty() && l.orientation != "inverse" && l.orientation != "swap" &&
            l.orientation != "inverse-swap")
            bad(p + "unknown orientation '" + l.orientation + "'");
        if (!l.report_basis.empty() && l.report_basis.size() != s.n) bad(p + "report basis must have n labels");
        for (auto b : l.report_basis)
            if (!in_range(b)) bad(p + "report basis label out of range");
    }
    for (const auto& r : s.relations) {
        for (const auto& n : r.product)
            if (!loops.count(n)) bad("relation " + r.name + ": unknown loop '" + n + "'");
        if (!loops.count(r.equals)) bad("relation " + r.name + ": unknown loop '" + r.equals + "'");
        if (r.product.empty()) bad("relation " + r.name + ": empty product");
    }
    std::set<std::string> fan_names;
    std::map<std::string, std::set<std::string>> fan_rays;
    if (s.local) {
        const auto& lm = *s.local;
        if (lm.ray_names.size() != lm.rays.size()) bad("local: one name per ray");
        std::set<std::string> rn;
        for (std::size_t i = 0; i < lm.rays.size(); ++i) {
            if (lm.rays[i].dim() != 4) bad("local: rays must have 4 coordinates");
            if (i < lm.ray_names.size() && !rn.insert(lm.ray_names[i]).second)
                bad("local: duplicate ray name '" + lm.ray_names[i] + "'");
        }
        for (const auto& n : lm.prism)
            if (!rn.count(n)) bad("local: unknown prism ray '" + n + "'");
        for (const auto& c : lm.base_cones)
            for (const auto& n : c)
                if (!rn.count(n)) bad("local: unknown ray '" + n + "' in a base cone");
        fan_names.insert(lm.base);
        fan_rays[lm.base] = rn;
        for (const auto& st : lm.steps) {
            if (!fan_names.count(st.parent)) {
                bad("local step " + st.fan + ": unknown parent '" + st.parent + "'");
                continue;
            }
            auto rays = fan_rays[st.parent];
            for (const auto& n : st.face)
                if (!rays.count(n)) bad("local step " + st.fan + ": unknown ray '" + n + "'");
            if (!rays.insert(st.new_ray).second) bad("local step " + st.fan + ": ray name already used");
            if (!fan_names.insert(st.fan).second) bad("local step " + st.fan + ": duplicate fan name");
            fan_rays[st.fan] = rays;
        }
        for (const auto& [f, c] : lm.expected_cells)
            if (!fan_names.count(f)) bad("local: unknown fan '" + f + "'");
        for (const auto& e : lm.expected_interior_edges)
            if (!fan_names.count(e.fan)) bad("local: unknown fan '" + e.fan + "'");
        for (const auto& im : lm.expected_images)
            if (!fan_names.count(im.fan)) bad("local: unknown fan '" + im.fan + "'");
    }
    for (const auto& st : s.strata) {
        const std::string p = "stratum " + st.id + ": ";
        if (st.source == StratumSpec::Source::Quotient) {
            if (!fan_names.count(st.fan)) {
                bad(p + "unknown fan '" + st.fan + "'");
                continue;
            }
            for (const auto& n : st.rays)
                if (!fan_rays[st.fan].count(n)) bad(p + "unknown ray '" + n + "'");
            if (st.rays.empty()) bad(p + "no rays");
        } else {
            if (!has_model(st.model)) bad(p + "unknown model '" + st.model + "'");
            if (st.components.empty() || !std::all_of(st.components.begin(), st.components.end(), in_range) ||
                !is_face(s, st.components))
                bad(p + "components must form a face");
        }
        if (st.lambda && st.source == StratumSpec::Source::None) bad(p + "lambda given without fan data");
    }
    for (const auto& w : s.wings) {
        if (w.edge.size() != 2 || !std::all_of(w.edge.begin(), w.edge.end(), in_range) || !is_face(s, w.edge))
            bad("wing: edge must be an edge of the complex");
        for (std::size_t i = 0; i < w.points.size(); ++i) {
            if (w.points[i] <= -1 || w.points[i] >= 1) bad("wing: point " + to_string(w.points[i]) + " not interior");
            if (i > 0 && w.points[i] <= w.points[i - 1]) bad("wing: points must be strictly increasing");
        }
    }
    if (!s.gamma.kind.empty() && s.gamma.kind != "two-face-graph" && s.gamma.kind != "graph")
        bad("gamma: unknown kind '" + s.gamma.kind + "'");
    for (const auto& m : s.retractions.maps)
        if (!known_maps().count(m)) bad("retraction: unknown map '" + m + "'");
    for (const auto& im : s.retractions.expected_images)
        if (!known_maps().count(im.map)) bad("retraction: unknown map '" + im.map + "'");
    for (auto n : s.fermat_n)
        if (n != 2 && n != 3) bad("fermat: unsupported n = " + std::to_string(n));
    return v;
}

// ---------------------------------------------------------------- loops

MonodromyEntry evaluate_loop(const DegenerationSpec& s, const LoopSpec& l) {
    MonodromyEntry e;
    e.loop = l.name;
    e.orientation = l.orientation;
    e.origin = vname(s, l.origin);
    e.expected = l.expected;
    e.ref = l.ref;
    Face sigma = with(l.face, {l.origin});
    LoopAtlas atlas;
    std::vector<std::size_t> basis;
    if (l.kind == LoopSpec::Kind::Vertex) {
        const auto& m = s.model(l.models.at(0));
        std::vector<IntVec> steps;
        for (auto y : l.cycle) {
            Face c = with(sigma, {y});
            IntVec b(l.face.size() + 2);
            b[0] = -m.at(c, y);
            for (std::size_t k = 0; k < l.face.size(); ++k) b[k + 1] = -m.at(c, l.face[k]);
            b[l.face.size() + 1] = -m.at(c, l.origin);
            steps.push_back(b);
            e.b_cycle.push_back(b[0]);
        }
        e.rule = monodromy_vertex_loop(steps);
        atlas = vertex_loop_atlas(l.cycle, l.face, l.origin, steps);
        basis = {l.cycle.back(), l.cycle.front()};
        basis.insert(basis.end(), l.face.begin(), l.face.end());
    } else {
        const auto& x = s.model(l.models.at(0));
        const auto& x2 = s.model(l.models.at(1));
        IntVec b(l.face.size() + 1), b2(l.face.size() + 1);
        for (std::size_t k = 0; k < l.face.size(); ++k) {
            b[k] = -x.at(sigma, l.face[k]);
            b2[k] = -x2.at(sigma, l.face[k]);
        }
        b[l.face.size()] = -x.at(sigma, l.origin);
        b2[l.face.size()] = -x2.at(sigma, l.origin);
        e.rule = monodromy_combination(b, b2);
        atlas = combination_atlas(l.cycle.at(0), l.face, l.origin, l.cycle.at(1), b, b2);
        basis = {l.cycle.at(0)};
        basis.insert(basis.end(), l.face.begin(), l.face.end());
    }
    IntMatrix closed = orient(l.orientation, e.rule);
    IntMatrix oracle = orient(l.orientation, monodromy_transport(atlas.charts, atlas.loop).linear);
    if (!l.report_basis.empty()) {
        std::vector<IntVec> cols;
        for (auto v : l.report_basis) {
            auto c = atlas.charts.front().at(v);
            if (!c) throw Error("loop " + l.name + ": report basis vertex " + vname(s, v) + " is not in the chart");
            cols.push_back(to_integer(*c));
        }
        e.change_of_basis = IntMatrix::from_columns(cols, closed.rows());
        closed = conjugate(e.change_of_basis, closed);
        oracle = conjugate(e.change_of_basis, oracle);
        basis = l.report_basis;
    }
    for (auto v : basis) e.basis.push_back(vname(s, v));
    e.closed_form = closed;
    e.oracle = oracle;
    e.agree = closed == oracle;
    return e;
}

// ---------------------------------------------------------------- strata

std::optional<StratumData> stratum_data(const DegenerationSpec& s, const StratumSpec& st) {
    switch (st.source) {
        case StratumSpec::Source::None:
            return std::nullopt;
        case StratumSpec::Source::Table: {
            auto t = table_stratum_data(s, st);
            if (!t) return std::nullopt;
            return t->data;
        }
        case StratumSpec::Source::Quotient: {
            auto q = quotient_stratum_data(s, st);
            if (!q) return std::nullopt;
            return q->data;
        }
    }
    return std::nullopt;
}

std::vector<Record> stratum_records(const DegenerationSpec& s, const StratumSpec& st) {
    std::vector<Record> out;
    const std::string p = st.id + ": ";
    std::optional<StratumData> data;
    std::optional<TableStratum> table;
    try {
        if (st.source == StratumSpec::Source::Table) {
            table = table_stratum_data(s, st);
            if (table) data = table->data;
        } else if (st.source == StratumSpec::Source::Quotient) {
            auto q = quotient_stratum_data(s, st);
            if (q) {
                data = q->data;
                bool t1 = std::all_of(q->l_ord_t.begin(), q->l_ord_t.end(), [](const Integer& t) { return t == 1; });
                out.push_back(rec(p + "ord_t = 1 on the rays of L", t1, "1", t1 ? "1" : "other", "normal-fan"));
                bool same = q->data.lambda == q->lattice_lambda || st.lambda.has_value();
                out.push_back(rec(p + "derived lambda row matches the lattice", same, format(q->lattice_lambda),
                                  format(q->data.lambda), "normal-fan"));
            }
        }
    } catch (const Error& e) {
        out.push_back(rec(p + "stratum data", false, "buildable", e.what(), "toricity"));
        return out;
    }
    if (!data) {
        bool ok = !st.expect_certified.value_or(false);
        out.push_back(rec(p + "verdict", ok, st.expect_certified ? (*st.expect_certified ? "certified" : "not certified")
                                                                 : "cannot certify",
                          "cannot certify: no fan data", "toricity"));
        return out;
    }
    auto bad = validate_stratum(*data);
    out.push_back(rec(p + "stratum data valid", bad.empty(), "valid", bad.empty() ? "valid" : bad.front(), "toricity"));
    if (!bad.empty()) return out;

    NormalFan nf = build_normal_fan(*data);
    bool t1 = true;
    for (const auto& u : nf.fan.rays) t1 = t1 && dot(nf.ord_t, u) == 1;
    out.push_back(rec(p + "ord_t = 1 on every ray", t1, "1", t1 ? "1" : "other", "normal-fan"));
    auto rel = verify_normal_fan_relation(*data, nf);
    out.push_back(rec(p + "wall relation", !rel, "holds on every wall",
                      rel ? "fails on wall " + std::to_string(*rel) : "holds on every wall", "wall-relation"));

    const auto ws = walls(data->fanZ);
    if (table) {
        const auto& m = s.model(st.model);
        std::string first;
        for (const auto& w : ws) {
            auto wi = wall_intersections(*data, w);
            Face cw = table->j;
            for (auto k : w.cone) cw.push_back(table->l[k]);
            cw = sorted(cw);
            for (std::size_t j = 0; j < table->j.size() && first.empty(); ++j)
                if (wi.d[j] != m.at(cw, table->j[j]))
                    first = face_name(s, cw) + ".D_" + vname(s, table->j[j]) + " = " + to_string(m.at(cw, table->j[j])) +
                            ", derived " + to_string(wi.d[j]);
            for (std::size_t l = 0; l < table->l.size() && first.empty(); ++l) {
                if (std::find(w.cone.begin(), w.cone.end(), l) != w.cone.end()) continue;
                if (wi.z[l] != m.at(cw, table->l[l]))
                    first = face_name(s, cw) + ".D_" + vname(s, table->l[l]) + " = " + to_string(m.at(cw, table->l[l])) +
                            ", fan " + to_string(wi.z[l]);
            }
        }
        out.push_back(rec(p + "fan data matches the intersection table", first.empty(), "consistent",
                          first.empty() ? "consistent" : first, "intersection-table"));
    }
    if (is_smooth(data->fanZ).smooth) {
        std::string wsum, wtr;
        for (std::size_t c = 0; c < data->fanZ.cones.size() && wsum.empty(); ++c)
            if (auto f = verify_w_sum(*data, c)) wsum = "cone " + std::to_string(c) + ": " + *f;
        out.push_back(rec(p + "W-sum on every cone", wsum.empty(), "holds", wsum.empty() ? "holds" : wsum, "w-sum"));
        for (const auto& w : ws) {
            if (!wtr.empty()) break;
            if (auto f = verify_w_transform(*data, w.sigma, w.sigma2))
                wtr = "cones " + std::to_string(w.sigma) + "," + std::to_string(w.sigma2) + ": " + *f;
        }
        out.push_back(rec(p + "W-transform on every wall", wtr.empty(), "holds", wtr.empty() ? "holds" : wtr,
                          "w-transform"));
    }
    auto report = check_theorem_b(*data);
    if (report.complete && report.smooth)
        out.push_back(rec(p + "cone-change cycles", report.loop_independent, "identity",
                          report.loop_independent
                              ? "identity on " + std::to_string(report.cycles_checked) + " cycles"
                              : report.loop_failure,
                          "cone-change"));
    std::string want = st.expect_certified ? (*st.expect_certified ? "certified" : "not certified") : "any";
    bool ok = !st.expect_certified || *st.expect_certified == report.certified;
    out.push_back(rec(p + "verdict", ok, want, report.verdict, "toricity"));
    if (table && !st.fan_z && table->j.size() == 1 && report.certified && table->l.size() == s.n + 1) {
        try {
            out.push_back(fan_chart_record(s, st, *table));
        } catch (const Error& e) {
            out.push_back(rec(p + "chart is the fan structure", false, "computable", e.what(), "fan-chart"));
        }
    }
    return out;
}

// ---------------------------------------------------------------- Fermat / Li charts

RatVec fermat_chart(std::size_t n, std::size_t i, const RatVec& weights) {
    if (n < 1) throw Error("fermat_chart: n must be positive");
    if (weights.dim() != n + 2) throw Error("fermat_chart: expected n+2 weights");
    if (i > n + 1) throw Error("fermat_chart: vertex out of range");
    const std::size_t ref = i == n + 1 ? n : n + 1;
    RatVec f;
    for (std::size_t j = 0; j < n + 2; ++j)
        if (j != i && j != ref) f.push_back(weights[j] - weights[ref]);
    return f;
}

namespace {

// Grid points with weights k/density on a face of the simplex with vertex count m.
std::vector<RatVec> face_grid(std::size_t m, const Face& face, std::size_t density, bool interior) {
    std::vector<RatVec> out;
    std::vector<std::size_t> c(face.size(), 0);
    std::function<void(std::size_t, std::size_t)> rec_fill = [&](std::size_t k, std::size_t left) {
        if (k + 1 == face.size()) {
            c[k] = left;
            if (interior && std::any_of(c.begin(), c.end(), [](std::size_t x) { return x == 0; })) return;
            RatVec w(m);
            for (std::size_t q = 0; q < face.size(); ++q) w[face[q]] = make_rational(long(c[q]), long(density));
            out.push_back(w);
            return;
        }
        for (std::size_t x = 0; x <= left; ++x) {
            c[k] = x;
            rec_fill(k + 1, left - x);
        }
    };
    if (!face.empty()) rec_fill(0, density);
    return out;
}

RatVec unit(std::size_t m, std::size_t k) {
    RatVec e(m);
    e[k] = 1;
    return e;
}

struct AffineFit {
    RatMatrix linear;
    RatVec translation;
};

// Affine map with fit(src[k]) = dst[k], from n+1 affinely independent sources.
std::optional<AffineFit> fit_affine(const std::vector<RatVec>& src, const std::vector<RatVec>& dst) {
    const std::size_t n = src[0].dim();
    RatMatrix a(n, n);
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t r = 0; r < n; ++r) a(r, k - 1) = src[k][r] - src[0][r];
    if (det(a) == 0) return std::nullopt;
    RatMatrix b(n, n);
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t r = 0; r < n; ++r) b(r, k - 1) = dst[k][r] - dst[0][r];
    AffineFit f;
    f.linear = b * inverse(a);
    f.translation = dst[0] - f.linear * src[0];
    return f;
}

void fermat_records(std::size_t n, std::size_t density, std::vector<Record>& out) {
    const std::size_t m = n + 2;
    const std::string p = "fermat n=" + std::to_string(n) + ": ";
    auto top_faces_with = [&](std::size_t i, std::size_t j) {
        std::vector<Face> fs;
        for (std::size_t k = 0; k < m; ++k) {
            if (k == i || k == j) continue;
            Face f;
            for (std::size_t v = 0; v < m; ++v)
                if (v != k) f.push_back(v);
            fs.push_back(f);
        }
        return fs;
    };
    std::size_t pairs = 0, affine_fail = 0, seams = 0, corners = 0;
    std::string first_fail;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            ++pairs;
            std::vector<std::optional<AffineFit>> fits;
            auto faces = top_faces_with(i, j);
            for (const auto& f : faces) {
                std::vector<RatVec> src, dst;
                for (auto v : f) {
                    src.push_back(fermat_chart(n, i, unit(m, v)));
                    dst.push_back(fermat_chart(n, j, unit(m, v)));
                }
                auto fit = fit_affine(src, dst);
                if (fit)
                    for (const auto& w : face_grid(m, f, density, false))
                        if (fit->linear * fermat_chart(n, i, w) + fit->translation != fermat_chart(n, j, w)) {
                            fit.reset();
                            break;
                        }
                if (!fit) {
                    ++affine_fail;
                    if (first_fail.empty()) first_fail = "f_" + std::to_string(j) + " o f_" + std::to_string(i) + "^-1";
                }
                fits.push_back(fit);
            }
            // Top faces of U_ij share a codimension-1 face pairwise.
            for (std::size_t a = 0; a < fits.size(); ++a)
                for (std::size_t b = a + 1; b < fits.size(); ++b) {
                    ++seams;
                    if (fits[a] && fits[b] &&
                        !(fits[a]->linear == fits[b]->linear && fits[a]->translation == fits[b]->translation))
                        ++corners;
                }
        }
    out.push_back(rec(p + "transitions affine on every top face", affine_fail == 0, "0 failures",
                      affine_fail ? std::to_string(affine_fail) + " failures, first " + first_fail
                                  : "0 failures over " + std::to_string(pairs) + " pairs",
                      "fermat-charts"));
    out.push_back(rec(p + "corner across every seam of U_ij", corners == seams && seams > 0,
                      std::to_string(seams) + " corners", std::to_string(corners) + " corners", "fermat-charts"));
    // Fan structure of P^n at v_i: neighbours in increasing order take e_1..e_n, the last takes -sum e.
    std::size_t bad_unimodular = 0, mismatches = 0, checked = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::size_t> nb;
        for (std::size_t v = 0; v < m; ++v)
            if (v != i) nb.push_back(v);
        auto fan_ray = [&](std::size_t k) {
            RatVec u(n);
            if (k < n) {
                u[k] = 1;
            } else {
                for (std::size_t q = 0; q < n; ++q) u[q] = -1;
            }
            return u;
        };
        // Solve A u_k = f_i(e_{nb[k]}) on the first n rays.
        RatMatrix a(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            RatVec img = fermat_chart(n, i, unit(m, nb[k]));
            for (std::size_t r = 0; r < n; ++r) a(r, k) = img[r];
        }
        bool ok = is_integral(a) && is_unimodular(to_integer(a)) &&
                  a * fan_ray(n) == fermat_chart(n, i, unit(m, nb[n]));
        if (!ok) ++bad_unimodular;
        for (std::size_t k = 0; k < m; ++k) {
            if (k == i) continue;
            Face f;
            for (std::size_t v = 0; v < m; ++v)
                if (v != k) f.push_back(v);
            for (const auto& w : face_grid(m, f, density, false)) {
                bool star = true;
                for (std::size_t v = 0; v < m; ++v)
                    if (v != i && w[v] >= w[i]) star = false;
                if (!star) continue;
                ++checked;
                RatVec phi(n);
                for (std::size_t q = 0; q <= n; ++q) phi = phi + w[nb[q]] * fan_ray(q);
                if (a * phi != fermat_chart(n, i, w)) ++mismatches;
            }
        }
    }
    out.push_back(rec(p + "vertex charts unimodular-equivalent to the fan structure",
                      bad_unimodular == 0 && mismatches == 0 && checked > 0, "0 mismatches",
                      std::to_string(bad_unimodular) + " non-unimodular, " + std::to_string(mismatches) +
                          " mismatches over " + std::to_string(checked) + " points",
                      "fermat-charts"));
}

}  // namespace

// ---------------------------------------------------------------- evaluation

ScenarioReport evaluate(const DegenerationSpec& s, const EvalOptions& opt) {
    ScenarioReport r;
    r.scenario = s.name;
    auto& out = r.records;
    auto problems = validate_spec(s);
    out.push_back(rec("spec is well formed", problems.empty(), "no problems",
                      problems.empty() ? "no problems" : problems.front(), "spec-validation"));
    if (!problems.empty()) return r;
    const std::size_t samples = std::max<std::size_t>(opt.samples, 1);

    for (const auto& m : s.models) {
        std::size_t nonzero = 0;
        for (std::size_t row = 0; row < m.curves.size(); ++row) {
            Integer sum = 0;
            for (std::size_t k = 0; k < m.numbers.cols(); ++k) sum += s.complex.multiplicity[k] * m.numbers(row, k);
            if (sum != 0) ++nonzero;
        }
        out.push_back(rec("table " + m.name + ": rows sum to zero", nonzero == 0, "0 nonzero rows",
                          std::to_string(nonzero) + " nonzero rows", "intersection-table"));
    }
    for (const auto& rg : s.regions) {
        auto u = s.model(rg.model).untouched();
        bool ok = u && *u == rg.vertex;
        out.push_back(rec("region Star(" + vname(s, rg.vertex) + ")': " + rg.model + " leaves the component untouched",
                          ok, vname(s, rg.vertex), u ? vname(s, *u) : "none", "regions"));
    }

    std::map<std::string, IntMatrix> values;
    for (const auto& l : s.loops) {
        MonodromyEntry e;
        try {
            e = evaluate_loop(s, l);
        } catch (const Error& ex) {
            out.push_back(rec(l.name + ": monodromy", false, "computable", ex.what(), l.ref));
            continue;
        }
        values[l.name] = e.closed_form;
        out.push_back(rec(l.name + ": transport oracle", e.agree, format(e.closed_form), format(e.oracle), "oracle"));
        if (l.expected)
            out.push_back(rec(l.name + ": value", e.closed_form == *l.expected, format(*l.expected),
                              format(e.closed_form), l.ref));
        if (l.expected_basis_change)
            out.push_back(rec(l.name + ": change of basis", e.change_of_basis == *l.expected_basis_change,
                              format(*l.expected_basis_change), format(e.change_of_basis), l.ref));
        if (l.semisimple_scale) {
            auto f = semisimple_factor(e.closed_form, Integer(*l.semisimple_scale));
            bool ok = f.status == SemisimpleFactor::Status::Factored;
            std::string actual = ok ? "e = " + format(f.e) + ", f = " + format(f.f) : "not of the form";
            out.push_back(rec(l.name + ": Id + " + std::to_string(*l.semisimple_scale) + " f e^T", ok,
                              "rank one, scale " + std::to_string(*l.semisimple_scale), actual, "semi-simple"));
        }
        if (l.kind == LoopSpec::Kind::Vertex && s.n == 2) {
            Integer q = charge(e.b_cycle);
            bool trivial = e.rule == IntMatrix::identity(2);
            out.push_back(rec(l.name + ": charge zero iff trivial", (q == 0) == trivial,
                              trivial ? "Q = 0" : "Q != 0", "Q = " + to_string(q), "charge"));
        }
        r.monodromy.push_back(std::move(e));
    }
    for (const auto& rel : s.relations) {
        bool have = values.count(rel.equals) > 0;
        IntMatrix prod;
        for (const auto& n : rel.product) {
            if (!values.count(n)) {
                have = false;
                break;
            }
            prod = prod.rows() == 0 ? values[n] : prod * values[n];
        }
        if (!have) {
            out.push_back(rec("relation " + rel.name, false, "computable", "missing loop value", rel.ref));
            continue;
        }
        out.push_back(rec("relation " + rel.name, prod == values[rel.equals], format(values[rel.equals]), format(prod),
                          rel.ref));
    }

    for (const auto& st : s.strata)
        for (auto& x : stratum_records(s, st)) out.push_back(std::move(x));

    if (!s.gamma.kind.empty()) {
        const std::size_t m = s.complex.vertex_count() - 1;
        GammaComplex g = s.gamma.kind == "graph" ? gamma_graph(m) : gamma_two_face_graph(m);
        const std::size_t v = g.cells_of_dim(0).size(), e = g.cells_of_dim(1).size();
        out.push_back(rec("Gamma: vertices and edges", v == s.gamma.expected_vertices && e == s.gamma.expected_edges,
                          std::to_string(s.gamma.expected_vertices) + " vertices, " +
                              std::to_string(s.gamma.expected_edges) + " edges",
                          std::to_string(v) + " vertices, " + std::to_string(e) + " edges", "gamma"));
    }

    for (const auto& w : s.wings) {
        const std::string wn = "wing " + face_name(s, w.edge);
        for (const auto& a : w.points) {
            try {
                PLMap m = ks_wing_retraction(a);
                auto rep = verify_retraction(m, samples);
                out.push_back(rec(wn + " a_e=" + to_string(a) + ": retraction", rep.ok(), "idempotent, continuous",
                                  rep.ok() ? "idempotent, continuous" : rep.failures.front(), "wing"));
                PLMap model = wing_model_retraction();
                std::size_t checked = 0, differ = 0;
                for (const auto& p : sample_points(m, samples)) {
                    if (p[0] - p[1] < a) continue;
                    ++checked;
                    if (eval(m, p) != eval(model, p)) ++differ;
                }
                out.push_back(rec(wn + " a_e=" + to_string(a) + ": agrees with the model map on x - y >= a_e",
                                  differ == 0, "0 differences",
                                  std::to_string(differ) + " differences over " + std::to_string(checked), "wing"));
            } catch (const Error& ex) {
                out.push_back(rec(wn + " a_e=" + to_string(a), false, "valid", ex.what(), "wing"));
            }
        }
    }

    if (s.local) local_records(s, samples, out);

    for (const auto& name : s.retractions.maps) {
        PLMap m = map_by_name(name);
        auto rep = verify_retraction(m, samples);
        std::string actual = rep.ok() ? "ok on " + std::to_string(rep.samples) + " samples" : rep.failures.front();
        out.push_back(rec("retraction " + name, rep.ok(), "idempotent, continuous, image in target", actual,
                          "retraction"));
    }
    if (s.retractions.region_check) {
        for (const auto& rr : region_check(pi_prime(), samples)) {
            out.push_back(rec("pi' over Star(v" + std::to_string(rr.vertex + 1) + ")'", rr.mismatches == 0 && rr.checked > 0,
                              "0 mismatches",
                              rr.mismatches ? rr.first_mismatch
                                            : "0 mismatches over " + std::to_string(rr.checked) + " points",
                              "region-check"));
        }
    }
    for (const auto& im : s.retractions.expected_images) {
        std::string actual;
        bool ok = false;
        try {
            RatVec got = eval(map_by_name(im.map), im.point);
            actual = format(got);
            ok = got == im.image;
        } catch (const Error& ex) {
            actual = ex.what();
        }
        out.push_back(rec("retraction " + im.map + " at " + format(im.point), ok, format(im.image), actual,
                          "retraction"));
    }

    for (auto n : s.fermat_n) fermat_records(n, std::min<std::size_t>(samples, 8), out);
    return r;
}

}  // namespace syz
