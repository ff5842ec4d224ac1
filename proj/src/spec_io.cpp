#include "syz/spec_io.hpp"

#include <initializer_list>
#include <set>

namespace syz {

using json = nlohmann::ordered_json;

SpecError::SpecError(std::string p, const std::string& what, std::size_t l, std::size_t c)
    : Error(p.empty() ? what : p + ": " + what), path(std::move(p)), line(l), column(c) {}

namespace {

// ---------------------------------------------------------------- writing

json int_json(const Integer& v) {
    if (v.fits_slong_p()) return v.get_si();
    return to_string(v);
}

json vec_json(const IntVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(int_json(x));
    return a;
}

json rvec_json(const RatVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

json mat_json(const IntMatrix& m) {
    json a = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r)));
    return a;
}

template <class T>
json list_json(const std::vector<T>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(x);
    return a;
}

const char* kind_name(LoopSpec::Kind k) { return k == LoopSpec::Kind::Vertex ? "vertex" : "combination"; }

const char* source_name(StratumSpec::Source s) {
    switch (s) {
        case StratumSpec::Source::Table: return "table";
        case StratumSpec::Source::Quotient: return "quotient";
        case StratumSpec::Source::None: return "none";
    }
    return "none";
}

// ---------------------------------------------------------------- reading

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& object(const json& j, const std::string& path, std::initializer_list<const char*> allowed,
                   std::initializer_list<const char*> required = {}) {
    if (!j.is_object()) throw SpecError(path, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k)) throw SpecError(at(path, k), "unknown field");
    for (const char* k : required)
        if (!j.contains(k)) throw SpecError(at(path, k), "missing required field");
    return j;
}

const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) throw SpecError(path, "expected an array");
    return j;
}

std::string str(const json& j, const std::string& path) {
    if (!j.is_string()) throw SpecError(path, "expected a string");
    return j.get<std::string>();
}

bool boolean(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw SpecError(path, "expected true or false");
    return j.get<bool>();
}

Integer integer(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Integer(long(j.get<long long>()));
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) {
        try {
            Rational q = parse_rational(j.get<std::string>());
            if (q.get_den() == 1) return q.get_num();
        } catch (const Error&) {
        }
    }
    throw SpecError(path, "expected an integer");
}

std::size_t as_index(const json& j, const std::string& path) {
    Integer v = integer(j, path);
    if (v < 0 || !v.fits_ulong_p()) throw SpecError(path, "expected a nonnegative index");
    return v.get_ui();
}

Rational rational(const json& j, const std::string& path) {
    if (j.is_number_integer() || j.is_number_unsigned()) return Rational(integer(j, path));
    if (!j.is_string()) throw SpecError(path, "expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        throw SpecError(path, e.what());
    }
}

template <class F>
auto list(const json& j, const std::string& path, F each) {
    using T = decltype(each(j, path));
    std::vector<T> out;
    array(j, path);
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(each(j[i], at(path, i)));
    return out;
}

std::vector<std::size_t> indices(const json& j, const std::string& path) { return list(j, path, as_index); }
std::vector<std::string> strings(const json& j, const std::string& path) { return list(j, path, str); }

IntVec ivec(const json& j, const std::string& path) { return IntVec(list(j, path, integer)); }
RatVec rvec(const json& j, const std::string& path) { return RatVec(list(j, path, rational)); }

IntMatrix imat(const json& j, const std::string& path) {
    auto rows = list(j, path, ivec);
    std::size_t cols = rows.empty() ? 0 : rows[0].dim();
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].dim() != cols) throw SpecError(at(path, r), "ragged matrix row");
    return IntMatrix::from_rows(rows, cols);
}

Fan fan_from(const json& j, const std::string& path) {
    object(j, path, {"dim", "rays", "maximal_cones"}, {"dim", "rays", "maximal_cones"});
    Fan f;
    f.dim = as_index(j["dim"], at(path, "dim"));
    f.rays = list(j["rays"], at(path, "rays"), ivec);
    f.cones = list(j["maximal_cones"], at(path, "maximal_cones"), indices);
    for (std::size_t r = 0; r < f.rays.size(); ++r)
        if (f.rays[r].dim() != f.dim) throw SpecError(at(at(path, "rays"), r), "ray length differs from dim");
    for (std::size_t c = 0; c < f.cones.size(); ++c)
        for (auto i : f.cones[c])
            if (i >= f.rays.size()) throw SpecError(at(at(path, "maximal_cones"), c), "ray index out of range");
    return f;
}

}  // namespace

nlohmann::ordered_json fan_to_json(const Fan& f) {
    json j;
    j["dim"] = f.dim;
    json rays = json::array();
    for (const auto& r : f.rays) rays.push_back(vec_json(r));
    j["rays"] = rays;
    json cones = json::array();
    for (const auto& c : f.cones) cones.push_back(list_json(c));
    j["maximal_cones"] = cones;
    return j;
}

nlohmann::ordered_json spec_to_json(const DegenerationSpec& s) {
    json j;
    j["schema"] = kSchemaVersion;
    j["name"] = s.name;
    j["n"] = s.n;
    json c;
    c["vertices"] = list_json(s.complex.vertex_names);
    json mult = json::array();
    for (const auto& m : s.complex.multiplicity) mult.push_back(int_json(m));
    c["multiplicity"] = mult;
    json faces = json::array();
    for (const auto& f : s.complex.faces) faces.push_back(list_json(f));
    c["faces"] = faces;
    if (!s.complex.labels.empty()) c["labels"] = list_json(s.complex.labels);
    j["complex"] = c;

    json models = json::array();
    for (const auto& m : s.models) {
        json x;
        x["name"] = m.name;
        if (!m.order.empty()) x["order"] = list_json(m.order);
        json curves = json::array();
        for (const auto& f : m.curves) curves.push_back(list_json(f));
        x["curves"] = curves;
        x["numbers"] = mat_json(m.numbers);
        models.push_back(x);
    }
    j["models"] = models;

    json regions = json::array();
    for (const auto& r : s.regions) regions.push_back(json{{"vertex", r.vertex}, {"model", r.model}});
    j["regions"] = regions;

    json loops = json::array();
    for (const auto& l : s.loops) {
        json x;
        x["name"] = l.name;
        x["kind"] = kind_name(l.kind);
        x["origin"] = l.origin;
        x["face"] = list_json(l.face);
        x["cycle"] = list_json(l.cycle);
        x["models"] = list_json(l.models);
        if (!l.orientation.empty()) x["orientation"] = l.orientation;
        if (!l.report_basis.empty()) x["report_basis"] = list_json(l.report_basis);
        if (l.expected) x["expected"] = mat_json(*l.expected);
        if (l.expected_basis_change) x["expected_basis_change"] = mat_json(*l.expected_basis_change);
        if (l.semisimple_scale) x["semisimple_scale"] = *l.semisimple_scale;
        if (!l.ref.empty()) x["ref"] = l.ref;
        loops.push_back(x);
    }
    j["loops"] = loops;

    json relations = json::array();
    for (const auto& r : s.relations) {
        json x{{"name", r.name}, {"product", list_json(r.product)}, {"equals", r.equals}};
        if (!r.ref.empty()) x["ref"] = r.ref;
        relations.push_back(x);
    }
    j["relations"] = relations;

    json strata = json::array();
    for (const auto& st : s.strata) {
        json x;
        x["id"] = st.id;
        x["source"] = source_name(st.source);
        if (!st.model.empty()) x["model"] = st.model;
        if (!st.components.empty()) x["components"] = list_json(st.components);
        if (!st.fan.empty()) x["fan"] = st.fan;
        if (!st.rays.empty()) x["rays"] = list_json(st.rays);
        if (st.fan_z) x["fan_z"] = fan_to_json(*st.fan_z);
        if (st.lambda) x["lambda"] = mat_json(*st.lambda);
        if (st.expect_certified) x["expect_certified"] = *st.expect_certified;
        strata.push_back(x);
    }
    j["strata"] = strata;

    json wings = json::array();
    for (const auto& w : s.wings) {
        json pts = json::array();
        for (const auto& p : w.points) pts.push_back(to_string(p));
        wings.push_back(json{{"edge", list_json(w.edge)}, {"points", pts}});
    }
    j["wings"] = wings;

    if (!s.gamma.kind.empty())
        j["gamma"] = json{{"kind", s.gamma.kind},
                          {"expected_vertices", s.gamma.expected_vertices},
                          {"expected_edges", s.gamma.expected_edges}};

    if (s.local) {
        const auto& lm = *s.local;
        json x;
        json rays = json::array();
        for (std::size_t i = 0; i < lm.rays.size(); ++i)
            rays.push_back(json{{"name", i < lm.ray_names.size() ? lm.ray_names[i] : ""}, {"u", vec_json(lm.rays[i])}});
        x["rays"] = rays;
        x["prism"] = list_json(lm.prism);
        x["base"] = lm.base;
        json cones = json::array();
        for (const auto& c : lm.base_cones) cones.push_back(list_json(c));
        x["base_cones"] = cones;
        json steps = json::array();
        for (const auto& st : lm.steps)
            steps.push_back(
                json{{"fan", st.fan}, {"parent", st.parent}, {"face", list_json(st.face)}, {"new_ray", st.new_ray}});
        x["steps"] = steps;
        json cells = json::array();
        for (const auto& [f, k] : lm.expected_cells) cells.push_back(json{{"fan", f}, {"cells", k}});
        x["expected_cells"] = cells;
        json edges = json::array();
        for (const auto& e : lm.expected_interior_edges) edges.push_back(json{{"fan", e.fan}, {"a", e.a}, {"b", e.b}});
        x["expected_interior_edges"] = edges;
        json images = json::array();
        for (const auto& im : lm.expected_images)
            images.push_back(json{{"fan", im.fan}, {"vertex", im.vertex}, {"image", im.image}});
        x["expected_images"] = images;
        j["local"] = x;
    }

    json r;
    r["maps"] = list_json(s.retractions.maps);
    r["region_check"] = s.retractions.region_check;
    json images = json::array();
    for (const auto& im : s.retractions.expected_images)
        images.push_back(json{{"map", im.map}, {"point", rvec_json(im.point)}, {"image", rvec_json(im.image)}});
    r["expected_images"] = images;
    j["retractions"] = r;
    j["fermat_n"] = list_json(s.fermat_n);
    return j;
}

DegenerationSpec spec_from_json(const nlohmann::ordered_json& j) {
    const std::string root;
    object(j, root,
           {"schema", "name", "n", "complex", "models", "regions", "loops", "relations", "strata", "wings", "gamma",
            "local", "retractions", "fermat_n"},
           {"schema", "name", "n", "complex"});
    if (integer(j["schema"], "/schema") != kSchemaVersion)
        throw SpecError("/schema", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
    DegenerationSpec s;
    s.name = str(j["name"], "/name");
    s.n = as_index(j["n"], "/n");

    const json& c = object(j["complex"], "/complex", {"vertices", "multiplicity", "faces", "labels"},
                           {"vertices", "faces"});
    s.complex.vertex_names = strings(c["vertices"], "/complex/vertices");
    if (c.contains("multiplicity"))
        s.complex.multiplicity = list(c["multiplicity"], "/complex/multiplicity", integer);
    else
        s.complex.multiplicity.assign(s.complex.vertex_names.size(), Integer(1));
    s.complex.faces = list(c["faces"], "/complex/faces", indices);
    if (c.contains("labels")) s.complex.labels = strings(c["labels"], "/complex/labels");

    if (j.contains("models"))
        s.models = list(j["models"], "/models", [](const json& x, const std::string& p) {
            object(x, p, {"name", "order", "curves", "numbers"}, {"name", "curves", "numbers"});
            TableModel m;
            m.name = str(x["name"], at(p, "name"));
            if (x.contains("order")) m.order = indices(x["order"], at(p, "order"));
            m.curves = list(x["curves"], at(p, "curves"), indices);
            m.numbers = imat(x["numbers"], at(p, "numbers"));
            return m;
        });
    if (j.contains("regions"))
        s.regions = list(j["regions"], "/regions", [](const json& x, const std::string& p) {
            object(x, p, {"vertex", "model"}, {"vertex", "model"});
            return RegionSpec{as_index(x["vertex"], at(p, "vertex")), str(x["model"], at(p, "model"))};
        });
    if (j.contains("loops"))
        s.loops = list(j["loops"], "/loops", [](const json& x, const std::string& p) {
            object(x, p,
                   {"name", "kind", "origin", "face", "cycle", "models", "orientation", "report_basis", "expected",
                    "expected_basis_change", "semisimple_scale", "ref"},
                   {"name", "kind", "origin", "cycle", "models"});
            LoopSpec l;
            l.name = str(x["name"], at(p, "name"));
            std::string kind = str(x["kind"], at(p, "kind"));
            if (kind == "vertex")
                l.kind = LoopSpec::Kind::Vertex;
            else if (kind == "combination")
                l.kind = LoopSpec::Kind::Combination;
            else
                throw SpecError(at(p, "kind"), "expected \"vertex\" or \"combination\"");
            l.origin = as_index(x["origin"], at(p, "origin"));
            if (x.contains("face")) l.face = indices(x["face"], at(p, "face"));
            l.cycle = indices(x["cycle"], at(p, "cycle"));
            l.models = strings(x["models"], at(p, "models"));
            if (x.contains("orientation")) l.orientation = str(x["orientation"], at(p, "orientation"));
            if (x.contains("report_basis")) l.report_basis = indices(x["report_basis"], at(p, "report_basis"));
            if (x.contains("expected")) l.expected = imat(x["expected"], at(p, "expected"));
            if (x.contains("expected_basis_change"))
                l.expected_basis_change = imat(x["expected_basis_change"], at(p, "expected_basis_change"));
            if (x.contains("semisimple_scale")) {
                Integer k = integer(x["semisimple_scale"], at(p, "semisimple_scale"));
                if (!k.fits_slong_p()) throw SpecError(at(p, "semisimple_scale"), "out of range");
                l.semisimple_scale = k.get_si();
            }
            if (x.contains("ref")) l.ref = str(x["ref"], at(p, "ref"));
            return l;
        });
    if (j.contains("relations"))
        s.relations = list(j["relations"], "/relations", [](const json& x, const std::string& p) {
            object(x, p, {"name", "product", "equals", "ref"}, {"name", "product", "equals"});
            RelationSpec r;
            r.name = str(x["name"], at(p, "name"));
            r.product = strings(x["product"], at(p, "product"));
            r.equals = str(x["equals"], at(p, "equals"));
            if (x.contains("ref")) r.ref = str(x["ref"], at(p, "ref"));
            return r;
        });
    if (j.contains("strata"))
        s.strata = list(j["strata"], "/strata", [](const json& x, const std::string& p) {
            object(x, p, {"id", "source", "model", "components", "fan", "rays", "fan_z", "lambda", "expect_certified"},
                   {"id", "source"});
            StratumSpec st;
            st.id = str(x["id"], at(p, "id"));
            std::string src = str(x["source"], at(p, "source"));
            if (src == "table")
                st.source = StratumSpec::Source::Table;
            else if (src == "quotient")
                st.source = StratumSpec::Source::Quotient;
            else if (src == "none")
                st.source = StratumSpec::Source::None;
            else
                throw SpecError(at(p, "source"), "expected \"table\", \"quotient\" or \"none\"");
            if (x.contains("model")) st.model = str(x["model"], at(p, "model"));
            if (x.contains("components")) st.components = indices(x["components"], at(p, "components"));
            if (x.contains("fan")) st.fan = str(x["fan"], at(p, "fan"));
            if (x.contains("rays")) st.rays = strings(x["rays"], at(p, "rays"));
            if (x.contains("fan_z")) st.fan_z = fan_from(x["fan_z"], at(p, "fan_z"));
            if (x.contains("lambda")) st.lambda = imat(x["lambda"], at(p, "lambda"));
            if (x.contains("expect_certified"))
                st.expect_certified = boolean(x["expect_certified"], at(p, "expect_certified"));
            return st;
        });
    if (j.contains("wings"))
        s.wings = list(j["wings"], "/wings", [](const json& x, const std::string& p) {
            object(x, p, {"edge", "points"}, {"edge", "points"});
            return WingSpec{indices(x["edge"], at(p, "edge")), list(x["points"], at(p, "points"), rational)};
        });
    if (j.contains("gamma")) {
        const json& g = object(j["gamma"], "/gamma", {"kind", "expected_vertices", "expected_edges"}, {"kind"});
        s.gamma.kind = str(g["kind"], "/gamma/kind");
        if (g.contains("expected_vertices")) s.gamma.expected_vertices = as_index(g["expected_vertices"], "/gamma/expected_vertices");
        if (g.contains("expected_edges")) s.gamma.expected_edges = as_index(g["expected_edges"], "/gamma/expected_edges");
    }
    if (j.contains("local")) {
        const std::string p = "/local";
        const json& x = object(j["local"], p,
                               {"rays", "prism", "base", "base_cones", "steps", "expected_cells",
                                "expected_interior_edges", "expected_images"},
                               {"rays", "prism", "base", "base_cones"});
        LocalModelSpec lm;
        auto rays = list(x["rays"], at(p, "rays"), [](const json& r, const std::string& q) {
            object(r, q, {"name", "u"}, {"name", "u"});
            return std::make_pair(str(r["name"], at(q, "name")), ivec(r["u"], at(q, "u")));
        });
        for (auto& [n, u] : rays) {
            lm.ray_names.push_back(n);
            lm.rays.push_back(u);
        }
        lm.prism = strings(x["prism"], at(p, "prism"));
        lm.base = str(x["base"], at(p, "base"));
        lm.base_cones = list(x["base_cones"], at(p, "base_cones"), strings);
        if (x.contains("steps"))
            lm.steps = list(x["steps"], at(p, "steps"), [](const json& r, const std::string& q) {
                object(r, q, {"fan", "parent", "face", "new_ray"}, {"fan", "parent", "face", "new_ray"});
                return FanStep{str(r["fan"], at(q, "fan")), str(r["parent"], at(q, "parent")),
                               strings(r["face"], at(q, "face")), str(r["new_ray"], at(q, "new_ray"))};
            });
        if (x.contains("expected_cells"))
            lm.expected_cells = list(x["expected_cells"], at(p, "expected_cells"), [](const json& r, const std::string& q) {
                object(r, q, {"fan", "cells"}, {"fan", "cells"});
                return std::make_pair(str(r["fan"], at(q, "fan")), as_index(r["cells"], at(q, "cells")));
            });
        if (x.contains("expected_interior_edges"))
            lm.expected_interior_edges =
                list(x["expected_interior_edges"], at(p, "expected_interior_edges"), [](const json& r, const std::string& q) {
                    object(r, q, {"fan", "a", "b"}, {"fan", "a", "b"});
                    return LocalModelSpec::Edge{str(r["fan"], at(q, "fan")), str(r["a"], at(q, "a")),
                                                str(r["b"], at(q, "b"))};
                });
        if (x.contains("expected_images"))
            lm.expected_images = list(x["expected_images"], at(p, "expected_images"), [](const json& r, const std::string& q) {
                object(r, q, {"fan", "vertex", "image"}, {"fan", "vertex", "image"});
                return LocalModelSpec::Image{str(r["fan"], at(q, "fan")), str(r["vertex"], at(q, "vertex")),
                                             str(r["image"], at(q, "image"))};
            });
        s.local = lm;
    }
    if (j.contains("retractions")) {
        const std::string p = "/retractions";
        const json& x = object(j["retractions"], p, {"maps", "region_check", "expected_images"});
        if (x.contains("maps")) s.retractions.maps = strings(x["maps"], at(p, "maps"));
        if (x.contains("region_check")) s.retractions.region_check = boolean(x["region_check"], at(p, "region_check"));
        if (x.contains("expected_images"))
            s.retractions.expected_images =
                list(x["expected_images"], at(p, "expected_images"), [](const json& r, const std::string& q) {
                    object(r, q, {"map", "point", "image"}, {"map", "point", "image"});
                    return RetractionSpec::Image{str(r["map"], at(q, "map")), rvec(r["point"], at(q, "point")),
                                                 rvec(r["image"], at(q, "image"))};
                });
    }
    if (j.contains("fermat_n")) s.fermat_n = indices(j["fermat_n"], "/fermat_n");

    // Index ranges; the remaining structure is checked by validate_spec.
    const std::size_t nv = s.complex.vertex_names.size();
    if (s.complex.multiplicity.size() != nv) throw SpecError("/complex/multiplicity", "one entry per vertex expected");
    auto check = [&](const std::vector<std::size_t>& xs, const std::string& p) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (xs[i] >= nv) throw SpecError(at(p, i), "vertex index out of range");
    };
    for (std::size_t f = 0; f < s.complex.faces.size(); ++f) check(s.complex.faces[f], at("/complex/faces", f));
    for (std::size_t m = 0; m < s.models.size(); ++m) {
        check(s.models[m].order, at(at("/models", m), "order"));
        for (std::size_t r = 0; r < s.models[m].curves.size(); ++r)
            check(s.models[m].curves[r], at(at(at("/models", m), "curves"), r));
    }
    for (std::size_t r = 0; r < s.regions.size(); ++r) check({s.regions[r].vertex}, at(at("/regions", r), "vertex"));
    for (std::size_t k = 0; k < s.loops.size(); ++k) {
        const auto p = at("/loops", k);
        const auto& l = s.loops[k];
        if (l.origin >= nv) throw SpecError(at(p, "origin"), "vertex index out of range");
        check(l.face, at(p, "face"));
        check(l.cycle, at(p, "cycle"));
        check(l.report_basis, at(p, "report_basis"));
    }
    for (std::size_t k = 0; k < s.strata.size(); ++k) check(s.strata[k].components, at(at("/strata", k), "components"));
    for (std::size_t k = 0; k < s.wings.size(); ++k) check(s.wings[k].edge, at(at("/wings", k), "edge"));
    return s;
}

DegenerationSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SpecError("", "syntax error at line " + std::to_string(line) + ", column " + std::to_string(col), line,
                        col);
    }
    return spec_from_json(j);
}

std::string dump_spec(const DegenerationSpec& s) { return spec_to_json(s).dump(2) + "\n"; }

nlohmann::ordered_json report_to_json(const ScenarioReport& r) {
    json j;
    j["schema"] = kSchemaVersion;
    j["scenario"] = r.scenario;
    j["ok"] = r.ok();
    j["records_total"] = r.records.size();
    j["records_failed"] = r.failures();
    json mono = json::array();
    for (const auto& e : r.monodromy) {
        json x;
        x["loop"] = e.loop;
        x["basis"] = list_json(e.basis);
        x["origin"] = e.origin;
        x["orientation"] = e.orientation;
        x["closed_form"] = mat_json(e.closed_form);
        x["oracle"] = mat_json(e.oracle);
        x["agree"] = e.agree;
        x["rule"] = mat_json(e.rule);
        if (e.change_of_basis.rows()) x["change_of_basis"] = mat_json(e.change_of_basis);
        if (!e.b_cycle.empty()) {
            json b = json::array();
            for (const auto& v : e.b_cycle) b.push_back(int_json(v));
            x["b_cycle"] = b;
        }
        x["expected"] = e.expected ? mat_json(*e.expected) : json(nullptr);
        x["ref"] = e.ref;
        mono.push_back(x);
    }
    j["monodromy"] = mono;
    json recs = json::array();
    for (const auto& x : r.records)
        recs.push_back(json{{"name", x.name},
                            {"status", x.passed ? "pass" : "fail"},
                            {"expected", x.expected},
                            {"actual", x.actual},
                            {"ref", x.ref}});
    j["records"] = recs;
    return j;
}

std::string dump_report(const ScenarioReport& r) { return report_to_json(r).dump(2) + "\n"; }

}  // namespace syz
