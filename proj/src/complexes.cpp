#include "syz/complexes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace syz {

namespace {

std::vector<Face> nonempty_subsets(const Face& f) {
    std::vector<Face> out;
    const std::size_t n = f.size();
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        Face s;
        for (std::size_t k = 0; k < n; ++k)
            if (mask & (std::size_t(1) << k)) s.push_back(f[k]);
        out.push_back(s);
    }
    return out;
}

bool is_subset(const Face& a, const Face& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// All strictly increasing chains of the given faces (by index), each chain listed once.
std::vector<std::vector<std::size_t>> chains(const std::vector<Face>& faces) {
    std::vector<std::size_t> order(faces.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return faces[a].size() < faces[b].size(); });
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> extend = [&](std::size_t last) {
        out.push_back(cur);
        for (auto k : order)
            if (faces[k].size() > faces[last].size() && is_subset(faces[last], faces[k])) {
                cur.push_back(k);
                extend(k);
                cur.pop_back();
            }
    };
    for (auto k : order) {
        cur = {k};
        extend(k);
    }
    return out;
}

}  // namespace

std::optional<std::size_t> DualComplex::find_face(Face f) const {
    std::sort(f.begin(), f.end());
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i] == f) return i;
    return std::nullopt;
}

std::size_t DualComplex::face_of(const Face& f) const {
    auto i = find_face(f);
    if (!i) {
        std::string s;
        for (auto v : f) s += (s.empty() ? "" : ",") + std::to_string(v);
        throw Error("unknown face {" + s + "}");
    }
    return *i;
}

std::vector<std::string> validate_complex(const DualComplex& c) {
    std::vector<std::string> v;
    if (c.multiplicity.size() != c.vertex_names.size()) v.push_back("one multiplicity per vertex expected");
    for (std::size_t i = 0; i < c.multiplicity.size(); ++i)
        if (c.multiplicity[i] <= 0) v.push_back("multiplicity of vertex " + std::to_string(i) + " is not positive");
    if (!c.labels.empty() && c.labels.size() != c.faces.size()) v.push_back("one label per face expected");
    std::set<Face> seen;
    for (const auto& f : c.faces) {
        if (f.empty()) {
            v.push_back("empty face");
            continue;
        }
        if (!std::is_sorted(f.begin(), f.end()) || std::adjacent_find(f.begin(), f.end()) != f.end())
            v.push_back("face vertices must be strictly increasing");
        if (f.back() >= c.vertex_count()) v.push_back("face vertex out of range");
        if (!seen.insert(f).second) v.push_back("duplicate face");
    }
    if (!v.empty()) return v;
    for (const auto& f : c.faces)
        for (const auto& s : nonempty_subsets(f))
            if (!seen.count(s)) {
                v.push_back("faces not closed under subsets");
                return v;
            }
    return v;
}

DualComplex simplex_complex(std::size_t m, bool boundary_only) {
    DualComplex c;
    Face all;
    for (std::size_t i = 0; i <= m; ++i) {
        c.vertex_names.push_back("v" + std::to_string(i));
        c.multiplicity.push_back(1);
        all.push_back(i);
    }
    auto subs = nonempty_subsets(all);
    std::stable_sort(subs.begin(), subs.end(), [](const Face& a, const Face& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (auto& s : subs)
        if (!(boundary_only && s.size() == m + 1)) c.faces.push_back(s);
    return c;
}

void add_face_closure(DualComplex& c, const Face& f) {
    Face g = f;
    std::sort(g.begin(), g.end());
    auto subs = nonempty_subsets(g);
    std::stable_sort(subs.begin(), subs.end(), [](const Face& a, const Face& b) { return a.size() < b.size(); });
    for (const auto& s : subs)
        if (!c.find_face(s)) {
            c.faces.push_back(s);
            if (!c.labels.empty()) c.labels.push_back("");
        }
}

std::vector<std::size_t> star(const DualComplex& c, std::size_t face) {
    if (face >= c.faces.size()) throw Error("star: unknown face");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.faces.size(); ++i)
        if (is_subset(c.faces[face], c.faces[i])) out.push_back(i);
    return out;
}

std::vector<std::size_t> closed_star(const DualComplex& c, std::size_t face) {
    std::set<std::size_t> out;
    for (auto i : star(c, face))
        for (std::size_t k = 0; k < c.faces.size(); ++k)
            if (is_subset(c.faces[k], c.faces[i])) out.insert(k);
    return {out.begin(), out.end()};
}

std::vector<std::string> validate_point(const DualComplex& c, const WeightedPoint& p) {
    std::vector<std::string> v;
    if (p.face >= c.faces.size()) return {"unknown face"};
    const Face& f = c.faces[p.face];
    if (p.w.dim() != f.size()) return {"weight count differs from face size"};
    Rational s = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (p.w[k] < 0) v.push_back("negative weight");
        s += c.multiplicity[f[k]] * p.w[k];
    }
    if (s != 1) v.push_back("weighted sum is " + to_string(s) + ", expected 1");
    return v;
}

RatVec full_weights(const DualComplex& c, const WeightedPoint& p) {
    const Face& f = c.faces.at(p.face);
    RatVec out(c.vertex_count());
    for (std::size_t k = 0; k < f.size(); ++k) out[f[k]] = p.w[k];
    return out;
}

WeightedPoint point_from_weights(const DualComplex& c, const RatVec& full) {
    Face support;
    for (std::size_t i = 0; i < full.dim(); ++i)
        if (full[i] != 0) support.push_back(i);
    WeightedPoint p;
    p.face = c.face_of(support);
    p.w = RatVec(support.size());
    for (std::size_t k = 0; k < support.size(); ++k) p.w[k] = full[support[k]];
    return p;
}

WeightedPoint barycenter(const DualComplex& c, std::size_t face) {
    const Face& f = c.faces.at(face);
    Integer total = 0;
    for (auto v : f) total += c.multiplicity[v];
    WeightedPoint p{face, RatVec(f.size())};
    for (std::size_t k = 0; k < f.size(); ++k) p.w[k] = make_rational(1, total);
    return p;
}

std::vector<std::size_t> Subdivision::maximal_cells() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        bool maximal = true;
        for (std::size_t k = 0; k < cells.size() && maximal; ++k)
            if (k != i && cells[k].size() > cells[i].size()) {
                std::vector<std::size_t> a = cells[i], b = cells[k];
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                if (std::includes(b.begin(), b.end(), a.begin(), a.end())) maximal = false;
            }
        if (maximal) out.push_back(i);
    }
    return out;
}

Subdivision barycentric_subdivision(const DualComplex& c) {
    Subdivision s;
    for (std::size_t i = 0; i < c.faces.size(); ++i) s.vertex_face.push_back(i);
    s.cells = chains(c.faces);
    return s;
}

std::vector<std::size_t> star_prime(const DualComplex& c, const Subdivision& s, std::size_t v) {
    auto vf = c.face_of({v});
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        if (s.vertex_face[s.cells[i].front()] == vf) out.push_back(i);
    return out;
}

bool in_star_prime(const DualComplex& c, const WeightedPoint& p, std::size_t v) {
    RatVec w = full_weights(c, p);
    for (std::size_t i = 0; i < w.dim(); ++i)
        if (i != v && w[i] >= w[v]) return false;
    return true;
}

std::size_t GammaComplex::dimension() const {
    std::size_t d = 0;
    for (const auto& cell : cells) d = std::max(d, cell.size() - 1);
    return d;
}

std::vector<std::size_t> GammaComplex::cells_of_dim(std::size_t d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].size() == d + 1) out.push_back(i);
    return out;
}

namespace {

RatVec face_barycenter(std::size_t m, const Face& f) {
    RatVec b(m + 1);
    for (auto v : f) b[v] = make_rational(1, f.size());
    return b;
}

}  // namespace

GammaComplex gamma_graph(std::size_t m) {
    if (m < 1) throw Error("gamma_graph: m must be at least 1");
    DualComplex tau = simplex_complex(m);
    GammaComplex g;
    g.m = m;
    for (const auto& f : tau.faces)
        if (f.size() >= 2) {
            g.vertex_faces.push_back(f);
            g.vertices.push_back(face_barycenter(m, f));
        }
    g.cells = chains(g.vertex_faces);
    return g;
}

GammaComplex gamma_two_face_graph(std::size_t m) {
    if (m < 2) throw Error("gamma_two_face_graph: m must be at least 2");
    GammaComplex g;
    g.m = m;
    std::map<Face, std::size_t> index;
    auto vertex = [&](const Face& f) {
        auto [it, fresh] = index.emplace(f, g.vertex_faces.size());
        if (fresh) {
            g.vertex_faces.push_back(f);
            g.vertices.push_back(face_barycenter(m, f));
            g.cells.push_back({it->second});
        }
        return it->second;
    };
    for (std::size_t a = 0; a <= m; ++a)
        for (std::size_t b = a + 1; b <= m; ++b)
            for (std::size_t c = b + 1; c <= m; ++c) {
                std::size_t center = vertex({a, b, c});
                for (const Face& e : {Face{a, b}, Face{a, c}, Face{b, c}}) g.cells.push_back({vertex(e), center});
            }
    return g;
}

bool in_gamma(const RatVec& barycentric) {
    Rational mx = *std::max_element(barycentric.begin(), barycentric.end());
    return std::count(barycentric.begin(), barycentric.end(), mx) >= 2;
}

Rational quasi_monomial_value(const RatVec& w, const std::vector<IntVec>& support) {
    if (support.empty()) throw Error("quasi_monomial_value: empty support");
    std::optional<Rational> best;
    for (const auto& beta : support) {
        if (beta.dim() != w.dim()) throw Error("quasi_monomial_value: exponent dimension mismatch");
        Rational v = 0;
        for (std::size_t k = 0; k < w.dim(); ++k) {
            if (beta[k] < 0) throw Error("quasi_monomial_value: negative exponent");
            v += w[k] * beta[k];
        }
        if (!best || v < *best) best = v;
    }
    return *best;
}

namespace {

Face column_support(const IntMatrix& a, const Face& cols) {
    Face out;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (auto j : cols)
            if (a(i, j) != 0) {
                out.push_back(i);
                break;
            }
    return out;
}

}  // namespace

std::vector<std::string> validate_pullback(const DualComplex& base, const DualComplex& top, const PullbackData& p) {
    std::vector<std::string> v;
    if (p.a.rows() != base.vertex_count() || p.a.cols() != top.vertex_count())
        return {"pullback matrix must be (base vertices) x (dominating vertices)"};
    for (std::size_t i = 0; i < p.a.rows(); ++i)
        for (std::size_t j = 0; j < p.a.cols(); ++j)
            if (p.a(i, j) < 0) v.push_back("negative pullback multiplicity");
    for (std::size_t j = 0; j < top.vertex_count(); ++j) {
        Integer s = 0;
        for (std::size_t i = 0; i < base.vertex_count(); ++i) s += base.multiplicity[i] * p.a(i, j);
        if (s != top.multiplicity[j])
            v.push_back("multiplicity of dominating vertex " + std::to_string(j) + " is inconsistent with the pullback");
    }
    for (std::size_t k = 0; k < top.faces.size(); ++k)
        if (!base.find_face(column_support(p.a, top.faces[k])))
            v.push_back("image of face " + std::to_string(k) + " is not a base face");
    if (!p.bimeromorphic.empty() && p.bimeromorphic.size() != top.faces.size())
        v.push_back("one bimeromorphic flag per dominating face expected");
    return v;
}

WeightedPoint model_retraction(const DualComplex& base, const DualComplex& top, const PullbackData& p,
                               const WeightedPoint& w) {
    RatVec wf = full_weights(top, w);
    if (p.a.rows() != base.vertex_count() || p.a.cols() != wf.dim())
        throw Error("model_retraction: pullback data does not match the complexes");
    RatVec img(base.vertex_count());
    Rational s = 0;
    for (std::size_t i = 0; i < img.dim(); ++i) {
        for (std::size_t j = 0; j < wf.dim(); ++j) img[i] += p.a(i, j) * wf[j];
        s += base.multiplicity[i] * img[i];
    }
    if (s != 1) throw Error("model_retraction: image violates sum a_i w_i = 1 (inconsistent pullback data)");
    return point_from_weights(base, img);
}

std::vector<std::size_t> active_faces(const DualComplex& base, const DualComplex& top, const PullbackData& p) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < top.faces.size(); ++k) {
        if (!p.bimeromorphic.empty() && !p.bimeromorphic[k]) continue;
        const Face& f = top.faces[k];
        Face img = column_support(p.a, f);
        if (img.size() != f.size() || !base.find_face(img)) continue;
        IntMatrix sub(img.size(), f.size());
        for (std::size_t r = 0; r < img.size(); ++r)
            for (std::size_t q = 0; q < f.size(); ++q) sub(r, q) = p.a(img[r], f[q]);
        if (det(sub) != 0) out.push_back(k);
    }
    return out;
}

PullbackData compose(const PullbackData& outer, const PullbackData& inner) {
    if (outer.a.cols() != inner.a.rows()) throw Error("compose: pullback dimensions do not chain");
    return PullbackData{outer.a * inner.a, inner.bimeromorphic};
}

}  // namespace syz
