#include "syz/pl_retractions.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>

namespace syz {

namespace {

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// Normal of the hyperplane through d points in R^d (generalized cross product of the differences).
RatVec hyperplane_normal(const std::vector<RatVec>& pts) {
    const std::size_t d = pts[0].dim();
    RatVec n(d);
    for (std::size_t i = 0; i < d; ++i) {
        RatMatrix minor(d - 1, d - 1);
        for (std::size_t r = 0; r + 1 < d; ++r) {
            RatVec diff = pts[r + 1] - pts[0];
            for (std::size_t c = 0, cc = 0; c < d; ++c)
                if (c != i) minor(r, cc++) = diff[c];
        }
        Rational m = d == 1 ? Rational(1) : det(minor);
        n[i] = (i % 2 == 0) ? m : Rational(-m);
    }
    return n;
}

Halfspace normalized_halfspace(RatVec a, Rational b) {
    Rational scale = 0;
    for (const auto& x : a)
        if (x != 0) {
            scale = abs(x);
            break;
        }
    for (std::size_t i = 0; i < a.dim(); ++i) a[i] /= scale;
    return {a, b / scale};
}

bool affinely_independent(const std::vector<RatVec>& pts) {
    if (pts.size() < 2) return true;
    std::vector<RatVec> diffs;
    for (std::size_t k = 1; k < pts.size(); ++k) diffs.push_back(pts[k] - pts[0]);
    return rank(RatMatrix::from_rows(diffs, pts[0].dim())) == diffs.size();
}

// Linear part of l_i(x, y) = c . (x, y, z) + d on the base triangle.
struct AffineFunctional {
    RatVec c;
    Rational d;
};

AffineFunctional lambda_functional(std::size_t i) {
    switch (i) {
        case 0: return {RatVec{0, 1, 0}, 0};
        case 1: return {RatVec{rat(1, 2), rat(-1, 2), 0}, rat(1, 2)};
        default: return {RatVec{rat(-1, 2), rat(-1, 2), 0}, rat(1, 2)};
    }
}

// l_a <= l_b as a halfspace.
Halfspace lambda_le(std::size_t a, std::size_t b) {
    auto fa = lambda_functional(a), fb = lambda_functional(b);
    return {fa.c - fb.c, fb.d - fa.d};
}

RatVec vertex_formula_extended(const RatVec& q) {
    if (q[2] == 0) return RatVec{q[0], q[1], 0};
    return berkovich_vertex_formula(q);
}

std::string fmt(const RatVec& v) { return format(v); }

}  // namespace

std::vector<Halfspace> hull_halfspaces(const std::vector<RatVec>& vertices) {
    if (vertices.empty()) throw Error("hull_halfspaces: no vertices");
    const std::size_t d = vertices[0].dim();
    std::vector<Halfspace> out;
    for (const auto& idx : combinations(vertices.size(), d)) {
        std::vector<RatVec> pts;
        for (auto i : idx) pts.push_back(vertices[i]);
        RatVec n = hyperplane_normal(pts);
        if (n.is_zero()) continue;
        Rational b = dot(n, pts[0]);
        bool le = true, ge = true;
        for (const auto& v : vertices) {
            Rational s = dot(n, v);
            if (s > b) le = false;
            if (s < b) ge = false;
        }
        if (le == ge) continue;  // splits the set, or all points on the plane
        Halfspace h = le ? normalized_halfspace(n, b) : normalized_halfspace(-n, -b);
        bool dup = false;
        for (const auto& g : out)
            if (g.a == h.a && g.b == h.b) dup = true;
        if (!dup) out.push_back(h);
    }
    return out;
}

bool in_polytope(const std::vector<Halfspace>& h, const RatVec& p) {
    return std::all_of(h.begin(), h.end(), [&](const Halfspace& s) { return s.contains(p); });
}

bool Piece::contains(const RatVec& p) const { return in_polytope(domain, p) && (!guard || guard(p)); }

std::vector<std::size_t> containing_pieces(const PLMap& m, const RatVec& p) {
    if (p.dim() != m.in_dim) throw Error(m.name + ": point has dimension " + std::to_string(p.dim()));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m.pieces.size(); ++i)
        if (m.pieces[i].contains(p)) out.push_back(i);
    return out;
}

RatVec eval(const PLMap& m, const RatVec& p) {
    auto idx = containing_pieces(m, p);
    if (idx.empty()) throw Error(m.name + ": point " + fmt(p) + " outside domain");
    RatVec first = m.pieces[idx[0]].formula(p);
    for (std::size_t k = 1; k < idx.size(); ++k) {
        RatVec other = m.pieces[idx[k]].formula(p);
        if (!(other == first))
            throw Error(m.name + ": piece disagreement at " + fmt(p) + " (" + m.pieces[idx[0]].name + " gives " +
                        fmt(first) + ", " + m.pieces[idx[k]].name + " gives " + fmt(other) + ")");
    }
    return first;
}

PLMap identity_map(std::size_t dim, std::vector<std::vector<RatVec>> cells) {
    PLMap m;
    m.name = "identity";
    m.in_dim = m.out_dim = dim;
    for (const auto& c : cells) {
        Piece p{"identity", hull_halfspaces(c), {}, [](const RatVec& x) { return x; },
                AffinePart{RatMatrix::identity(dim), RatVec(dim)}};
        m.pieces.push_back(p);
    }
    auto hs = std::make_shared<std::vector<std::vector<Halfspace>>>();
    for (const auto& p : m.pieces) hs->push_back(p.domain);
    m.in_target = [hs](const RatVec& x) {
        return std::any_of(hs->begin(), hs->end(), [&](const auto& h) { return in_polytope(h, x); });
    };
    for (const auto& c : cells)
        for (const auto& v : c) m.target_vertices.push_back(v);
    m.sample_cells = std::move(cells);
    return m;
}

PLMap compose(const PLMap& outer, const PLMap& inner, std::string name) {
    if (inner.out_dim != outer.in_dim) throw Error("compose: dimensions do not chain");
    PLMap m;
    m.name = std::move(name);
    m.in_dim = inner.in_dim;
    m.out_dim = outer.out_dim;
    for (const auto& pi : inner.pieces)
        for (const auto& po : outer.pieces) {
            Piece c;
            c.name = po.name + " o " + pi.name;
            c.domain = pi.domain;
            auto ig = pi.guard;
            auto f = pi.formula;
            c.guard = [ig, f, po](const RatVec& x) { return (!ig || ig(x)) && po.contains(f(x)); };
            c.formula = [f, g = po.formula](const RatVec& x) { return g(f(x)); };
            m.pieces.push_back(c);
        }
    m.sample_cells = inner.sample_cells;
    m.excluded_points = inner.excluded_points;
    m.in_target = outer.in_target;
    m.target_vertices = outer.target_vertices;
    return m;
}

std::vector<RatVec> wing_triangle() { return {RatVec{-1, 0}, RatVec{1, 0}, RatVec{0, 1}}; }

PLMap ks_wing_retraction(const Rational& a_e) {
    if (!(a_e > -1 && a_e < 1)) throw Error("ks_wing_retraction: a_e must lie strictly inside the edge");
    PLMap m;
    m.name = "ks-wing(" + to_string(a_e) + ")";
    m.in_dim = m.out_dim = 2;
    auto tri = hull_halfspaces(wing_triangle());
    auto with = [&](std::vector<Halfspace> extra) {
        auto d = tri;
        d.insert(d.end(), extra.begin(), extra.end());
        return d;
    };
    m.pieces.push_back(Piece{"left", with({{RatVec{1, 1}, a_e}}), {},
                             [](const RatVec& p) { return RatVec{p[0] + p[1], 0}; },
                             AffinePart{RatMatrix{{1, 1}, {0, 0}}, RatVec(2)}});
    m.pieces.push_back(Piece{"right", with({{RatVec{-1, 1}, -a_e}}), {},
                             [](const RatVec& p) { return RatVec{p[0] - p[1], 0}; },
                             AffinePart{RatMatrix{{1, -1}, {0, 0}}, RatVec(2)}});
    m.pieces.push_back(Piece{"clamp", with({{RatVec{-1, -1}, -a_e}, {RatVec{1, -1}, a_e}}), {},
                             [a_e](const RatVec&) { return RatVec{a_e, 0}; },
                             AffinePart{RatMatrix(2, 2), RatVec{a_e, 0}}});
    m.sample_cells = {wing_triangle()};
    m.in_target = [](const RatVec& p) { return p[1] == 0 && p[0] >= -1 && p[0] <= 1; };
    m.target_vertices = {RatVec{-1, 0}, RatVec{1, 0}};
    return m;
}

PLMap wing_model_retraction() {
    PLMap m;
    m.name = "wing-model";
    m.in_dim = m.out_dim = 2;
    m.pieces.push_back(Piece{"parallel", hull_halfspaces(wing_triangle()), {},
                             [](const RatVec& p) { return RatVec{p[0] - p[1], 0}; },
                             AffinePart{RatMatrix{{1, -1}, {0, 0}}, RatVec(2)}});
    m.sample_cells = {wing_triangle()};
    m.in_target = [](const RatVec& p) { return p[1] == 0 && p[0] >= -1 && p[0] <= 1; };
    m.target_vertices = {RatVec{-1, 0}, RatVec{1, 0}};
    return m;
}

namespace local_model {

RatVec v1() { return RatVec{0, 1, 0}; }
RatVec v2() { return RatVec{1, 0, 0}; }
RatVec v3() { return RatVec{-1, 0, 0}; }
RatVec v12() { return RatVec{rat(1, 2), rat(1, 2), 1}; }
RatVec v13() { return RatVec{rat(-1, 2), rat(1, 2), 1}; }
RatVec v23() { return RatVec{0, 0, 1}; }
RatVec v123_prime() { return RatVec{0, rat(1, 3), rat(4, 3)}; }

std::vector<RatVec> octahedron() { return {v1(), v2(), v3(), v12(), v13(), v23()}; }
std::vector<RatVec> hull_p5() { return {v1(), v2(), v3(), v13(), v23()}; }
std::vector<RatVec> sector_p() {
    return {v23(), RatVec{rat(-1, 4), rat(1, 4), 1}, RatVec{0, rat(1, 3), 1}, RatVec{0, 0, 0}, v3(),
            RatVec{0, rat(1, 3), 0}};
}
std::vector<RatVec> extra_cell() { return {v12(), v13(), v23(), v123_prime()}; }

RatVec base_barycentric(const RatVec& p) {
    RatVec l(3);
    for (std::size_t i = 0; i < 3; ++i) {
        auto f = lambda_functional(i);
        l[i] = f.c[0] * p[0] + f.c[1] * p[1] + f.d;
    }
    return l;
}

RatVec from_base_barycentric(const RatVec& l, const Rational& z) { return RatVec{l[1] - l[2], l[0], z}; }

RatVec permute(const std::vector<std::size_t>& perm, const RatVec& p) {
    RatVec l = base_barycentric(p), out(3);
    for (std::size_t i = 0; i < 3; ++i) out[perm[i]] = l[i];
    return from_base_barycentric(out, p[2]);
}

std::vector<std::size_t> inverse_perm(const std::vector<std::size_t>& perm) {
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    return inv;
}

bool in_base_triangle(const RatVec& p) {
    if (p[2] != 0) return false;
    RatVec l = base_barycentric(p);
    return l[0] >= 0 && l[1] >= 0 && l[2] >= 0;
}

}  // namespace local_model

RatVec berkovich_vertex_formula(const RatVec& p) {
    Rational den = p[0] + p[1] + 1;
    if (den == 0) throw Error("vertex formula undefined where x+y+1 = 0 (v_3)");
    Rational t = 2 * p[1] / den;
    Rational half = t / 2;
    return RatVec{p[0] + (1 - half) * p[2], p[1] + half * p[2], 0};
}

PLMap quintic_vertex_retraction() {
    using namespace local_model;
    PLMap m;
    m.name = "quintic-vertex";
    m.in_dim = m.out_dim = 3;
    m.pieces.push_back(Piece{"vertex-formula", hull_halfspaces(octahedron()), {}, berkovich_vertex_formula, {}});
    m.sample_cells = {hull_p5()};
    m.excluded_points = {v3()};
    m.in_target = in_base_triangle;
    m.target_vertices = {v1(), v2()};
    return m;
}

Rational combinatorial_guard(const RatVec& p) {
    if (p[2] == 0) return p[0];
    Rational t = 2 * p[1] / (p[0] + p[1] + 1);
    return p[0] + (1 - t / 2) * p[2];
}

RatVec combinatorial_formula(const RatVec& p) {
    if (combinatorial_guard(p) <= 0) return vertex_formula_extended(p);
    return RatVec{0, p[1] / (p[0] + 1), 0};
}

PLMap quintic_combinatorial_retraction() {
    using namespace local_model;
    PLMap m;
    m.name = "quintic-combinatorial";
    m.in_dim = m.out_dim = 3;
    auto oct = hull_halfspaces(octahedron());
    std::vector<std::size_t> perm{0, 1, 2};
    do {
        // Wedge mapped onto the sector by perm: l_a <= l_b <= l_c with perm(a,b,c) = (0,1,2).
        auto inv = inverse_perm(perm);
        auto domain = oct;
        domain.push_back(lambda_le(inv[0], inv[1]));
        domain.push_back(lambda_le(inv[1], inv[2]));
        std::string tag = std::to_string(perm[0]) + std::to_string(perm[1]) + std::to_string(perm[2]);
        m.pieces.push_back(Piece{
            "branch1[" + tag + "]", domain,
            [perm](const RatVec& p) { return combinatorial_guard(permute(perm, p)) <= 0; },
            [perm, inv](const RatVec& p) { return permute(inv, vertex_formula_extended(permute(perm, p))); }, {}});
        m.pieces.push_back(Piece{
            "branch2[" + tag + "]", domain,
            [perm](const RatVec& p) { return combinatorial_guard(permute(perm, p)) >= 0; },
            [perm, inv](const RatVec& p) {
                RatVec q = permute(perm, p);
                return permute(inv, RatVec{0, q[1] / (q[0] + 1), 0});
            },
            {}});
    } while (std::next_permutation(perm.begin(), perm.end()));
    m.sample_cells = {octahedron()};
    m.in_target = in_base_triangle;
    m.target_vertices = {v1(), v2(), v3()};
    return m;
}

PLMap collapse_kappa() {
    using namespace local_model;
    PLMap m;
    m.name = "kappa";
    m.in_dim = m.out_dim = 3;
    m.pieces.push_back(Piece{"octahedron", hull_halfspaces(octahedron()), {}, [](const RatVec& p) { return p; },
                             AffinePart{RatMatrix::identity(3), RatVec(3)}});
    m.pieces.push_back(Piece{"extra-cell", hull_halfspaces(extra_cell()), {},
                             [](const RatVec& p) { return RatVec{p[0], p[1], 1}; },
                             AffinePart{RatMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}, RatVec{0, 0, 1}}});
    m.sample_cells = {octahedron(), extra_cell()};
    auto oct = hull_halfspaces(octahedron());
    m.in_target = [oct](const RatVec& p) { return in_polytope(oct, p); };
    m.target_vertices = octahedron();
    return m;
}

PLMap pi_prime() { return compose(quintic_combinatorial_retraction(), collapse_kappa(), "pi-prime"); }

std::vector<RatVec> sample_points(const PLMap& m, std::size_t density) {
    if (density == 0) throw Error("sample_points: density must be positive");
    std::set<RatVec> pts;
    for (const auto& cell : m.sample_cells) {
        const std::size_t d = cell[0].dim();
        std::vector<std::vector<std::size_t>> simplices;
        if (cell.size() <= d + 1) {
            std::vector<std::size_t> all(cell.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            simplices.push_back(all);
        } else {
            for (auto& s : combinations(cell.size(), d + 1)) {
                std::vector<RatVec> v;
                for (auto i : s) v.push_back(cell[i]);
                if (affinely_independent(v)) simplices.push_back(s);
            }
        }
        for (const auto& s : simplices) {
            const std::size_t k = s.size();
            std::vector<std::size_t> w(k, 0);
            // Enumerate compositions of `density` into k parts.
            std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
                if (i + 1 == k) {
                    w[i] = left;
                    RatVec p(d);
                    for (std::size_t j = 0; j < k; ++j)
                        p = p + make_rational(Integer(w[j]), Integer(density)) * cell[s[j]];
                    pts.insert(p);
                    return;
                }
                for (std::size_t x = 0; x <= left; ++x) {
                    w[i] = x;
                    rec(i + 1, left - x);
                }
            };
            rec(0, density);
        }
    }
    for (const auto& e : m.excluded_points) pts.erase(e);
    return {pts.begin(), pts.end()};
}

RetractionReport verify_retraction(const PLMap& m, std::size_t density) {
    RetractionReport r;
    auto note = [&](const std::string& s) {
        if (r.failures.size() < 10) r.failures.push_back(s);
    };
    std::vector<bool> hit(m.target_vertices.size(), false);
    for (const auto& p : sample_points(m, density)) {
        ++r.samples;
        RatVec y;
        try {
            if (containing_pieces(m, p).size() >= 2) ++r.seam_points;
            y = eval(m, p);
        } catch (const Error& e) {
            std::string what = e.what();
            if (what.find("disagreement") != std::string::npos) r.continuous = false;
            else r.idempotent = false;
            note(what);
            continue;
        }
        if (m.in_target && !m.in_target(y)) {
            r.image_in_target = false;
            note("image " + fmt(y) + " of " + fmt(p) + " outside target");
        }
        try {
            RatVec yy = eval(m, y);
            if (!(yy == y)) {
                r.idempotent = false;
                note("not idempotent at " + fmt(p) + ": " + fmt(y) + " -> " + fmt(yy));
            }
        } catch (const Error& e) {
            r.idempotent = false;
            note(std::string("re-evaluation failed: ") + e.what());
        }
        for (std::size_t k = 0; k < hit.size(); ++k)
            if (y == m.target_vertices[k]) hit[k] = true;
    }
    for (std::size_t k = 0; k < hit.size(); ++k)
        if (!hit[k]) {
            r.surjective_on_vertices = false;
            note("target vertex " + fmt(m.target_vertices[k]) + " not hit");
        }
    return r;
}

std::vector<RegionReport> region_check(const PLMap& pi, std::size_t density) {
    using namespace local_model;
    std::vector<RegionReport> out(3);
    auto oct = hull_halfspaces(octahedron());
    for (std::size_t m = 0; m < 3; ++m) out[m].vertex = m;
    for (const auto& p : sample_points(pi, density)) {
        RatVec y = eval(pi, p);
        RatVec l = base_barycentric(y);
        for (std::size_t m = 0; m < 3; ++m) {
            bool strict = true;
            for (std::size_t u = 0; u < 3; ++u)
                if (u != m && !(l[m] > l[u])) strict = false;
            if (!strict) continue;
            auto& rep = out[m];
            ++rep.checked;
            if (!in_polytope(oct, p)) {
                ++rep.mismatches;
                if (rep.first_mismatch.empty()) rep.first_mismatch = "extra-cell point " + fmt(p) + " in open star";
                continue;
            }
            std::vector<std::size_t> swap{0, 1, 2};
            std::swap(swap[m], swap[2]);
            RatVec model = permute(swap, vertex_formula_extended(permute(swap, p)));
            if (!(model == y)) {
                ++rep.mismatches;
                if (rep.first_mismatch.empty())
                    rep.first_mismatch = fmt(p) + ": pi' gives " + fmt(y) + ", model gives " + fmt(model);
            }
        }
    }
    return out;
}

}  // namespace syz
