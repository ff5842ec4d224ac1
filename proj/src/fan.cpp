#include "syz/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace syz {

IntMatrix Fan::cone_matrix(const Cone& c) const {
    std::vector<IntVec> cols;
    for (auto i : c) cols.push_back(rays.at(i));
    return IntMatrix::from_columns(cols, dim);
}

Cone normalized(Cone c) {
    std::sort(c.begin(), c.end());
    return c;
}

namespace {

bool contains(const Cone& big, const Cone& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string cone_str(const Cone& c) {
    std::string s = "{";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "}";
}

// Simplicial cones A and B meet in the face spanned by their common rays
// iff no nonzero nonnegative combination of A\C minus B\C lies in span(C).
bool meet_properly(const Fan& f, const Cone& a, const Cone& b) {
    Cone common, only_a, only_b;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
    if (only_a.empty() && only_b.empty()) return true;
    const std::size_t na = only_a.size(), nb = only_b.size(), nc = common.size();
    const std::size_t nv = na + nb + nc;
    std::vector<RatVec> eq;
    std::vector<Rational> eq_rhs;
    for (std::size_t k = 0; k < f.dim; ++k) {
        RatVec row(nv);
        for (std::size_t i = 0; i < na; ++i) row[i] = f.rays[only_a[i]][k];
        for (std::size_t i = 0; i < nb; ++i) row[na + i] = -f.rays[only_b[i]][k];
        for (std::size_t i = 0; i < nc; ++i) row[na + nb + i] = -f.rays[common[i]][k];
        eq.push_back(row);
        eq_rhs.push_back(0);
    }
    RatVec norm(nv);
    for (std::size_t i = 0; i < na + nb; ++i) norm[i] = 1;
    eq.push_back(norm);
    eq_rhs.push_back(1);
    std::vector<RatVec> le;
    std::vector<Rational> le_rhs;
    for (std::size_t i = 0; i < na + nb; ++i) {
        RatVec row(nv);
        row[i] = -1;
        le.push_back(row);
        le_rhs.push_back(0);
    }
    return !polyhedron_feasible(eq, eq_rhs, le, le_rhs);
}

std::vector<Cone> maximal_cones(const Fan& f) {
    std::vector<Cone> out;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        Cone ci = normalized(f.cones[i]);
        bool maximal = true;
        for (std::size_t j = 0; j < f.cones.size() && maximal; ++j) {
            if (i == j) continue;
            Cone cj = normalized(f.cones[j]);
            if (cj.size() > ci.size() && contains(cj, ci)) maximal = false;
        }
        if (maximal) out.push_back(ci);
    }
    return out;
}

// Codim-1 faces of full-dimensional cones mapped to the cones containing them.
std::map<Cone, std::vector<std::size_t>> facet_incidence(const Fan& f) {
    std::map<Cone, std::vector<std::size_t>> inc;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        Cone c = normalized(f.cones[i]);
        if (c.size() != f.dim) continue;
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            Cone face;
            for (std::size_t k = 0; k < c.size(); ++k)
                if (k != drop) face.push_back(c[k]);
            inc[face].push_back(i);
        }
    }
    return inc;
}

std::size_t extra_ray(const Cone& cone, const Cone& face) {
    for (auto r : cone)
        if (!std::binary_search(face.begin(), face.end(), r)) return r;
    throw Error("cone has no ray outside the face");
}

// Sign of the opposite ray relative to the wall hyperplane, oriented by the cone's own determinant.
int side(const Fan& f, const Cone& face, std::size_t ray, std::size_t reference) {
    std::vector<IntVec> cols;
    for (auto r : face) cols.push_back(f.rays[r]);
    cols.push_back(f.rays[ray]);
    Integer d1 = det(IntMatrix::from_columns(cols, f.dim));
    cols.back() = f.rays[reference];
    Integer d2 = det(IntMatrix::from_columns(cols, f.dim));
    return sgn(d1) * sgn(d2);
}

}  // namespace

std::vector<std::string> validate_fan(const Fan& f) {
    std::vector<std::string> v;
    if (f.dim == 0) v.push_back("dimension must be positive");
    std::set<std::vector<Integer>> seen;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        const auto& u = f.rays[i];
        if (u.dim() != f.dim) {
            v.push_back("ray " + std::to_string(i) + " has wrong dimension");
            continue;
        }
        if (u.is_zero()) {
            v.push_back("ray " + std::to_string(i) + " is zero");
            continue;
        }
        if (!is_primitive(u)) v.push_back("ray " + std::to_string(i) + " is non-primitive " + format(u));
        if (!seen.insert(u.entries()).second) v.push_back("duplicate ray " + format(u));
    }
    if (!v.empty()) return v;
    std::set<Cone> cones_seen;
    bool cones_ok = true;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        Cone c = normalized(f.cones[i]);
        std::string name = "cone " + std::to_string(i) + " " + cone_str(c);
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
            v.push_back(name + " repeats a ray");
            cones_ok = false;
            continue;
        }
        if (!c.empty() && c.back() >= f.rays.size()) {
            v.push_back(name + " has ray index out of range");
            cones_ok = false;
            continue;
        }
        if (!cones_seen.insert(c).second) v.push_back("duplicate " + name);
        if (!c.empty() && rank(f.cone_matrix(c)) != c.size()) {
            v.push_back(name + " has linearly dependent rays");
            cones_ok = false;
        }
    }
    if (!cones_ok) return v;
    for (std::size_t i = 0; i < f.cones.size(); ++i)
        for (std::size_t j = i + 1; j < f.cones.size(); ++j) {
            Cone a = normalized(f.cones[i]), b = normalized(f.cones[j]);
            if (!meet_properly(f, a, b))
                v.push_back("cones " + cone_str(a) + " and " + cone_str(b) + " do not meet along a common face");
        }
    return v;
}

SmoothCheck is_smooth(const Fan& f) {
    SmoothCheck r;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        const Cone& c = f.cones[i];
        bool ok;
        if (c.size() == f.dim) {
            ok = is_unimodular(f.cone_matrix(c));
        } else {
            // A lower-dimensional cone is smooth iff its rays span a saturated sublattice.
            IntMatrix m = f.cone_matrix(c).transpose();
            auto s = smith_invariants(m);
            ok = s.rank == c.size() &&
                 std::all_of(s.factors.begin(), s.factors.end(), [](const Integer& x) { return x == 1; });
        }
        if (!ok) {
            r.smooth = false;
            r.offending_cone = i;
            return r;
        }
    }
    return r;
}

std::optional<std::string> completeness_diagnostic(const Fan& f) {
    auto bad = validate_fan(f);
    if (!bad.empty()) return "invalid fan: " + bad.front();
    if (f.cones.empty()) return "fan has no cones";
    for (const auto& c : maximal_cones(f))
        if (c.size() != f.dim) return "maximal cone " + cone_str(c) + " is not full-dimensional";
    auto inc = facet_incidence(f);
    for (const auto& [face, owners] : inc) {
        if (owners.size() != 2)
            return "codim-1 cone " + cone_str(face) + " bounds " + std::to_string(owners.size()) +
                   " maximal cone(s), expected 2";
        Cone a = normalized(f.cones[owners[0]]), b = normalized(f.cones[owners[1]]);
        if (side(f, face, extra_ray(a, face), extra_ray(b, face)) >= 0)
            return "cones " + cone_str(a) + " and " + cone_str(b) + " lie on the same side of " + cone_str(face);
    }
    // connectivity through walls
    std::vector<std::size_t> full;
    for (std::size_t i = 0; i < f.cones.size(); ++i)
        if (f.cones[i].size() == f.dim) full.push_back(i);
    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (const auto& [face, owners] : inc) {
        adj[owners[0]].push_back(owners[1]);
        adj[owners[1]].push_back(owners[0]);
    }
    std::set<std::size_t> reached{full.front()};
    std::vector<std::size_t> stack{full.front()};
    while (!stack.empty()) {
        auto c = stack.back();
        stack.pop_back();
        for (auto n : adj[c])
            if (reached.insert(n).second) stack.push_back(n);
    }
    if (reached.size() != full.size()) return "maximal cones are not connected through walls";
    return std::nullopt;
}

bool is_complete(const Fan& f) { return !completeness_diagnostic(f).has_value(); }

std::vector<Wall> walls(const Fan& f) {
    std::vector<Wall> out;
    for (const auto& [face, owners] : facet_incidence(f)) {
        if (owners.size() != 2) continue;
        Wall w;
        w.cone = face;
        w.sigma = owners[0];
        w.sigma2 = owners[1];
        w.p = extra_ray(normalized(f.cones[w.sigma]), face);
        w.q = extra_ray(normalized(f.cones[w.sigma2]), face);
        out.push_back(w);
    }
    return out;
}

PicPresentation picard_presentation(const Fan& f) {
    if (auto diag = completeness_diagnostic(f)) throw Error("picard_presentation: " + *diag);
    PicPresentation p;
    p.generators = f.rays.size();
    p.relations = IntMatrix(f.dim, f.rays.size());
    for (std::size_t k = 0; k < f.dim; ++k)
        for (std::size_t l = 0; l < f.rays.size(); ++l) p.relations(k, l) = f.rays[l][k];
    auto s = smith_invariants(p.relations);
    p.pic_rank = p.generators - s.rank;
    for (const auto& x : s.factors)
        if (x != 1) p.invariant_factors.push_back(x);
    for (std::size_t k = 0; k < f.dim; ++k) p.delta.push_back(p.relations.row(k));
    return p;
}

bool is_principal(const Fan& f, const TorusDivisor& d) {
    if (d.dim() != f.rays.size()) throw Error("is_principal: divisor length differs from ray count");
    if (d.is_zero()) return true;
    IntMatrix rel(f.dim, f.rays.size());
    for (std::size_t k = 0; k < f.dim; ++k)
        for (std::size_t l = 0; l < f.rays.size(); ++l) rel(k, l) = f.rays[l][k];
    return solve_row_span(rel, d).has_value();
}

TorusDivisor wall_curve_intersections(const Fan& f, const Wall& w) {
    for (auto s : {w.sigma, w.sigma2})
        if (!is_unimodular(f.cone_matrix(f.cones.at(s))))
            throw Error("wall_curve_intersections: adjacent cone " + cone_str(f.cones.at(s)) + " is not smooth");
    IntVec target = -(f.rays.at(w.p) + f.rays.at(w.q));
    TorusDivisor out(f.rays.size());
    if (!w.cone.empty()) {
        auto sol = solve_rational(f.cone_matrix(w.cone), to_rational(target));
        if (!sol.ok() || !is_integral(sol.x))
            throw Error("wall_curve_intersections: wall relation not solvable over Z at " + cone_str(w.cone));
        for (std::size_t i = 0; i < w.cone.size(); ++i) out[w.cone[i]] = sol.x[i].get_num();
    } else if (!target.is_zero()) {
        throw Error("wall_curve_intersections: opposite rays are not negatives");
    }
    out[w.p] = 1;
    out[w.q] = 1;
    IntVec balance(f.dim);
    for (std::size_t l = 0; l < f.rays.size(); ++l) balance = balance + out[l] * f.rays[l];
    if (!balance.is_zero()) throw Error("wall_curve_intersections: balancing identity fails");
    return out;
}

Integer curve_degree(const TorusDivisor& curve, const TorusDivisor& d) { return dot(curve, d); }

// Nef iff nonnegative on every invariant wall curve (these generate the Mori cone
// of a smooth complete toric variety).
NefCheck is_nef(const Fan& f, const TorusDivisor& d) {
    if (auto diag = completeness_diagnostic(f)) throw Error("is_nef: " + *diag);
    if (d.dim() != f.rays.size()) throw Error("is_nef: divisor length differs from ray count");
    NefCheck r;
    auto ws = walls(f);
    for (std::size_t i = 0; i < ws.size(); ++i) {
        Integer v = curve_degree(wall_curve_intersections(f, ws[i]), d);
        if (v < 0) {
            r.nef = false;
            r.failing_wall = i;
            r.value = v;
            return r;
        }
    }
    return r;
}

std::optional<std::size_t> find_ray(const Fan& f, const IntVec& u) {
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        if (f.rays[i] == u) return i;
    return std::nullopt;
}

Fan star_subdivide(const Fan& f, const Cone& face_in) {
    Cone face = normalized(face_in);
    if (face.size() < 2) throw Error("star_subdivide: face must have at least two rays");
    IntVec u(f.dim);
    for (auto r : face) u = u + f.rays.at(r);
    u = primitive_part(u);
    if (find_ray(f, u)) throw Error("star_subdivide: new ray already present");
    Fan g;
    g.dim = f.dim;
    g.rays = f.rays;
    g.rays.push_back(u);
    const std::size_t nu = g.rays.size() - 1;
    bool touched = false;
    for (const auto& c0 : f.cones) {
        Cone c = normalized(c0);
        if (!contains(c, face)) {
            g.cones.push_back(c);
            continue;
        }
        touched = true;
        for (auto r : face) {
            Cone n;
            for (auto x : c)
                if (x != r) n.push_back(x);
            n.push_back(nu);
            g.cones.push_back(normalized(n));
        }
    }
    if (!touched) throw Error("star_subdivide: no cone contains the face");
    return g;
}

std::optional<ConeLocation> locate(const Fan& f, const RatVec& point) {
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        const Cone& c = f.cones[i];
        auto sol = solve_rational(f.cone_matrix(c), point);
        if (!sol.ok()) continue;
        if (std::all_of(sol.x.begin(), sol.x.end(), [](const Rational& x) { return x >= 0; }))
            return ConeLocation{i, sol.x};
    }
    return std::nullopt;
}

namespace fans {

Fan projective_space(std::size_t n) {
    Fan f;
    f.dim = n;
    IntVec last(n);
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n);
        e[i] = 1;
        f.rays.push_back(e);
        last[i] = -1;
    }
    f.rays.push_back(last);
    for (std::size_t skip = n + 1; skip-- > 0;) {
        Cone c;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != skip) c.push_back(i);
        f.cones.push_back(c);
    }
    return f;
}

Fan p1xp1() {
    Fan f;
    f.dim = 2;
    f.rays = {IntVec{1, 0}, IntVec{0, 1}, IntVec{-1, 0}, IntVec{0, -1}};
    f.cones = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    return f;
}

Fan hirzebruch(long a) {
    Fan f;
    f.dim = 2;
    f.rays = {IntVec{1, 0}, IntVec{0, 1}, IntVec{-1, a}, IntVec{0, -1}};
    f.cones = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    return f;
}

}  // namespace fans

}  // namespace syz
