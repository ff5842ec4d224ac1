#include "syz/affine_monodromy.hpp"

#include <algorithm>
#include <numeric>

namespace syz {

bool StarChart::calabi_yau() const {
    Integer s = 0;
    for (const auto& x : b) s += x;
    return s == 2;
}

StarChart star_chart(const IntVec& b) {
    const std::size_t n = b.dim();
    if (n == 0) throw Error("star_chart: empty b-vector");
    StarChart c;
    c.b = b;
    for (std::size_t k = 0; k < n; ++k) {
        IntVec v(n);
        v[k] = 1;
        c.vertices.push_back(v);
    }
    c.vertices.push_back(IntVec(n));
    IntVec inf(n);
    inf[0] = -1;
    for (std::size_t k = 1; k < n; ++k) inf[k] = b[k - 1];
    c.vertices.push_back(inf);
    return c;
}

RatVec blown_up_v_inf(const IntVec& b, std::size_t s) {
    const std::size_t n = b.dim();
    Integer big_n = Integer(n) * Integer(s) + 1;
    RatVec v(n);
    v[0] = make_rational(-1, big_n);
    for (std::size_t k = 1; k < n; ++k) v[k] = make_rational(b[k - 1] + Integer(s), big_n);
    return v;
}

bool verify_blowup_recursion(const IntVec& b, std::size_t steps) {
    const std::size_t n = b.dim();
    StarChart c = star_chart(b);
    RatVec sum(n);
    for (std::size_t k = 1; k <= n; ++k) sum = sum + to_rational(c.vertices[k]);
    if (!(blown_up_v_inf(b, 0) == to_rational(c.v_inf()))) return false;
    for (std::size_t s = 0; s < steps; ++s) {
        Rational ns = Integer(n) * Integer(s) + 1, ns1 = Integer(n) * Integer(s + 1) + 1;
        if (!(ns1 * blown_up_v_inf(b, s + 1) == ns * blown_up_v_inf(b, s) + sum)) return false;
    }
    return true;
}

AffineTransform AffineTransform::identity(std::size_t n) { return {IntMatrix::identity(n), RatVec(n)}; }

RatVec AffineTransform::apply(const RatVec& p) const { return to_rational(linear) * p + translation; }

bool AffineTransform::is_identity() const {
    return linear == IntMatrix::identity(linear.rows()) && translation.is_zero();
}

AffineTransform operator*(const AffineTransform& a, const AffineTransform& b) {
    return {a.linear * b.linear, to_rational(a.linear) * b.translation + a.translation};
}

bool operator==(const AffineTransform& a, const AffineTransform& b) {
    return a.linear == b.linear && a.translation == b.translation;
}

std::optional<RatVec> Chart::at(std::size_t label) const {
    for (std::size_t k = 0; k < labels.size(); ++k)
        if (labels[k] == label) return coords[k];
    return std::nullopt;
}

Chart make_chart(std::string name, const StarChart& c, const std::vector<std::size_t>& labels) {
    if (labels.size() != c.vertices.size()) throw Error("make_chart: expected n+2 labels");
    Chart ch{std::move(name), labels, {}};
    for (const auto& v : c.vertices) ch.coords.push_back(to_rational(v));
    return ch;
}

AffineTransform transition_map(const Chart& a, const Chart& b, const std::vector<std::size_t>& shared) {
    if (shared.empty()) throw Error("transition_map: no shared vertices");
    std::vector<RatVec> pa, pb;
    for (auto l : shared) {
        auto x = a.at(l), y = b.at(l);
        if (!x || !y) throw Error("transition_map: label " + std::to_string(l) + " missing from a chart");
        pa.push_back(*x);
        pb.push_back(*y);
    }
    const std::size_t n = pa[0].dim();
    std::vector<RatVec> da, db;
    for (std::size_t k = 1; k < pa.size(); ++k) {
        da.push_back(pa[k] - pa[0]);
        db.push_back(pb[k] - pb[0]);
    }
    if (da.size() < n) throw Error("transition_map: shared simplex is not full-dimensional");
    RatMatrix ma = RatMatrix::from_columns(da, n), mb = RatMatrix::from_columns(db, n);
    if (rank(ma) != n) throw Error("transition_map: shared vertices are affinely dependent");
    // Solve L * ma = mb row by row: ma^T L^T = mb^T.
    RatMatrix lin(n, n);
    RatMatrix mat = ma.transpose();
    for (std::size_t r = 0; r < n; ++r) {
        auto sol = solve_rational(mat, mb.row(r));
        if (sol.status != SolveResult::Status::Unique)
            throw Error("transition_map: no affine map matches the shared vertices (inconsistent labels)");
        for (std::size_t c = 0; c < n; ++c) lin(r, c) = sol.x[c];
    }
    if (!is_integral(lin)) throw Error("transition_map: linear part is not integral");
    IntMatrix li = to_integer(lin);
    if (!is_unimodular(li)) throw Error("transition_map: linear part is not unimodular");
    return {li, pb[0] - lin * pa[0]};
}

AffineTransform monodromy_transport(const std::vector<Chart>& atlas, const Loop& loop) {
    if (loop.crossings.empty()) throw Error("monodromy_transport: empty loop");
    for (std::size_t k = 0; k < loop.crossings.size(); ++k) {
        const auto& c = loop.crossings[k];
        if (c.from >= atlas.size() || c.to >= atlas.size()) throw Error("monodromy_transport: unknown chart");
        const auto& next = loop.crossings[(k + 1) % loop.crossings.size()];
        if (c.to != next.from) throw Error("monodromy_transport: broken loop at crossing " + std::to_string(k));
    }
    const std::size_t n = atlas[loop.crossings[0].from].coords.at(0).dim();
    AffineTransform t = AffineTransform::identity(n);
    for (const auto& c : loop.crossings) t = transition_map(atlas[c.from], atlas[c.to], c.shared) * t;
    return t;
}

LoopAtlas vertex_loop_atlas(const std::vector<std::size_t>& cycle, const std::vector<std::size_t>& sigma_rest,
                            std::size_t origin, const std::vector<IntVec>& steps) {
    const std::size_t r = cycle.size();
    if (r < 3 || steps.size() != r) throw Error("vertex_loop_atlas: need one b-vector per cycle vertex (at least 3)");
    LoopAtlas out;
    out.loop.name = "vertex";
    for (std::size_t s = 0; s < r; ++s) {
        if (steps[s].dim() != sigma_rest.size() + 2) throw Error("vertex_loop_atlas: b-vector length mismatch");
        std::vector<std::size_t> labels{cycle[(s + r - 1) % r], cycle[s]};
        labels.insert(labels.end(), sigma_rest.begin(), sigma_rest.end());
        labels.push_back(origin);
        labels.push_back(cycle[(s + 1) % r]);
        out.charts.push_back(make_chart("chart" + std::to_string(s), star_chart(steps[s]), labels));
        out.loop.crossings.push_back(Crossing{s, (s + 1) % r, {labels.begin() + 1, labels.end()}});
    }
    return out;
}

LoopAtlas combination_atlas(std::size_t i0, const std::vector<std::size_t>& face_rest, std::size_t origin,
                            std::size_t i_inf, const IntVec& b, const IntVec& b2) {
    if (b.dim() != face_rest.size() + 1 || b2.dim() != b.dim())
        throw Error("combination_atlas: b-vector length mismatch");
    std::vector<std::size_t> labels{i0};
    labels.insert(labels.end(), face_rest.begin(), face_rest.end());
    labels.push_back(origin);
    labels.push_back(i_inf);
    LoopAtlas out;
    out.charts = {make_chart("X", star_chart(b), labels), make_chart("X'", star_chart(b2), labels)};
    std::vector<std::size_t> face(labels.begin() + 1, labels.end() - 1);
    auto over_inf = face, over_0 = face;
    over_inf.push_back(i_inf);
    over_0.push_back(i0);
    out.loop = Loop{"combination", {Crossing{0, 1, over_inf}, Crossing{1, 0, over_0}}};
    return out;
}

IntMatrix transition_2d(const Integer& b) { return IntMatrix{{b, 1}, {-1, 0}}; }

IntMatrix monodromy_2d(const std::vector<Integer>& b) {
    IntMatrix t = IntMatrix::identity(2);
    for (const auto& x : b) t = transition_2d(x) * t;
    return t;
}

Integer charge(const std::vector<Integer>& b) {
    Integer q = 12;
    for (const auto& x : b) q += x - 3;
    return q;
}

IntMatrix vertex_loop_step(const IntVec& b) {
    const std::size_t n = b.dim();
    if (n < 2) throw Error("vertex_loop_step: need n >= 2");
    IntMatrix a = IntMatrix::identity(n);
    a(0, 0) = b[0];
    a(1, 0) = -1;
    for (std::size_t k = 2; k < n; ++k) a(k, 0) = b[k - 1];
    a(0, 1) = 1;
    a(1, 1) = 0;
    return a;
}

IntMatrix monodromy_vertex_loop(const std::vector<IntVec>& steps) {
    if (steps.empty()) throw Error("monodromy_vertex_loop: empty loop");
    IntMatrix t = IntMatrix::identity(steps[0].dim());
    for (const auto& b : steps) t = vertex_loop_step(b) * t;
    return t;
}

IntMatrix monodromy_combination(const IntVec& b, const IntVec& b2) {
    if (b.dim() != b2.dim() || b.dim() == 0) throw Error("monodromy_combination: b-vectors must have equal length");
    const std::size_t n = b.dim();
    IntMatrix t = IntMatrix::identity(n);
    for (std::size_t k = 1; k < n; ++k) t(k, 0) = b[k - 1] - b2[k - 1];
    return t;
}

IntMatrix conjugate(const IntMatrix& p, const IntMatrix& t) {
    if (!is_unimodular(p)) throw Error("conjugate: change of basis is not unimodular");
    return inverse_unimodular(p) * t * p;
}

SemisimpleFactor semisimple_factor(const IntMatrix& t, const Integer& scale) {
    const std::size_t n = t.rows();
    IntMatrix d = t - IntMatrix::identity(n);
    SemisimpleFactor out;
    if (d == IntMatrix(n, n)) {
        out.status = SemisimpleFactor::Status::Trivial;
        out.e = IntVec(n);
        out.f = IntVec(n);
        return out;
    }
    if (rank(d) != 1) {
        out.status = SemisimpleFactor::Status::NotRankOne;
        return out;
    }
    std::size_t r0 = 0;
    while (d.row(r0).is_zero()) ++r0;
    IntVec e = primitive_part(d.row(r0));
    for (std::size_t k = 0; k < n; ++k)
        if (e[k] != 0) {
            if (e[k] < 0) e = -e;
            break;
        }
    std::size_t c0 = 0;
    while (e[c0] == 0) ++c0;
    IntVec col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = d(r, c0) / e[c0];
    out.e = e;
    if (scale == 0 || gcd_of(col) != abs(scale)) {
        out.status = SemisimpleFactor::Status::ScaleMismatch;
        return out;
    }
    IntVec f(n);
    for (std::size_t r = 0; r < n; ++r) f[r] = col[r] / scale;
    out.f = f;
    out.status = SemisimpleFactor::Status::Factored;
    return out;
}

std::vector<Integer> b_cycle_from_fan(const Fan& f) {
    if (f.dim != 2) throw Error("b_cycle_from_fan: surface fan expected");
    if (!is_complete(f) || !is_smooth(f).smooth) throw Error("b_cycle_from_fan: fan must be complete and smooth");
    std::vector<std::size_t> order(f.rays.size());
    std::iota(order.begin(), order.end(), 0);
    auto half = [&](std::size_t i) {
        const auto& v = f.rays[i];
        return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (half(a) != half(b)) return half(a) < half(b);
        const auto &u = f.rays[a], &v = f.rays[b];
        return u[0] * v[1] - u[1] * v[0] > 0;
    });
    std::vector<Integer> b;
    for (auto i : order) {
        for (const auto& w : walls(f))
            if (w.cone == Cone{i}) {
                b.push_back(-wall_curve_intersections(f, w)[i]);
                break;
            }
    }
    return b;
}

}  // namespace syz
