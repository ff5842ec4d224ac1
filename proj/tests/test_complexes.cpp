#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "syz/complexes.hpp"

using namespace syz;

namespace {

// Faces of the boundary of the n-simplex containing the given vertex mask, by bitmask enumeration.
std::vector<unsigned> star_by_masks(unsigned n_vertices, unsigned face_mask) {
    std::vector<unsigned> out;
    const unsigned full = (1u << n_vertices) - 1;
    for (unsigned m = 1; m < full; ++m)
        if ((m & face_mask) == face_mask) out.push_back(m);
    return out;
}

unsigned mask_of(const Face& f) {
    unsigned m = 0;
    for (auto v : f) m |= 1u << v;
    return m;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

RatVec random_simplex_point(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> d(0, 6);
    std::vector<int> raw(n);
    int total = 0;
    while (total == 0) {
        total = 0;
        for (auto& x : raw) total += (x = d(rng));
    }
    RatVec p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = make_rational(raw[i], total);
    return p;
}

// Wing-vertex model over the tetrahedron {v1,v2,v3,vh}: v_q maps to v_1.
struct Wing {
    DualComplex base = simplex_complex(3);
    DualComplex top;
    PullbackData p;
    Wing() {
        top = base;
        top.vertex_names.push_back("vq");
        top.multiplicity.push_back(1);
        add_face_closure(top, {0, 4});
        add_face_closure(top, {1, 4});
        p.a = IntMatrix(4, 5);
        for (std::size_t i = 0; i < 4; ++i) p.a(i, i) = 1;
        p.a(0, 4) = 1;
    }
};

}  // namespace

TEST_CASE("validate_complex") {
    CHECK(validate_complex(simplex_complex(3)).empty());
    CHECK(validate_complex(simplex_complex(3, true)).empty());
    DualComplex c = simplex_complex(2);
    c.faces.erase(c.faces.begin());
    CHECK_FALSE(validate_complex(c).empty());
    c = simplex_complex(2);
    c.multiplicity[1] = 0;
    CHECK_FALSE(validate_complex(c).empty());
}

TEST_CASE("star and closed star") {
    auto t = simplex_complex(3, true);
    auto s = star(t, t.face_of({0}));
    CHECK(s.size() == 7);
    std::size_t tri = 0, edges = 0;
    for (auto i : s) (t.faces[i].size() == 3 ? tri : edges) += t.faces[i].size() > 1;
    CHECK(tri == 3);
    CHECK(edges == 3);

    auto b4 = simplex_complex(4, true);
    for (const auto& f : b4.faces) {
        auto st = star(b4, b4.face_of(f));
        auto oracle_masks = star_by_masks(5, mask_of(f));
        std::vector<unsigned> got;
        for (auto i : st) got.push_back(mask_of(b4.faces[i]));
        std::sort(got.begin(), got.end());
        CHECK(got == oracle_masks);
    }
    CHECK(star(b4, b4.face_of({0, 1})).size() == 7);

    auto top = b4.face_of({0, 1, 2, 3});
    CHECK(star(b4, top) == std::vector<std::size_t>{top});
    CHECK(closed_star(b4, top).size() == 15);
    CHECK_THROWS_AS(star(b4, 999), Error);
    CHECK_THROWS_AS(b4.face_of({0, 1, 2, 3, 4}), Error);
}

TEST_CASE("barycentric subdivision counts") {
    CHECK(barycentric_subdivision(simplex_complex(2)).maximal_cells().size() == 6);
    for (std::size_t m = 1; m <= 4; ++m)
        CHECK(barycentric_subdivision(simplex_complex(m)).maximal_cells().size() == factorial(m + 1));
    auto t = simplex_complex(3, true);
    auto sd = barycentric_subdivision(t);
    CHECK(sd.maximal_cells().size() == 4 * 6);
    auto sp = star_prime(t, sd, 0);
    // Chains starting at {v0}: {v0}, 3 with an edge, 3 with a triangle, 6 full flags.
    CHECK(sp.size() == 13);
}

TEST_CASE("Star(v)' is the strict-maximum region") {
    auto t = simplex_complex(3, true);
    std::mt19937 rng(11);
    for (int it = 0; it < 300; ++it) {
        std::size_t fi = rng() % t.faces.size();
        const Face& f = t.faces[fi];
        RatVec w = random_simplex_point(rng, f.size());
        auto p = point_from_weights(t, [&] {
            RatVec full(4);
            for (std::size_t k = 0; k < f.size(); ++k) full[f[k]] = w[k];
            return full;
        }());
        CHECK(validate_point(t, p).empty());
        RatVec full = full_weights(t, p);
        for (std::size_t v = 0; v < 4; ++v) {
            bool strict = true;
            for (std::size_t u = 0; u < 4; ++u)
                if (u != v && !(full[v] > full[u])) strict = false;
            CHECK(in_star_prime(t, p, v) == strict);
        }
    }
}

TEST_CASE("gamma graph") {
    auto g1 = gamma_graph(1);
    CHECK(g1.vertices.size() == 1);
    CHECK(g1.vertices[0] == RatVec{rat(1, 2), rat(1, 2)});

    auto g2 = gamma_graph(2);
    CHECK(g2.dimension() == 1);
    auto segs = g2.cells_of_dim(1);
    CHECK(segs.size() == 3);
    for (auto s : segs) {
        const auto& cell = g2.cells[s];
        CHECK(g2.vertex_faces[cell[1]].size() == 3);
        CHECK(g2.vertex_faces[cell[0]].size() == 2);
    }

    auto g3 = gamma_two_face_graph(3);
    CHECK(g3.cells_of_dim(0).size() == 6 + 4);
    CHECK(g3.cells_of_dim(1).size() == 12);
    for (auto e : g3.cells_of_dim(1)) {
        const auto& cell = g3.cells[e];
        CHECK(g3.vertex_faces[cell[0]].size() == 2);
        CHECK(g3.vertex_faces[cell[1]].size() == 3);
        CHECK(std::includes(g3.vertex_faces[cell[1]].begin(), g3.vertex_faces[cell[1]].end(),
                            g3.vertex_faces[cell[0]].begin(), g3.vertex_faces[cell[0]].end()));
    }
    CHECK(gamma_graph(3).dimension() == 2);
    CHECK_THROWS_AS(gamma_graph(0), Error);
}

TEST_CASE("gamma and vertex stars partition the simplex") {
    std::mt19937 rng(5);
    for (std::size_t m : {2u, 3u}) {
        auto tau = simplex_complex(m);
        auto top = tau.face_of([&] {
            Face f;
            for (std::size_t i = 0; i <= m; ++i) f.push_back(i);
            return f;
        }());
        for (int it = 0; it < 400; ++it) {
            RatVec b = random_simplex_point(rng, m + 1);
            auto p = point_from_weights(tau, b);
            int hits = in_gamma(b) ? 1 : 0;
            for (std::size_t v = 0; v <= m; ++v) hits += in_star_prime(tau, p, v);
            CHECK(hits == 1);
        }
        for (const auto& v : gamma_graph(m).vertices) CHECK(in_gamma(v));
        CHECK(in_gamma(full_weights(tau, barycenter(tau, top))));
    }
}

TEST_CASE("quasi-monomial values") {
    CHECK(quasi_monomial_value(RatVec{rat(1, 2), rat(1, 2)}, {IntVec{2, 1}}) == rat(3, 2));
    CHECK(quasi_monomial_value(RatVec{1, 0}, {IntVec{0, 5}, IntVec{3, 0}}) == 0);
    CHECK(quasi_monomial_value(RatVec{rat(1, 3), rat(2, 3)}, {IntVec{1, 1}, IntVec{3, 0}}) == 1);
    CHECK_THROWS_AS(quasi_monomial_value(RatVec{1, 0}, {}), Error);
}

TEST_CASE("model retraction") {
    auto base = simplex_complex(3);
    PullbackData id{IntMatrix::identity(4), {}};
    CHECK(validate_pullback(base, base, id).empty());
    CHECK(active_faces(base, base, id).size() == base.faces.size());
    WeightedPoint w{base.face_of({0, 2}), RatVec{rat(1, 3), rat(2, 3)}};
    auto img = model_retraction(base, base, id, w);
    CHECK(img.face == w.face);
    CHECK(img.w == w.w);

    Wing wing;
    CHECK(validate_pullback(wing.base, wing.top, wing.p).empty());
    auto vq = model_retraction(wing.base, wing.top, wing.p, WeightedPoint{wing.top.face_of({4}), RatVec{1}});
    CHECK(vq.face == wing.base.face_of({0}));
    CHECK(vq.w == RatVec{1});
    auto mid = model_retraction(wing.base, wing.top, wing.p,
                                WeightedPoint{wing.top.face_of({1, 4}), RatVec{rat(1, 4), rat(3, 4)}});
    CHECK(mid.face == wing.base.face_of({0, 1}));
    CHECK(mid.w == RatVec{rat(3, 4), rat(1, 4)});
    auto act = active_faces(wing.base, wing.top, wing.p);
    CHECK(std::find(act.begin(), act.end(), wing.top.face_of({0, 4})) == act.end());
    CHECK(std::find(act.begin(), act.end(), wing.top.face_of({1, 4})) != act.end());

    PullbackData bad = wing.p;
    bad.a(1, 4) = 1;
    CHECK_FALSE(validate_pullback(wing.base, wing.top, bad).empty());
    CHECK_THROWS_AS(model_retraction(wing.base, wing.top, bad, WeightedPoint{wing.top.face_of({4}), RatVec{1}}), Error);
}

TEST_CASE("retractions compose") {
    Wing wing;
    DualComplex top2 = wing.top;
    top2.vertex_names.push_back("vr");
    top2.multiplicity.push_back(2);
    add_face_closure(top2, {1, 4, 5});
    PullbackData inner{IntMatrix(5, 6), {}};
    for (std::size_t i = 0; i < 5; ++i) inner.a(i, i) = 1;
    inner.a(4, 5) = 1;
    inner.a(1, 5) = 1;
    REQUIRE(validate_pullback(wing.top, top2, inner).empty());
    auto outer_inner = compose(wing.p, inner);
    CHECK(outer_inner.a == oracle::mat_product({wing.p.a, inner.a}));
    REQUIRE(validate_pullback(wing.base, top2, outer_inner).empty());
    std::mt19937 rng(3);

    for (int it = 0; it < 50; ++it) {
        RatVec raw = random_simplex_point(rng, 3);
        // Rescale so that sum a_j w_j = 1 with a = (1,1,2).
        Rational s = raw[0] + raw[1] + 2 * raw[2];
        RatVec w{raw[0] / s, raw[1] / s, raw[2] / s};
        RatVec full(6);
        full[1] = w[0], full[4] = w[1], full[5] = w[2];
        auto p = point_from_weights(top2, full);
        auto direct = model_retraction(wing.base, top2, outer_inner, p);
        auto twice = model_retraction(wing.base, wing.top, wing.p, model_retraction(wing.top, top2, inner, p));
        CHECK(direct.face == twice.face);
        CHECK(direct.w == twice.w);
        CHECK(validate_point(wing.base, direct).empty());
    }

}
