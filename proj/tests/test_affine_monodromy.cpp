#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "syz/affine_monodromy.hpp"

using namespace syz;

namespace {

// 2x2 linear map sending (a1, a2) to (b1, b2) by explicit inversion.
IntMatrix map_2x2(const IntVec& a1, const IntVec& a2, const IntVec& b1, const IntVec& b2) {
    Integer d = a1[0] * a2[1] - a2[0] * a1[1];
    // inverse of A = [a1 a2] is [[a2y, -a2x], [-a1y, a1x]] / d
    IntMatrix b{{b1[0], b2[0]}, {b1[1], b2[1]}};
    IntMatrix adj{{a2[1], -a2[0]}, {-a1[1], a1[0]}};
    IntMatrix m = b * adj;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) m(i, j) /= d;
    return m;
}

// Atlas around a codim-2 face: labels y_1..y_r = 1..r, extra face vertices r+1.., origin 0.
// Chart s uses face order (y_s, extra..., origin) and b-vector steps[s].
std::pair<std::vector<Chart>, Loop> vertex_atlas(const std::vector<IntVec>& steps) {
    const std::size_t r = steps.size(), n = steps[0].dim();
    auto y = [&](long s) { return std::size_t(((s % long(r)) + long(r)) % long(r)) + 1; };
    std::vector<Chart> atlas;
    Loop loop{"vertex", {}};
    for (std::size_t s = 0; s < r; ++s) {
        std::vector<std::size_t> labels{y(long(s) - 1), y(long(s))};
        for (std::size_t k = 0; k + 2 < n; ++k) labels.push_back(r + 1 + k);
        labels.push_back(0);
        labels.push_back(y(long(s) + 1));
        atlas.push_back(make_chart("C" + std::to_string(s), star_chart(steps[s]), labels));
        std::vector<std::size_t> shared(labels.begin() + 1, labels.end());
        loop.crossings.push_back(Crossing{s, (s + 1) % r, shared});
    }
    return {atlas, loop};
}

// Two charts over the same star (labels i0=1, face 2..n, origin 0, i_inf=n+1) with different b.
std::pair<std::vector<Chart>, Loop> combination_atlas(const IntVec& b, const IntVec& b2) {
    const std::size_t n = b.dim();
    std::vector<std::size_t> labels{1};
    for (std::size_t k = 2; k <= n; ++k) labels.push_back(k);
    labels.push_back(0);
    labels.push_back(n + 1);
    std::vector<Chart> atlas{make_chart("X", star_chart(b), labels), make_chart("X'", star_chart(b2), labels)};
    std::vector<std::size_t> face(labels.begin() + 1, labels.end() - 1);
    auto over_inf = face, over_0 = face;
    over_inf.push_back(n + 1);
    over_0.push_back(1);
    return {atlas, Loop{"combination", {Crossing{0, 1, over_inf}, Crossing{1, 0, over_0}}}};
}

}  // namespace

TEST_CASE("star charts") {
    auto c = star_chart(IntVec{1, 1});
    CHECK(c.v_inf() == IntVec{-1, 1});
    CHECK(c.calabi_yau());
    CHECK(c.vertices[0] == IntVec{1, 0});
    CHECK(c.vertices[2] == IntVec{0, 0});
    CHECK(star_chart(IntVec{-4, 1, 5}).v_inf() == IntVec{-1, -4, 1});
    CHECK(star_chart(IntVec{2, 0, 0, 0}).v_inf() == IntVec{-1, 2, 0, 0});
    std::mt19937 rng(2);
    for (int it = 0; it < 40; ++it) {
        IntVec b = oracle::random_vec(rng, 2 + it % 3, -5, 5);
        CHECK(verify_blowup_recursion(b, 6));
    }
    CHECK(blown_up_v_inf(IntVec{-1, 3}, 2) == RatVec{rat(-1, 5), rat(1, 5)});
}

TEST_CASE("transition maps") {
    for (long bi : {-1L, 3L, 0L, 7L}) {
        auto a = make_chart("A", star_chart(IntVec{bi, 2 - bi}), {10, 11, 0, 12});
        auto b = make_chart("B", star_chart(IntVec{5, -3}), {11, 12, 0, 13});
        auto t = transition_map(a, b, {11, 0, 12});
        CHECK(t.translation.is_zero());
        CHECK(t.linear == transition_2d(bi));
        CHECK(t.linear == map_2x2(IntVec{0, 1}, IntVec{-1, bi}, IntVec{1, 0}, IntVec{0, 1}));
    }
    CHECK(transition_2d(-1) == IntMatrix{{-1, 1}, {-1, 0}});
    CHECK(transition_2d(3) == IntMatrix{{3, 1}, {-1, 0}});
    auto a = make_chart("A", star_chart(IntVec{1, 1}), {1, 2, 0, 3});
    CHECK(transition_map(a, a, {1, 2, 0}).is_identity());
    auto shifted = a;
    for (auto& p : shifted.coords) p = p + RatVec{1, 0};
    auto t = transition_map(a, shifted, {1, 2, 0});
    CHECK(t.linear == IntMatrix::identity(2));
    CHECK(t.translation == RatVec{1, 0});
    // Four shared labels that no affine map can match.
    auto b = make_chart("B", star_chart(IntVec{5, -3}), {1, 2, 0, 3});
    CHECK_THROWS_AS(transition_map(a, b, {1, 2, 0, 3}), Error);
    CHECK_THROWS_AS(transition_map(a, b, {1, 2, 7}), Error);
}

TEST_CASE("2D monodromy closed form") {
    CHECK(monodromy_2d({-1, -1, -1}) == IntMatrix::identity(2));
    CHECK(monodromy_2d({3, 3, 3}) == IntMatrix{{21, 8}, {-8, -3}});
    CHECK(monodromy_2d({3, -1, 3}) == IntMatrix{{-15, -4}, {4, 1}});
    CHECK(charge({-1, -1, -1}) == 0);
    CHECK(charge({3, 3, 3}) == 12);
    CHECK(charge({-1, -1, 3}) == 4);
}

TEST_CASE("transport oracle agrees with closed forms") {
    std::mt19937 rng(7);
    for (int it = 0; it < 60; ++it) {
        std::size_t r = 3 + rng() % 5;
        std::vector<Integer> b;
        std::vector<IntVec> steps;
        for (std::size_t s = 0; s < r; ++s) {
            b.push_back(int(rng() % 9) - 4);
            steps.push_back(IntVec{b.back(), 2 - b.back()});
        }
        auto [atlas, loop] = vertex_atlas(steps);
        auto t = monodromy_transport(atlas, loop);
        CHECK(t.translation.is_zero());
        CHECK(t.linear == monodromy_2d(b));
        CHECK(t.linear == monodromy_vertex_loop(steps));
    }
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 2 + it % 3, r = 3 + rng() % 4;
        std::vector<IntVec> steps;
        for (std::size_t s = 0; s < r; ++s) steps.push_back(oracle::random_vec(rng, n, -4, 4));
        auto [atlas, loop] = vertex_atlas(steps);
        auto t = monodromy_transport(atlas, loop);
        CHECK(t.linear == monodromy_vertex_loop(steps));
        CHECK(oracle::cofactor_det(t.linear) == 1);
    }
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 2 + it % 3;
        IntVec b = oracle::random_vec(rng, n, -6, 6), b2 = oracle::random_vec(rng, n, -6, 6);
        auto [atlas, loop] = combination_atlas(b, b2);
        auto t = monodromy_transport(atlas, loop);
        CHECK(t.translation.is_zero());
        CHECK(t.linear == monodromy_combination(b, b2));
    }
    auto [atlas, loop] = combination_atlas(IntVec{3, -1}, IntVec{-1, 3});
    CHECK(monodromy_transport(atlas, loop).linear == IntMatrix{{1, 0}, {4, 1}});
    CHECK(monodromy_combination(IntVec{1, 6, -5}, IntVec{1, 1, 0}) == IntMatrix{{1, 0, 0}, {0, 1, 0}, {5, 0, 1}});
    CHECK(monodromy_combination(IntVec{1, 2, -1}, IntVec{1, 2, -1}) == IntMatrix::identity(3));
}

TEST_CASE("loops within one chart and broken loops") {
    auto a = make_chart("A", star_chart(IntVec{1, 1}), {1, 2, 0, 3});
    std::vector<Chart> atlas{a};
    CHECK(monodromy_transport(atlas, Loop{"trivial", {Crossing{0, 0, {1, 2, 0}}}}).is_identity());
    auto b = make_chart("B", star_chart(IntVec{1, 1}), {2, 3, 0, 1});
    atlas.push_back(b);
    CHECK_THROWS_AS(monodromy_transport(atlas, Loop{"broken", {Crossing{0, 1, {2, 0, 3}}, Crossing{0, 1, {2, 0, 3}}}}),
                    Error);
}

TEST_CASE("loop concatenation multiplies in reverse order") {
    std::mt19937 rng(9);
    for (int it = 0; it < 30; ++it) {
        IntVec b = oracle::random_vec(rng, 3, -4, 4), b2 = oracle::random_vec(rng, 3, -4, 4),
               b3 = oracle::random_vec(rng, 3, -4, 4);
        std::vector<std::size_t> labels{1, 2, 3, 0, 4};
        std::vector<Chart> atlas{make_chart("X", star_chart(b), labels), make_chart("Y", star_chart(b2), labels),
                                 make_chart("Z", star_chart(b3), labels)};
        Loop g1{"g1", {Crossing{0, 1, {2, 3, 0, 4}}, Crossing{1, 0, {1, 2, 3, 0}}}};
        Loop g2{"g2", {Crossing{0, 2, {2, 3, 0, 4}}, Crossing{2, 0, {1, 2, 3, 0}}}};
        Loop both{"g1g2", g1.crossings};
        both.crossings.insert(both.crossings.end(), g2.crossings.begin(), g2.crossings.end());
        CHECK(monodromy_transport(atlas, both) == monodromy_transport(atlas, g2) * monodromy_transport(atlas, g1));
    }
}

TEST_CASE("toric surfaces have trivial monodromy") {
    for (const Fan& f : {fans::projective_space(2), fans::p1xp1(), fans::hirzebruch(1), fans::hirzebruch(2),
                         fans::hirzebruch(3)}) {
        auto b = b_cycle_from_fan(f);
        CHECK(b.size() == f.rays.size());
        CHECK(charge(b) == 0);
        CHECK(monodromy_2d(b) == IntMatrix::identity(2));
    }
    CHECK(b_cycle_from_fan(fans::projective_space(2)) == std::vector<Integer>{-1, -1, -1});
}

TEST_CASE("quintic toric component edge loop has order three") {
    IntMatrix a = vertex_loop_step(IntVec{-1, -1, 4});
    CHECK(a == IntMatrix{{-1, 1, 0}, {-1, 0, 0}, {-1, 0, 1}});
    CHECK(monodromy_vertex_loop({IntVec{-1, -1, 4}, IntVec{-1, -1, 4}, IntVec{-1, -1, 4}}) == IntMatrix::identity(3));
}

TEST_CASE("conjugation") {
    IntMatrix t{{1, 0, 0}, {5, 1, 0}, {0, 0, 1}};
    IntMatrix p{{1, 0, -1}, {0, 1, 4}, {0, 0, -1}};
    CHECK(conjugate(IntMatrix::identity(3), t) == t);
    CHECK(conjugate(p, t) == IntMatrix{{1, 0, 0}, {5, 1, -5}, {0, 0, 1}});
    CHECK(conjugate(inverse_unimodular(p), conjugate(p, t)) == t);
    CHECK_THROWS_AS(conjugate(IntMatrix{{2, 0}, {0, 1}}, IntMatrix::identity(2)), Error);
}

TEST_CASE("semi-simple factorization") {
    auto s = semisimple_factor(IntMatrix{{1, 0, 0}, {5, 1, 0}, {0, 0, 1}}, 5);
    CHECK(s.status == SemisimpleFactor::Status::Factored);
    CHECK(s.e == IntVec{1, 0, 0});
    CHECK(s.f == IntVec{0, 1, 0});
    auto id = semisimple_factor(IntMatrix::identity(3), 5);
    CHECK(id.status == SemisimpleFactor::Status::Trivial);
    CHECK(id.f.is_zero());
    CHECK(semisimple_factor(IntMatrix{{-15, -4}, {4, 1}}, 5).status == SemisimpleFactor::Status::NotRankOne);
    CHECK(semisimple_factor(IntMatrix{{1, 0}, {4, 1}}, 5).status == SemisimpleFactor::Status::ScaleMismatch);
    std::mt19937 rng(4);
    for (int it = 0; it < 50; ++it) {
        IntVec e = primitive_part(oracle::random_vec(rng, 3, -3, 3));
        if (e.is_zero()) continue;
        IntVec f = oracle::random_vec(rng, 3, -3, 3);
        if (f.is_zero() || !is_primitive(f)) continue;
        IntMatrix t = IntMatrix::identity(3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) t(i, j) += 5 * f[i] * e[j];
        auto r = semisimple_factor(t, 5);
        REQUIRE(r.status == SemisimpleFactor::Status::Factored);
        IntMatrix back = IntMatrix::identity(3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) back(i, j) += 5 * r.f[i] * r.e[j];
        CHECK(back == t);
    }
}
