#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "syz/pl_retractions.hpp"
#include "syz/spec_io.hpp"

using namespace syz;

namespace {

template <class T>
T pick(std::mt19937& rng, const std::vector<T>& xs) {
    return xs[rng() % xs.size()];
}

// Rational in (-1, 1) with denominator up to 40.
Rational random_unit(std::mt19937& rng) {
    long d = 2 + long(rng() % 39);
    long k = long(rng() % (2 * d - 1)) - (d - 1);
    return rat(k, d);
}

RatVec random_weights(std::mt19937& rng, std::size_t n, int hi = 7) {
    std::uniform_int_distribution<int> d(0, hi);
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

RatVec random_in_hull(std::mt19937& rng, const std::vector<RatVec>& vs) {
    RatVec w = random_weights(rng, vs.size(), 9);
    RatVec p(vs[0].dim());
    for (std::size_t i = 0; i < vs.size(); ++i) p = p + w[i] * vs[i];
    return p;
}

// Smooth complete fan: a standard one followed by random star subdivisions of faces of maximal cones.
Fan random_smooth_fan(std::mt19937& rng, std::size_t dim) {
    Fan f = dim == 2 ? pick(rng, std::vector<Fan>{fans::projective_space(2), fans::p1xp1(), fans::hirzebruch(1),
                                                  fans::hirzebruch(2), fans::hirzebruch(3)})
                     : fans::projective_space(dim);
    std::size_t steps = rng() % (dim == 2 ? 5 : 3);
    for (std::size_t s = 0; s < steps; ++s) {
        Cone c = pick(rng, f.cones);
        std::shuffle(c.begin(), c.end(), rng);
        c.resize(2 + rng() % (dim - 1));
        f = star_subdivide(f, normalized(c));
    }
    return f;
}

Fan relabel(const Fan& f, const std::vector<std::size_t>& perm) {
    Fan g{f.dim, std::vector<IntVec>(f.rays.size()), {}};
    for (std::size_t l = 0; l < f.rays.size(); ++l) g.rays[perm[l]] = f.rays[l];
    for (const auto& c : f.cones) {
        Cone d;
        for (auto l : c) d.push_back(perm[l]);
        g.cones.push_back(normalized(d));
    }
    return g;
}

StratumData random_stratum(std::mt19937& rng) {
    std::size_t r = 2 + rng() % 2;
    Fan f = random_smooth_fan(rng, r);
    std::size_t extra = 1 + rng() % 2;
    return make_stratum("random", r + extra, f, oracle::random_matrix(rng, extra, f.rays.size(), -2, 2));
}

}  // namespace

TEST_SUITE("lattice") {
    TEST_CASE("det is multiplicative") {
        std::mt19937 rng(101);
        for (int it = 0; it < 200; ++it) {
            std::size_t n = 1 + rng() % 5;
            auto a = oracle::random_matrix(rng, n, n, -5, 5), b = oracle::random_matrix(rng, n, n, -5, 5);
            CHECK(det(a * b) == det(a) * det(b));
            CHECK(det(a) == oracle::cofactor_det(a));
        }
    }

    TEST_CASE("solve_rational returns exact solutions") {
        std::mt19937 rng(102);
        for (int it = 0; it < 200; ++it) {
            std::size_t n = 1 + rng() % 5;
            auto a = oracle::random_matrix(rng, n, n, -4, 4);
            RatVec b = to_rational(oracle::random_vec(rng, n, -9, 9));
            auto s = solve_rational(a, b);
            if (oracle::cofactor_det(a) != 0) {
                REQUIRE(s.ok());
                CHECK(to_rational(a) * s.x == b);
            } else {
                CHECK_FALSE(s.ok());
            }
        }
    }

    TEST_CASE("Smith invariant factors form a divisor chain") {
        std::mt19937 rng(103);
        for (int it = 0; it < 200; ++it) {
            std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
            auto a = oracle::random_matrix(rng, r, c, -6, 6);
            auto s = smith_invariants(a);
            CHECK(s.rank == rank(a));
            REQUIRE(s.factors.size() == s.rank);
            for (std::size_t i = 0; i + 1 < s.factors.size(); ++i) CHECK(s.factors[i + 1] % s.factors[i] == 0);
            auto oracle_factors = oracle::determinantal_divisors_factors(a);
            CHECK(s.factors == oracle_factors);
            if (r == c && s.rank == r) {
                Integer prod = 1;
                for (const auto& d : s.factors) prod *= d;
                CHECK(prod == abs(det(a)));
            }
        }
    }

    TEST_CASE("primitive_part is idempotent") {
        std::mt19937 rng(104);
        for (int it = 0; it < 300; ++it) {
            IntVec v = oracle::random_vec(rng, 1 + rng() % 5, -30, 30);
            if (v.is_zero()) continue;
            IntVec p = primitive_part(v);
            CHECK(primitive_part(p) == p);
            CHECK(is_primitive(p));
            CHECK(gcd_of(v) * p == v);
        }
    }
}

TEST_SUITE("fan") {
    TEST_CASE("wall balancing on smooth complete fans") {
        std::mt19937 rng(201);
        for (int it = 0; it < 60; ++it) {
            Fan f = random_smooth_fan(rng, 2 + it % 2);
            REQUIRE(validate_fan(f).empty());
            REQUIRE(is_smooth(f).smooth);
            REQUIRE(is_complete(f));
            for (const auto& w : walls(f)) {
                auto c = wall_curve_intersections(f, w);
                IntVec sum(f.dim);
                for (std::size_t l = 0; l < f.rays.size(); ++l) sum = sum + c[l] * f.rays[l];
                CHECK(sum.is_zero());
                CHECK(c[w.p] == 1);
                CHECK(c[w.q] == 1);
            }
        }
    }

    TEST_CASE("Picard rank is s - r with trivial torsion") {
        std::mt19937 rng(202);
        for (int it = 0; it < 60; ++it) {
            Fan f = random_smooth_fan(rng, 2 + it % 2);
            auto p = picard_presentation(f);
            CHECK(p.generators == f.rays.size());
            CHECK(p.pic_rank == f.rays.size() - f.dim);
            for (const auto& d : p.invariant_factors) CHECK(d == 1);
            auto s = smith_invariants(p.relations);
            CHECK(s.rank == f.dim);
            for (const auto& d : s.factors) CHECK(d == 1);
        }
    }

    TEST_CASE("images of the standard basis are principal") {
        std::mt19937 rng(203);
        for (int it = 0; it < 40; ++it) {
            Fan f = random_smooth_fan(rng, 2 + it % 2);
            auto p = picard_presentation(f);
            for (std::size_t k = 0; k < f.dim; ++k) {
                TorusDivisor d(f.rays.size());
                for (std::size_t l = 0; l < f.rays.size(); ++l) d[l] = f.rays[l][k];
                CHECK(is_principal(f, d));
                CHECK(d == p.relations.row(k));
            }
            // A single boundary divisor is never principal on a complete fan.
            TorusDivisor z(f.rays.size());
            z[rng() % f.rays.size()] = 1;
            CHECK_FALSE(is_principal(f, z));
        }
    }

    TEST_CASE("wall intersections are equivariant under ray relabelling") {
        std::mt19937 rng(204);
        for (int it = 0; it < 40; ++it) {
            Fan f = random_smooth_fan(rng, 2 + it % 2);
            std::vector<std::size_t> perm(f.rays.size());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            Fan g = relabel(f, perm);
            std::map<Cone, TorusDivisor> by_wall;
            for (const auto& w : walls(g)) by_wall[w.cone] = wall_curve_intersections(g, w);
            auto fw = walls(f);
            CHECK(fw.size() == by_wall.size());
            for (const auto& w : fw) {
                Cone mapped;
                for (auto l : w.cone) mapped.push_back(perm[l]);
                auto it2 = by_wall.find(normalized(mapped));
                REQUIRE(it2 != by_wall.end());
                auto c = wall_curve_intersections(f, w);
                for (std::size_t l = 0; l < f.rays.size(); ++l) CHECK(it2->second[perm[l]] == c[l]);
            }
        }
    }
}

TEST_SUITE("normal_bundle") {
    TEST_CASE("ord_t is one on every ray of the normal fan") {
        std::mt19937 rng(301);
        for (int it = 0; it < 40; ++it) {
            auto s = random_stratum(rng);
            REQUIRE(validate_stratum(s).empty());
            for (std::size_t l = 0; l < s.l_size(); ++l) {
                Integer col = 0;
                for (std::size_t j = 0; j < s.j_size(); ++j) col += s.lambda(j, l);
                CHECK(col == 1);
            }
            auto nf = build_normal_fan(s);
            CHECK(nf.fan.rays.size() == s.i_size());
            for (const auto& v : nf.fan.rays) CHECK(dot(nf.ord_t, v) == 1);
            CHECK_FALSE(verify_normal_fan_relation(s, nf).has_value());
        }
    }

    TEST_CASE("W divisor sum and principal restrictions") {
        std::mt19937 rng(302);
        for (int it = 0; it < 30; ++it) {
            auto s = random_stratum(rng);
            for (std::size_t c = 0; c < s.fanZ.cones.size(); ++c) {
                CHECK_FALSE(verify_w_sum(s, c).has_value());
                auto ws = w_divisors(s, c);
                CHECK(ws.violations.empty());
                IntVec total(s.i_size());
                for (const auto& d : ws.divisors) {
                    total = total + d.coeff;
                    CHECK(is_principal(s.fanZ, restrict_to_z(s, d.coeff)));
                }
                for (std::size_t i = 0; i < s.i_size(); ++i) CHECK(total[i] == -1);
            }
        }
    }

    TEST_CASE("cone changes compose to the identity around adjacency cycles") {
        std::mt19937 rng(303);
        for (int it = 0; it < 30; ++it) {
            auto s = random_stratum(rng);
            for (const auto& cyc : adjacency_cycles(s.fanZ)) {
                IntMatrix t = IntMatrix::identity(s.n + 1);
                for (std::size_t k = 0; k + 1 < cyc.size(); ++k) {
                    auto m = labelled_change(s, cone_change_matrix(s, cyc[k], cyc[k + 1]));
                    CHECK(abs(oracle::cofactor_det(m)) == 1);
                    t = m * t;
                }
                CHECK(t == IntMatrix::identity(s.n + 1));
            }
            for (const auto& w : walls(s.fanZ)) CHECK_FALSE(verify_w_transform(s, w.sigma, w.sigma2).has_value());
        }
    }
}

TEST_SUITE("complexes") {
    TEST_CASE("model retraction preserves the multiplicity normalization") {
        auto base = simplex_complex(3);
        base.multiplicity = {1, 2, 1, 3};
        std::mt19937 rng(401);
        for (int it = 0; it < 40; ++it) {
            // Random dominating model: a new vertex on a random edge, lying over one of its ends.
            Face e{std::size_t(rng() % 4), 0};
            do e[1] = rng() % 4; while (e[1] == e[0]);
            DualComplex top = base;
            top.vertex_names.push_back("new");
            std::size_t over = e[rng() % 2];
            top.multiplicity.push_back(base.multiplicity[over]);
            add_face_closure(top, {std::min(e[0], e[1]), std::max(e[0], e[1]), 4});
            PullbackData p{IntMatrix(4, 5), {}};
            for (std::size_t i = 0; i < 4; ++i) p.a(i, i) = 1;
            p.a(over, 4) = 1;
            REQUIRE(validate_pullback(base, top, p).empty());
            for (int k = 0; k < 10; ++k) {
                std::size_t f = rng() % top.faces.size();
                RatVec raw = random_weights(rng, top.faces[f].size());
                Rational s = 0;
                for (std::size_t i = 0; i < raw.dim(); ++i) s += top.multiplicity[top.faces[f][i]] * raw[i];
                RatVec w(raw.dim());
                for (std::size_t i = 0; i < raw.dim(); ++i) w[i] = raw[i] / s;
                auto img = model_retraction(base, top, p, point_from_weights(top, [&] {
                    RatVec full(top.vertex_count());
                    for (std::size_t i = 0; i < w.dim(); ++i) full[top.faces[f][i]] = w[i];
                    return full;
                }()));
                Rational total = 0;
                for (std::size_t i = 0; i < img.w.dim(); ++i) total += base.multiplicity[base.faces[img.face][i]] * img.w[i];
                CHECK(total == 1);
            }
        }
    }

    TEST_CASE("Gamma and the vertex stars partition the simplex") {
        std::mt19937 rng(402);
        for (std::size_t m : {2u, 3u, 4u}) {
            auto tau = simplex_complex(m);
            for (int it = 0; it < 300; ++it) {
                RatVec b = random_weights(rng, m + 1, 4);
                auto p = point_from_weights(tau, b);
                int hits = in_gamma(b) ? 1 : 0;
                for (std::size_t v = 0; v <= m; ++v) hits += in_star_prime(tau, p, v);
                CHECK(hits == 1);
            }
        }
    }

    TEST_CASE("quasi-monomial values take the minimum over a union") {
        std::mt19937 rng(403);
        auto support = [&](std::size_t n) {
            std::vector<IntVec> s;
            for (std::size_t k = 0, c = 1 + rng() % 3; k < c; ++k) s.push_back(oracle::random_vec(rng, n, 0, 5));
            return s;
        };
        for (int it = 0; it < 200; ++it) {
            std::size_t n = 2 + rng() % 3;
            RatVec w = random_weights(rng, n);
            auto s1 = support(n), s2 = support(n);
            auto u = s1;
            u.insert(u.end(), s2.begin(), s2.end());
            CHECK(quasi_monomial_value(w, u) == std::min(quasi_monomial_value(w, s1), quasi_monomial_value(w, s2)));
        }
    }

    TEST_CASE("stars shrink as faces grow") {
        std::mt19937 rng(404);
        for (int it = 0; it < 100; ++it) {
            std::size_t m = 2 + rng() % 3;
            auto c = simplex_complex(m, rng() % 2 == 0);
            auto f2 = c.faces[rng() % c.faces.size()];
            Face f1 = f2;
            std::shuffle(f1.begin(), f1.end(), rng);
            f1.resize(1 + rng() % f2.size());
            std::sort(f1.begin(), f1.end());
            auto s1 = star(c, c.face_of(f1)), s2 = star(c, c.face_of(f2));
            auto cs1 = closed_star(c, c.face_of(f1)), cs2 = closed_star(c, c.face_of(f2));
            std::set<std::size_t> a(s1.begin(), s1.end()), ca(cs1.begin(), cs1.end());
            for (auto x : s2) CHECK(a.count(x));
            for (auto x : cs2) CHECK(ca.count(x));
        }
    }
}

TEST_SUITE("affine_monodromy") {
    TEST_CASE("transport agrees with the closed forms on random loops") {
        std::mt19937 rng(501);
        for (int it = 0; it < 80; ++it) {
            std::size_t n = 2 + it % 3, r = 3 + rng() % 5;
            std::vector<IntVec> steps;
            for (std::size_t s = 0; s < r; ++s) steps.push_back(oracle::random_vec(rng, n, -4, 4));
            std::vector<std::size_t> cycle, rest;
            for (std::size_t s = 0; s < r; ++s) cycle.push_back(10 + s);
            for (std::size_t k = 0; k + 2 < n; ++k) rest.push_back(1 + k);
            auto a = vertex_loop_atlas(cycle, rest, 0, steps);
            auto t = monodromy_transport(a.charts, a.loop);
            CHECK(t.translation.is_zero());
            CHECK(t.linear == monodromy_vertex_loop(steps));
            CHECK(abs(oracle::cofactor_det(t.linear)) == 1);
            if (n == 2) {
                std::vector<Integer> b;
                std::vector<IntVec> cy;
                for (const auto& st : steps) {
                    b.push_back(st[0]);
                    cy.push_back(IntVec{st[0], 2 - st[0]});
                }
                auto a2 = vertex_loop_atlas(cycle, {}, 0, cy);
                CHECK(monodromy_transport(a2.charts, a2.loop).linear == monodromy_2d(b));
            }
        }
        for (int it = 0; it < 80; ++it) {
            std::size_t n = 2 + it % 3;
            IntVec b = oracle::random_vec(rng, n, -6, 6), b2 = oracle::random_vec(rng, n, -6, 6);
            std::vector<std::size_t> face;
            for (std::size_t k = 0; k + 1 < n; ++k) face.push_back(2 + k);
            auto a = combination_atlas(1, face, 0, 20, b, b2);
            auto t = monodromy_transport(a.charts, a.loop);
            CHECK(t.translation.is_zero());
            CHECK(t.linear == monodromy_combination(b, b2));
            CHECK(oracle::cofactor_det(t.linear) == 1);
        }
    }

    TEST_CASE("loop concatenation multiplies in reverse order") {
        std::mt19937 rng(502);
        for (int it = 0; it < 40; ++it) {
            std::size_t n = 2 + it % 3, k = 2 + rng() % 3;
            std::vector<std::size_t> labels{1};
            for (std::size_t i = 2; i <= n; ++i) labels.push_back(i);
            labels.push_back(0);
            labels.push_back(n + 1);
            std::vector<Chart> atlas;
            for (std::size_t c = 0; c < k; ++c)
                atlas.push_back(make_chart("X" + std::to_string(c), star_chart(oracle::random_vec(rng, n, -4, 4)), labels));
            std::vector<std::size_t> over_inf(labels.begin() + 1, labels.end()), over_0(labels.begin(), labels.end() - 1);
            std::vector<Loop> loops;
            for (std::size_t c = 1; c < k; ++c)
                loops.push_back(Loop{"g", {Crossing{0, c, over_inf}, Crossing{c, 0, over_0}}});
            Loop all{"all", {}};
            AffineTransform expect = AffineTransform::identity(n);
            for (const auto& l : loops) {
                all.crossings.insert(all.crossings.end(), l.crossings.begin(), l.crossings.end());
                expect = monodromy_transport(atlas, l) * expect;
            }
            CHECK(monodromy_transport(atlas, all) == expect);
        }
    }

    TEST_CASE("toric surfaces have zero charge and trivial monodromy") {
        std::mt19937 rng(503);
        for (int it = 0; it < 60; ++it) {
            Fan f = random_smooth_fan(rng, 2);
            auto b = b_cycle_from_fan(f);
            CHECK(b.size() == f.rays.size());
            CHECK(charge(b) == 0);
            CHECK(monodromy_2d(b) == IntMatrix::identity(2));
        }
    }
}

TEST_SUITE("pl_retractions") {
    std::vector<PLMap> built_maps(std::mt19937 & rng) {
        return {quintic_vertex_retraction(), quintic_combinatorial_retraction(),
                collapse_kappa(), pi_prime(), wing_model_retraction(), ks_wing_retraction(random_unit(rng))};
    }

    TEST_CASE("retractions are idempotent at random rational points") {
        std::mt19937 rng(601);
        for (int round = 0; round < 3; ++round)
            for (const auto& m : built_maps(rng)) {
                INFO(m.name);
                for (int it = 0; it < 60; ++it) {
                    RatVec p = random_in_hull(rng, pick(rng, m.sample_cells));
                    if (std::find(m.excluded_points.begin(), m.excluded_points.end(), p) != m.excluded_points.end())
                        continue;
                    RatVec q = eval(m, p);
                    CHECK(eval(m, q) == q);
                    if (m.in_target) CHECK(m.in_target(q));
                }
            }
    }

    TEST_CASE("adjacent pieces agree on their seams") {
        std::mt19937 rng(602);
        std::size_t seams = 0;
        for (const auto& m : built_maps(rng)) {
            INFO(m.name);
            for (std::size_t density : {std::size_t(3 + rng() % 5), std::size_t(8 + rng() % 8)})
                for (const auto& p : sample_points(m, density)) {
                    auto pieces = containing_pieces(m, p);
                    if (pieces.size() < 2) continue;
                    ++seams;
                    RatVec first = m.pieces[pieces[0]].formula(p);
                    for (auto k : pieces) CHECK(m.pieces[k].formula(p) == first);
                }
        }
        CHECK(seams > 0);
    }

    TEST_CASE("the KS wing retraction fixes its edge") {
        std::mt19937 rng(603);
        for (int it = 0; it < 40; ++it) {
            auto m = ks_wing_retraction(random_unit(rng));
            for (int k = 0; k < 10; ++k) {
                Rational x = random_unit(rng);
                CHECK(eval(m, RatVec{x, 0}) == RatVec{x, 0});
                // Slant edges land on the edge.
                Rational t = (x + 1) / 2;
                CHECK(eval(m, RatVec{t - 1, t})[1] == 0);
                CHECK(eval(m, RatVec{1 - t, t})[1] == 0);
            }
        }
    }

    TEST_CASE("pi' restricted to the base triangle is the identity") {
        using namespace local_model;
        std::mt19937 rng(604);
        auto pi = pi_prime();
        auto vertex = quintic_vertex_retraction();
        for (int it = 0; it < 200; ++it) {
            RatVec p = random_in_hull(rng, {v1(), v2(), v3()});
            CHECK(eval(pi, p) == p);
            if (!(p == v3())) CHECK(eval(vertex, p) == p);
        }
        CHECK(eval(vertex, v13()) == v1());
        CHECK(eval(vertex, v23()) == v2());
    }
}

TEST_SUITE("scenarios") {
    TEST_CASE("edge monodromy does not depend on the position of a_e") {
        std::mt19937 rng(701);
        auto reference = evaluate(k3_combined(), {4});
        for (int it = 0; it < 6; ++it) {
            std::vector<Rational> a;
            for (int e = 0; e < 6; ++e) a.push_back(random_unit(rng));
            auto r = evaluate(k3_combined(a), {4});
            CHECK(r.ok());
            REQUIRE(r.monodromy.size() == reference.monodromy.size());
            for (std::size_t k = 0; k < r.monodromy.size(); ++k)
                CHECK(r.monodromy[k].closed_form == reference.monodromy[k].closed_form);
        }
        auto dref = evaluate(k3_dispersion(), {4});
        for (int it = 0; it < 6; ++it) {
            std::set<Rational> pts;
            while (pts.size() < 4) pts.insert(random_unit(rng));
            auto r = evaluate(k3_dispersion({0, 1}, {pts.begin(), pts.end()}), {4});
            CHECK(r.ok());
            REQUIRE(r.monodromy.size() == dref.monodromy.size());
            for (std::size_t k = 0; k < r.monodromy.size(); ++k)
                CHECK(r.monodromy[k].closed_form == dref.monodromy[k].closed_form);
        }
    }

    TEST_CASE("export then ingest reproduces the report") {
        std::mt19937 rng(702);
        for (int it = 0; it < 4; ++it) {
            std::set<Rational> pts;
            while (pts.size() < 4) pts.insert(random_unit(rng));
            std::vector<Rational> a;
            for (int e = 0; e < 6; ++e) a.push_back(random_unit(rng));
            for (const auto& s : {k3_dispersion({1, 3}, {pts.begin(), pts.end()}), k3_combined(a)}) {
                std::string text = dump_spec(s);
                auto back = parse_spec(text);
                CHECK(dump_spec(back) == text);
                CHECK(dump_report(evaluate(back, {4})) == dump_report(evaluate(s, {4})));
            }
        }
    }
}
