#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "syz/lattice.hpp"

namespace syz {

// a . p <= b
struct Halfspace {
    RatVec a;
    Rational b;
    bool contains(const RatVec& p) const { return dot(a, p) <= b; }
};

// Facet inequalities of the convex hull of full-dimensional point sets.
std::vector<Halfspace> hull_halfspaces(const std::vector<RatVec>& vertices);
bool in_polytope(const std::vector<Halfspace>& h, const RatVec& p);

struct AffinePart {
    RatMatrix linear;
    RatVec translation;
};

struct Piece {
    std::string name;
    std::vector<Halfspace> domain;
    // Closed nonlinear side condition; empty means none.
    std::function<bool(const RatVec&)> guard;
    std::function<RatVec(const RatVec&)> formula;
    std::optional<AffinePart> affine;

    bool contains(const RatVec& p) const;
};

struct PLMap {
    std::string name;
    std::size_t in_dim = 0, out_dim = 0;
    std::vector<Piece> pieces;
    // Polytopes (vertex lists) whose union is the sampled domain.
    std::vector<std::vector<RatVec>> sample_cells;
    std::vector<RatVec> excluded_points;
    std::function<bool(const RatVec&)> in_target;
    std::vector<RatVec> target_vertices;
};

// Evaluates on every piece containing p; throws if none or if they disagree.
RatVec eval(const PLMap& m, const RatVec& p);
std::vector<std::size_t> containing_pieces(const PLMap& m, const RatVec& p);

PLMap identity_map(std::size_t dim, std::vector<std::vector<RatVec>> cells);
// outer o inner
PLMap compose(const PLMap& outer, const PLMap& inner, std::string name);

// Wing triangle: v_l = (-1,0), v_h = (1,0), v_q = (0,1).
std::vector<RatVec> wing_triangle();
// Three-piece contraction of a wing onto its edge clamped at a_e.
PLMap ks_wing_retraction(const Rational& a_e);
// Linear contraction of the wing parallel to the edge v_l v_q (v_q -> v_l).
PLMap wing_model_retraction();

// Local model coordinates: base v_1 = (0,1,0), v_2 = (1,0,0), v_3 = (-1,0,0);
// upper v_12 = (1/2,1/2,1), v_13 = (-1/2,1/2,1), v_23 = (0,0,1); extra v'_123 = (0,1/3,4/3).
namespace local_model {
RatVec v1();
RatVec v2();
RatVec v3();
RatVec v12();
RatVec v13();
RatVec v23();
RatVec v123_prime();
std::vector<RatVec> octahedron();       // Sk of the six-vertex model
std::vector<RatVec> hull_p5();          // v_1, v_2, v_3, v_13, v_23
std::vector<RatVec> sector_p();         // domain of the combinatorial formula near v_3
std::vector<RatVec> extra_cell();       // v_12, v_13, v_23, v'_123
// Barycentric coordinates (l_1, l_2, l_3) of the (x, y) part with respect to the base triangle.
RatVec base_barycentric(const RatVec& p);
RatVec from_base_barycentric(const RatVec& l, const Rational& z);
// Affine symmetry sending v_i to v_{perm[i]} (indices 0..2), z unchanged.
RatVec permute(const std::vector<std::size_t>& perm, const RatVec& p);
std::vector<std::size_t> inverse_perm(const std::vector<std::size_t>& perm);
bool in_base_triangle(const RatVec& p);
}  // namespace local_model

// (x,y,z) -> (x + (1 - t/2) z, y + (t/2) z, 0), t = 2y/(x+y+1).
RatVec berkovich_vertex_formula(const RatVec& p);
PLMap quintic_vertex_retraction();
// Branch guard x + (1 - t/2) z of the combinatorial formula.
Rational combinatorial_guard(const RatVec& p);
// The combinatorial formula on the sector near v_3.
RatVec combinatorial_formula(const RatVec& p);
PLMap quintic_combinatorial_retraction();
PLMap collapse_kappa();
PLMap pi_prime();

struct RetractionReport {
    std::size_t samples = 0, seam_points = 0;
    bool idempotent = true, image_in_target = true, continuous = true, surjective_on_vertices = true;
    std::vector<std::string> failures;
    bool ok() const { return idempotent && image_in_target && continuous && surjective_on_vertices; }
};

// Grid points with barycentric weights k/density on every simplex spanned by cell vertices.
std::vector<RatVec> sample_points(const PLMap& m, std::size_t density);
RetractionReport verify_retraction(const PLMap& m, std::size_t density = 12);

struct RegionReport {
    std::size_t vertex = 0;
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    std::string first_mismatch;
};

// Over each open Star(v_m)' of the base triangle, compares pi' with the vertex formula
// transported to v_m by the symmetry swapping v_m and v_3. Points on Gamma are skipped.
std::vector<RegionReport> region_check(const PLMap& pi, std::size_t density = 12);

}  // namespace syz
