#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syz/lattice.hpp"

namespace syz {

using Cone = std::vector<std::size_t>;

// Simplicial fan given by primitive rays and its maximal cones (ray indices).
struct Fan {
    std::size_t dim = 0;
    std::vector<IntVec> rays;
    std::vector<Cone> cones;

    std::size_t ray_count() const { return rays.size(); }
    IntMatrix cone_matrix(const Cone& c) const;  // rays as columns
};

// Coefficient per ray index.
using TorusDivisor = IntVec;

struct PicPresentation {
    std::size_t generators = 0;
    IntMatrix relations;  // row k: (<u_l, e_k>)_l
    std::size_t pic_rank = 0;
    std::vector<Integer> invariant_factors;
    // The principal tuple delta = sum_l u_l (x) Z_l, one divisor per basis vector of M.
    std::vector<TorusDivisor> delta;
};

struct Wall {
    Cone cone;                       // size dim-1
    std::size_t sigma = 0, sigma2 = 0;  // adjacent maximal cones
    std::size_t p = 0, q = 0;        // opposite rays (p in sigma, q in sigma2)
};

struct SmoothCheck {
    bool smooth = true;
    std::optional<std::size_t> offending_cone;
};

struct NefCheck {
    bool nef = true;
    std::optional<std::size_t> failing_wall;
    Integer value = 0;  // (C.d) on the failing wall
};

Cone normalized(Cone c);

std::vector<std::string> validate_fan(const Fan& f);
SmoothCheck is_smooth(const Fan& f);

// Empty result means complete.
std::optional<std::string> completeness_diagnostic(const Fan& f);
bool is_complete(const Fan& f);

// Interior codim-1 cones with their two neighbours, in lexicographic order of the wall cone.
std::vector<Wall> walls(const Fan& f);

PicPresentation picard_presentation(const Fan& f);
bool is_principal(const Fan& f, const TorusDivisor& d);

// (C.Z_l) for the torus-invariant curve of the wall.
TorusDivisor wall_curve_intersections(const Fan& f, const Wall& w);
Integer curve_degree(const TorusDivisor& curve, const TorusDivisor& d);
NefCheck is_nef(const Fan& f, const TorusDivisor& d);

// Star subdivision of the cone spanned by the given rays; the new ray is their sum.
Fan star_subdivide(const Fan& f, const Cone& face);
std::optional<std::size_t> find_ray(const Fan& f, const IntVec& u);

// Index of the maximal cone containing the point and its coefficients there.
struct ConeLocation {
    std::size_t cone = 0;
    RatVec coefficients;  // aligned with f.cones[cone]
};
std::optional<ConeLocation> locate(const Fan& f, const RatVec& point);

namespace fans {
Fan projective_space(std::size_t n);
Fan p1xp1();
Fan hirzebruch(long a);
}  // namespace fans

}  // namespace syz
