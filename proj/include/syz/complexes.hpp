#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syz/lattice.hpp"

namespace syz {

using Face = std::vector<std::size_t>;  // sorted vertex indices

// Dual complex of a special fibre: one vertex per component, one face per stratum.
struct DualComplex {
    std::vector<std::string> vertex_names;
    std::vector<Integer> multiplicity;
    std::vector<Face> faces;
    std::vector<std::string> labels;  // optional, one per face

    std::size_t vertex_count() const { return vertex_names.size(); }
    std::optional<std::size_t> find_face(Face f) const;
    std::size_t face_of(const Face& f) const;  // throws on unknown face
};

std::vector<std::string> validate_complex(const DualComplex& c);

// Full simplex and boundary of a simplex on vertices 0..m, all faces listed.
DualComplex simplex_complex(std::size_t m, bool boundary_only = false);

// Adds f and all its nonempty subsets that are missing.
void add_face_closure(DualComplex& c, const Face& f);

// Faces whose closure contains the given face (indices into c.faces).
std::vector<std::size_t> star(const DualComplex& c, std::size_t face);
std::vector<std::size_t> closed_star(const DualComplex& c, std::size_t face);

struct WeightedPoint {
    std::size_t face = 0;
    RatVec w;  // over the vertices of the face, in face order
};

std::vector<std::string> validate_point(const DualComplex& c, const WeightedPoint& p);
// Full weight vector over all vertices of c.
RatVec full_weights(const DualComplex& c, const WeightedPoint& p);
// Smallest face containing the support of a full weight vector.
WeightedPoint point_from_weights(const DualComplex& c, const RatVec& full);
WeightedPoint barycenter(const DualComplex& c, std::size_t face);

// First barycentric subdivision: vertex k is the barycenter of c.faces[vertex_face[k]],
// cells are strictly increasing chains of faces.
struct Subdivision {
    std::vector<std::size_t> vertex_face;
    std::vector<std::vector<std::size_t>> cells;  // subdivision-vertex indices, chain order
    std::vector<std::size_t> maximal_cells() const;
};

Subdivision barycentric_subdivision(const DualComplex& c);

// Star(v)': cells of the subdivision whose closure contains the vertex v.
std::vector<std::size_t> star_prime(const DualComplex& c, const Subdivision& s, std::size_t v);
// Point lies in the open star of v in the subdivision: w_v strictly exceeds every other weight.
bool in_star_prime(const DualComplex& c, const WeightedPoint& p, std::size_t v);

// Subcomplex of the subdivided m-simplex left after removing all Star(v)'.
struct GammaComplex {
    std::size_t m = 0;
    std::vector<Face> vertex_faces;        // each vertex is the barycenter of this face of the simplex
    std::vector<RatVec> vertices;          // barycentric coordinates, length m+1
    std::vector<std::vector<std::size_t>> cells;
    std::size_t dimension() const;
    std::vector<std::size_t> cells_of_dim(std::size_t d) const;
};

GammaComplex gamma_graph(std::size_t m);
// Union of the graphs Gamma_1 of all 2-faces of the m-simplex.
GammaComplex gamma_two_face_graph(std::size_t m);
// Maximal barycentric coordinate attained at least twice.
bool in_gamma(const RatVec& barycentric);

Rational quasi_monomial_value(const RatVec& w, const std::vector<IntVec>& support);

// h^* D_i = sum_j a(i, j) D'_j for a model dominating a base model.
struct PullbackData {
    IntMatrix a;                     // rows: base vertices, columns: dominating vertices
    std::vector<bool> bimeromorphic; // per dominating face; empty means all true
};

std::vector<std::string> validate_pullback(const DualComplex& base, const DualComplex& top, const PullbackData& p);

WeightedPoint model_retraction(const DualComplex& base, const DualComplex& top, const PullbackData& p,
                               const WeightedPoint& w);

// Faces of the dominating complex on which the retraction is a rational linear isomorphism
// onto a base face (and flagged bimeromorphic).
std::vector<std::size_t> active_faces(const DualComplex& base, const DualComplex& top, const PullbackData& p);

// Data of the composite X'' -> X' -> X.
PullbackData compose(const PullbackData& outer, const PullbackData& inner);

}  // namespace syz
