#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syz/fan.hpp"

namespace syz {

// Chart of Star(tau_C) for a stratum curve C: v_0 = e_1, v_k = e_{k+1} (k < n), v_n = 0,
// v_inf = (-1, b_1, ..., b_{n-1}).
struct StarChart {
    IntVec b;                     // b_i = -(C.D_i), length n
    std::vector<IntVec> vertices; // v_0, ..., v_n, v_inf
    std::size_t n() const { return b.dim(); }
    const IntVec& v_inf() const { return vertices.back(); }
    bool calabi_yau() const;      // sum b_i == 2
};

StarChart star_chart(const IntVec& b);

// v_inf after s blow-ups of p_inf, from the closed form (-1, b_1+s, ...)/(ns+1).
RatVec blown_up_v_inf(const IntVec& b, std::size_t s);
// Checks N_{s+1} v_{s+1} = N_s v_s + sum_i v_i for s < steps.
bool verify_blowup_recursion(const IntVec& b, std::size_t steps);

struct AffineTransform {
    IntMatrix linear;
    RatVec translation;

    static AffineTransform identity(std::size_t n);
    RatVec apply(const RatVec& p) const;
    bool is_identity() const;
};

// (a * b)(p) = a(b(p)).
AffineTransform operator*(const AffineTransform& a, const AffineTransform& b);
bool operator==(const AffineTransform& a, const AffineTransform& b);

// Coordinates of labelled vertices in one chart.
struct Chart {
    std::string name;
    std::vector<std::size_t> labels;
    std::vector<RatVec> coords;
    std::optional<RatVec> at(std::size_t label) const;
};

// Labels are given in the order v_0, ..., v_n, v_inf.
Chart make_chart(std::string name, const StarChart& c, const std::vector<std::size_t>& labels);

// Unique affine map sending a's coordinates of the shared labels to b's.
AffineTransform transition_map(const Chart& a, const Chart& b, const std::vector<std::size_t>& shared);

struct Crossing {
    std::size_t from = 0, to = 0;      // chart indices
    std::vector<std::size_t> shared;   // labels of the simplex crossed
};

struct Loop {
    std::string name;
    std::vector<Crossing> crossings;
};

// Composite of the transition maps along the loop: last crossing applied last.
AffineTransform monodromy_transport(const std::vector<Chart>& atlas, const Loop& loop);

struct LoopAtlas {
    std::vector<Chart> charts;
    Loop loop;
};

// Chart s is the star chart of {y_s} u sigma with v_0 = y_{s-1}, face order (y_s, sigma_rest, origin),
// v_inf = y_{s+1} and b-vector steps[s]; the loop crosses from chart s to chart s+1.
LoopAtlas vertex_loop_atlas(const std::vector<std::size_t>& cycle, const std::vector<std::size_t>& sigma_rest,
                            std::size_t origin, const std::vector<IntVec>& steps);
// Two charts X, X' of one star with b-vectors b, b2: X -> X' over the face and i_inf, back over the face and i_0.
LoopAtlas combination_atlas(std::size_t i0, const std::vector<std::size_t>& face_rest, std::size_t origin,
                            std::size_t i_inf, const IntVec& b, const IntVec& b2);

IntMatrix transition_2d(const Integer& b);
// M(b_r) ... M(b_1), basis (v_{D_r}, v_{D_1}).
IntMatrix monodromy_2d(const std::vector<Integer>& b);
Integer charge(const std::vector<Integer>& b);

// One step around a codim-2 face sigma: chart b-vector in face order (y_s, sigma \ origin, origin).
IntMatrix vertex_loop_step(const IntVec& b);
IntMatrix monodromy_vertex_loop(const std::vector<IntVec>& steps);

// Identity with first column (1, b_1 - b'_1, ..., b_{n-1} - b'_{n-1}).
IntMatrix monodromy_combination(const IntVec& b, const IntVec& b2);

// P^{-1} T P.
IntMatrix conjugate(const IntMatrix& p, const IntMatrix& t);

// T = Id + scale * f e^T (f a column, e a row), e with first nonzero entry positive.
struct SemisimpleFactor {
    enum class Status { Factored, Trivial, NotRankOne, ScaleMismatch };
    Status status = Status::Trivial;
    IntVec e, f;
    bool ok() const { return status == Status::Factored || status == Status::Trivial; }
};

SemisimpleFactor semisimple_factor(const IntMatrix& t, const Integer& scale);

// b_i = -(C_i^2) for the rays of a complete smooth surface fan in counter-clockwise order.
std::vector<Integer> b_cycle_from_fan(const Fan& f);

}  // namespace syz
