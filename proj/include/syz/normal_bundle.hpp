#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syz/fan.hpp"

namespace syz {

// A toric stratum Z = intersection of the D_j (j in J) with its fan and twisting data.
// Index set I = J u L is laid out as J first (0..|J|-1), then L (|J|..|J|+|L|-1).
struct StratumData {
    std::string id;
    std::size_t n = 0;  // fibre dimension of the degeneration
    std::size_t r = 0;  // dim Z
    Fan fanZ;
    IntMatrix lambda;   // rows j in J = {0..n-r}, columns l in L
    std::vector<bool> cartier;
    bool connected_intersections = true;
    std::vector<std::string> j_labels, l_labels;

    std::size_t j_size() const { return lambda.rows(); }
    std::size_t l_size() const { return fanZ.rays.size(); }
    std::size_t i_size() const { return j_size() + l_size(); }
};

// Prepends the derived row lambda_0 = 1 - sum of the given rows.
IntMatrix complete_lambda(const IntMatrix& partial);

StratumData make_stratum(std::string id, std::size_t n, Fan fanZ, const IntMatrix& partial_lambda);

std::vector<std::string> validate_stratum(const StratumData& s);

struct NormalFan {
    Fan fan;          // dimension r + |J|; rays J first then L
    IntVec ord_t;     // (u, w) -> sum_j w_j
};

NormalFan build_normal_fan(const StratumData& s);

struct WallIntersections {
    TorusDivisor z;  // (C.D_l), l in L
    IntVec d;        // (C.D_j), j in J
};

// (C.D_j) := -sum_l lambda_{j,l} (C.D_l).
WallIntersections wall_intersections(const StratumData& s, const Wall& w);

// Returns the index of the first wall where the relation fails.
// If d_override is given, its entry per wall replaces the derived (C.D_j).
std::optional<std::size_t> verify_normal_fan_relation(const StratumData& s, const NormalFan& nf,
                                                      const std::vector<IntVec>* d_override = nullptr);

struct WDivisor {
    enum class Kind { L, J };
    Kind kind = Kind::L;
    std::size_t index = 0;  // ray index (Kind::L) or j (Kind::J)
    std::size_t cone = 0;
    IntVec coeff;           // over I
};

struct WDivisorSet {
    std::vector<WDivisor> divisors;  // L_sigma in cone order, then J
    std::vector<std::string> violations;
};

WDivisorSet w_divisors(const StratumData& s, std::size_t cone);

// Class on Z of a divisor given over I, using D_j|Z ~ -sum_l lambda_{j,l} Z_l.
TorusDivisor restrict_to_z(const StratumData& s, const IntVec& coeff);

std::optional<std::string> verify_w_sum(const StratumData& s, std::size_t cone);

struct ConeChange {
    std::size_t sigma = 0, sigma2 = 0;
    std::size_t i0 = 0, i_inf = 0;
    Cone shared;                 // L_{sigma sigma'} in increasing order
    IntMatrix matrix;            // slot order: shared, i0|i_inf, J
    WallIntersections curve;
};

ConeChange cone_change_matrix(const StratumData& s, std::size_t sigma, std::size_t sigma2);

// Same change of basis with rows indexed by (sorted L_sigma', J) and columns by (sorted L_sigma, J).
IntMatrix labelled_change(const StratumData& s, const ConeChange& c);

std::optional<std::string> verify_w_transform(const StratumData& s, std::size_t sigma, std::size_t sigma2);

struct NefEntry {
    std::size_t j = 0;
    bool nef = true;
    std::optional<std::size_t> wall;
    Integer value = 0;
};

struct TheoremBReport {
    bool complete = false;
    std::string completeness;
    bool smooth = false;
    std::optional<std::size_t> nonsmooth_cone;
    std::vector<NefEntry> nef;
    std::vector<bool> cartier;
    bool connected = true;
    bool loop_independent = false;
    std::size_t cycles_checked = 0;
    std::string loop_failure;
    bool certified = false;
    std::string verdict;
};

TheoremBReport check_theorem_b(const StratumData& s);

// Fundamental cycles of the maximal-cone adjacency graph, as closed cone sequences.
std::vector<std::vector<std::size_t>> adjacency_cycles(const Fan& f);

}  // namespace syz
