#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syz/affine_monodromy.hpp"
#include "syz/complexes.hpp"
#include "syz/normal_bundle.hpp"

namespace syz {

// Minimal model of a degeneration: curve strata against components.
struct TableModel {
    std::string name;
    std::vector<std::size_t> order;  // blow-up order, untouched component last; may be empty
    std::vector<Face> curves;
    IntMatrix numbers;               // rows: curves, columns: components

    std::optional<std::size_t> untouched() const;
    // (C.D_m) for the curve with the given face; throws if the curve has no row.
    Integer at(const Face& curve, std::size_t component) const;
};

struct LoopSpec {
    enum class Kind { Vertex, Combination };
    std::string name;
    Kind kind = Kind::Vertex;
    std::size_t origin = 0;
    // Vertex: sigma minus origin. Combination: face minus origin, in chart order.
    std::vector<std::size_t> face;
    // Vertex: the cycle y_1..y_r. Combination: {i_0, i_inf}.
    std::vector<std::size_t> cycle;
    // Vertex: one model. Combination: {X, X'}.
    std::vector<std::string> models;
    std::string orientation;                // "", "inverse", "swap", "inverse-swap"
    std::vector<std::size_t> report_basis;  // labels; empty keeps the chart basis
    std::optional<IntMatrix> expected;
    std::optional<IntMatrix> expected_basis_change;
    std::optional<long> semisimple_scale;  // expected T = Id + scale f e^T
    std::string ref;
};

// product[0] * product[1] * ... == equals
struct RelationSpec {
    std::string name;
    std::vector<std::string> product;
    std::string equals;
    std::string ref;
};

struct StratumSpec {
    enum class Source { Table, Quotient, None };
    std::string id;
    Source source = Source::Table;
    std::string model;                 // Table
    Face components;                   // Table: the components J
    std::string fan;                   // Quotient: local fan name
    std::vector<std::string> rays;     // Quotient: ray names spanning the stratum cone
    std::optional<Fan> fan_z;          // Table: fan of Z with ray l <-> L[l]; P^r when absent
    std::optional<IntMatrix> lambda;   // explicit partial twisting rows; derived when absent
    std::optional<bool> expect_certified;
};

struct WingSpec {
    Face edge;
    std::vector<Rational> points;  // a_e values, strictly increasing, inside (-1, 1)
};

struct FanStep {
    std::string fan, parent;
    std::vector<std::string> face;  // ray names of the subdivided cone
    std::string new_ray;
};

struct LocalModelSpec {
    std::vector<std::string> ray_names;
    std::vector<IntVec> rays;                     // last coordinate is ord_t
    std::vector<std::string> prism;               // rays of the single cone of the singular model
    std::string base;                             // name of the first resolution
    std::vector<std::vector<std::string>> base_cones;
    std::vector<FanStep> steps;
    std::vector<std::pair<std::string, std::size_t>> expected_cells;  // fan, number of skeleton 3-cells
    struct Edge { std::string fan, a, b; };
    std::vector<Edge> expected_interior_edges;
    struct Image { std::string fan, vertex, image; };
    std::vector<Image> expected_images;           // retraction of the skeleton of a finer fan to fan
};

struct RetractionSpec {
    std::vector<std::string> maps;
    bool region_check = false;
    struct Image { std::string map; RatVec point, image; };
    std::vector<Image> expected_images;
};

struct GammaSpec {
    std::string kind;  // "", "two-face-graph"
    std::size_t expected_vertices = 0, expected_edges = 0;
};

struct RegionSpec {
    std::size_t vertex = 0;
    std::string model;
};

struct DegenerationSpec {
    std::string name;
    std::size_t n = 0;  // dimension of the fibre
    DualComplex complex;
    std::vector<TableModel> models;
    std::vector<RegionSpec> regions;
    std::vector<LoopSpec> loops;
    std::vector<RelationSpec> relations;
    std::vector<StratumSpec> strata;
    std::vector<WingSpec> wings;
    GammaSpec gamma;
    std::optional<LocalModelSpec> local;
    RetractionSpec retractions;
    std::vector<std::size_t> fermat_n;

    const TableModel& model(const std::string& name) const;
    const LoopSpec& loop(const std::string& name) const;
};

// Structural problems: table row sums, unknown references, bad parameters.
std::vector<std::string> validate_spec(const DegenerationSpec& s);

struct Record {
    std::string name;
    bool passed = false;
    std::string expected, actual, ref;
};

struct MonodromyEntry {
    std::string loop;
    std::vector<std::string> basis;
    std::string origin;
    std::string orientation;
    IntMatrix rule;         // closed form in the chart basis, before orientation and basis change
    IntMatrix closed_form;  // reported value
    IntMatrix oracle;       // transport oracle, same conventions
    IntMatrix change_of_basis;  // Q with reported = Q^{-1} T Q; empty when the chart basis is kept
    std::vector<Integer> b_cycle;  // vertex loops: b of each step
    bool agree = false;
    std::optional<IntMatrix> expected;
    std::string ref;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<MonodromyEntry> monodromy;
    std::vector<Record> records;
    std::size_t failures() const;
    bool ok() const { return failures() == 0; }
};

struct EvalOptions {
    std::size_t samples = 12;
};

ScenarioReport evaluate(const DegenerationSpec& s, const EvalOptions& opt = {});

// Single loop evaluation (also used by the command line).
MonodromyEntry evaluate_loop(const DegenerationSpec& s, const LoopSpec& loop);

// Toricity data for one stratum; nullopt when no fan data is available.
std::optional<StratumData> stratum_data(const DegenerationSpec& s, const StratumSpec& st);

// Toricity records for one stratum (identities, table consistency, verdict).
std::vector<Record> stratum_records(const DegenerationSpec& s, const StratumSpec& st);

// Built-in scenarios.
DegenerationSpec quartic_k3();
DegenerationSpec k3_combined(const std::vector<Rational>& a_e = {});
DegenerationSpec k3_dispersion(const Face& edge = {0, 1}, const std::vector<Rational>& points = {});
DegenerationSpec k3_collision();
DegenerationSpec quintic();
DegenerationSpec quintic_local_model();
DegenerationSpec fermat_li_charts(std::size_t n);

std::vector<std::string> scenario_names();
// Throws Error on an unknown name.
DegenerationSpec scenario_by_name(const std::string& name);

// Model X_{order} built from a role table (rows: role faces, columns: roles).
TableModel model_from_roles(std::string name, const std::vector<std::size_t>& order,
                            const std::vector<Face>& role_curves, const IntMatrix& role_table);

// Fermat / Li chart f_i evaluated at a point of the boundary of the (n+1)-simplex, given by weights.
RatVec fermat_chart(std::size_t n, std::size_t i, const RatVec& weights);

}  // namespace syz
