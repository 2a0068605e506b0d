#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdouble/cocycles.hpp"
#include "qdouble/quantum_double.hpp"

namespace qdouble {

inline constexpr long long kMaxAmplitudes = 1LL << 22;

struct GridPoint {
    int x = 0;
    int y = 0;
    auto operator<=>(const GridPoint&) const = default;
};

// Horizontal edges run (x,y) -> (x+1,y), vertical ones (x,y) -> (x,y+1).
struct GridEdge {
    int x = 0;
    int y = 0;
    bool vertical = false;
    auto operator<=>(const GridEdge&) const = default;

    GridPoint tail() const { return {x, y}; }
    GridPoint head() const { return vertical ? GridPoint{x, y + 1} : GridPoint{x + 1, y}; }
};

inline GridEdge h_edge(int x, int y) { return {x, y, false}; }
inline GridEdge v_edge(int x, int y) { return {x, y, true}; }

// Faces are named by their lower-left corner. Below a wall edge (x,0) sits the
// outer face (x,-1), whose only edge is that wall edge.
struct Site {
    GridPoint vertex;
    GridPoint face;
    auto operator<=>(const Site&) const = default;
};

struct BoundarySpec {
    Subgroup k;
    TwoCocycle phi;   // on k.as_group; normalized internally when needed
};

enum class EdgeMark { Bulk, Solid, Dotted };

struct PatchOptions {
    // Also add vertex terms at rim vertices with partial stars (off the wall).
    // Off by default: only complete stars and faces enter the Hamiltonian.
    bool rim_vertex_terms = false;
};

class LatticePatch {
public:
    // With a boundary, the horizontal edges of row y = 0 form the wall and carry CK.
    LatticePatch(GroupPtr g, std::vector<GridEdge> edges, std::optional<BoundarySpec> boundary, Site s0, Site s1,
                 PatchOptions options = {}, std::string label = "");

    const GroupPtr& group() const { return group_; }
    const std::string& label() const { return label_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<GridEdge>& edges() const { return edges_; }
    int edge_index(const GridEdge& e) const;   // -1 if absent
    int dim(int e) const { return dims_[e]; }
    long long stride(int e) const { return strides_[e]; }
    long long dimension() const { return dimension_; }
    EdgeMark mark(int e) const { return marks_[e]; }
    bool is_wall_edge(int e) const { return marks_[e] != EdgeMark::Bulk; }

    bool has_boundary() const { return boundary_.has_value(); }
    const Subgroup& subgroup() const;
    const TwoCocycle& cocycle() const;   // normalized
    bool trivial_cocycle() const { return trivial_phi_; }

    // local basis index on edge e <-> parent group element
    int element(int e, int local) const;
    int local_index(int e, int element) const;   // -1 if not in the edge space
    std::vector<int> configuration(long long index) const;
    long long index_of(const std::vector<int>& elements) const;

    const Site& s0() const { return s0_; }
    const Site& s1() const { return s1_; }
    const PatchOptions& options() const { return options_; }

    bool is_wall_vertex(GridPoint v) const { return has_boundary() && v.y == 0; }
    bool vertex_complete(GridPoint v) const;
    bool face_complete(GridPoint f) const;
    bool is_outer_face(GridPoint f) const;
    bool site_valid(const Site& s) const;
    std::vector<int> star(GridPoint v) const;   // edge indices present at v

    std::vector<GridPoint> internal_vertices() const;   // complete, off the wall
    std::vector<GridPoint> wall_vertices() const;       // complete wall vertices
    std::vector<GridPoint> rim_vertices() const;        // partial stars off the wall
    std::vector<GridPoint> faces() const;               // complete internal faces

private:
    GroupPtr group_;
    std::string label_;
    std::vector<GridEdge> edges_;
    std::vector<int> dims_;
    std::vector<long long> strides_;
    std::vector<EdgeMark> marks_;
    long long dimension_ = 1;
    std::optional<BoundarySpec> boundary_;
    bool trivial_phi_ = true;
    Site s0_, s1_;
    PatchOptions options_;
};

using PatchPtr = std::shared_ptr<const LatticePatch>;

// width x height faces. With a boundary the wall is row y = 0, s0 sits on wall
// vertex (1,0) and s1 at (1,1); without one, s0 = ((1,1), face (0,0)) and
// s1 = ((2,1), face (1,0)).
PatchPtr build_patch(const GroupPtr& g, int width, int height, std::optional<BoundarySpec> boundary = std::nullopt,
                     PatchOptions options = {});
// Seven edges: the wall vertex of s0 with its three edges, the face above the
// wall edge and the full star of s1.
PatchPtr minimal_boundary_patch(const GroupPtr& g, BoundarySpec boundary);
// Eighteen bulk edges admitting the two ribbons of path_independence_ribbons.
PatchPtr path_independence_patch(const GroupPtr& g);

struct LatticeState {
    PatchPtr patch;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
    // <this|other>
    cd inner(const LatticeState& other) const { return amplitudes.dot(other.amplitudes); }
};

LatticeState random_state(const PatchPtr& patch, std::uint64_t seed);

// Each basis configuration goes to at most one configuration, times a phase.
class MonomialOp {
public:
    // Kernel sees the parent group elements on the support edges, rewrites them
    // in place and multiplies the phase; returning false annihilates the configuration.
    using Kernel = std::function<bool(std::vector<int>& values, cd& phase)>;

    MonomialOp(const PatchPtr& patch, std::vector<int> support, const Kernel& kernel);

    void apply_add(const Eigen::VectorXcd& in, Eigen::VectorXcd& out, cd coeff) const;

private:
    PatchPtr patch_;
    std::vector<int> support_;
    std::vector<long long> strides_;
    std::vector<int> dims_;
    std::vector<long long> delta_;
    std::vector<cd> phase_;
    struct Axis {
        long long stride;
        long long length;
    };
    std::vector<Axis> axes_;   // edges off the support
};

// Finite linear combination of monomial operators.
class LatticeOperator {
public:
    LatticeOperator() = default;
    explicit LatticeOperator(std::shared_ptr<const MonomialOp> op, cd coeff = 1.0) { add(std::move(op), coeff); }

    LatticeOperator& add(std::shared_ptr<const MonomialOp> op, cd coeff = 1.0);
    LatticeOperator& add(const LatticeOperator& other, cd coeff = 1.0);
    bool empty() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    LatticeState apply(const LatticeState& s) const { return {s.patch, apply(s.amplitudes)}; }

private:
    std::vector<std::pair<cd, std::shared_ptr<const MonomialOp>>> terms_;
};

// A_v^g at an internal or rim vertex; at a wall vertex the cocycle-phased
// boundary version (g must lie in K).
LatticeOperator vertex_op(const PatchPtr& patch, GridPoint v, int g);
LatticeOperator boundary_vertex_op(const PatchPtr& patch, GridPoint v, int k);
// B_s^h: holonomy read counterclockwise from s.vertex; for an outer wall face it
// is the inverse of the wall edge.
LatticeOperator face_op(const PatchPtr& patch, const Site& s, int h);

LatticeOperator vertex_projector(const PatchPtr& patch, GridPoint v);
LatticeOperator face_projector(const PatchPtr& patch, GridPoint f);
LatticeOperator boundary_vertex_projector(const PatchPtr& patch, GridPoint v);   // average over K
LatticeOperator boundary_face_projector(const PatchPtr& patch, const Site& s);   // sum over K

struct HamiltonianTerm {
    std::string name;
    LatticeOperator projector;
    std::vector<int> support;
};
std::vector<HamiltonianTerm> hamiltonian_terms(const PatchPtr& patch);

enum class StepKind { Direct, Dual };

struct RibbonStep {
    StepKind kind = StepKind::Direct;
    GridEdge edge;
};

// Steps from the start site; the dual path runs on the right of the direct path.
struct RibbonSpec {
    Site start;
    std::vector<RibbonStep> steps;
};

struct ResolvedRibbon {
    struct Direct {
        int edge;
        bool forward;   // walked tail -> head
    };
    struct Crossing {
        int edge;
        int prefix;          // direct edges walked before the crossing
        bool away_forward;   // the crossing vertex is the tail of the edge
        GridPoint face_from, face_to;
    };
    Site start, end;
    std::vector<Direct> direct;
    std::vector<Crossing> crossings;
    std::vector<GridPoint> path_vertices;
    std::vector<GridPoint> visited_faces;
};

ResolvedRibbon resolve_ribbon(const LatticePatch& patch, const RibbonSpec& ribbon);
RibbonSpec default_ribbon(const LatticePatch& patch);
std::pair<RibbonSpec, RibbonSpec> path_independence_ribbons();

// F^{h,g}: projects the direct path product onto g and threads h through the crossed edges.
LatticeOperator ribbon_op(const PatchPtr& patch, const RibbonSpec& ribbon, int h, int g);
// Boundary version starting at s0 across its solid wall edge, k in K.
LatticeOperator boundary_ribbon_op(const PatchPtr& patch, const RibbonSpec& ribbon, int k, int g);
// sum_l phi(l,k) phi(lk,l^-1) F~^{lkl^-1, l g^-1}, l in K
LatticeOperator invariant_op(const PatchPtr& patch, const RibbonSpec& ribbon, int k, int g);

// One pass of every Hamiltonian projector over a seeded random state.
LatticeState ground_state(const PatchPtr& patch, std::uint64_t seed = 0);

// Trace of A_{s1}^g B_{s1}^h over the orthonormal basis sqrt(r) T~^{k,g_i}|ground>.
DGClassFunction lattice_boundary_character(const PatchPtr& patch, const RibbonSpec& ribbon, std::uint64_t seed = 0);

struct RelationCheck {
    std::string name;
    double residual = 0.0;
    long evaluations = 0;
    int states = 0;
    bool passed = false;
    double seconds = 0.0;
};

struct RelationSuiteOptions {
    int states = 16;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    // Evaluate every parameter tuple on every state; otherwise tuples rotate
    // through the state pool so each relation still sees all of it.
    bool every_state = false;
};

struct RelationSuiteReport {
    std::string patch;
    std::vector<RelationCheck> checks;
    double seconds = 0.0;

    bool passed() const;
    double worst() const;
};

RelationSuiteReport run_relation_suite(const PatchPtr& patch, const RibbonSpec& ribbon,
                                       const RelationSuiteOptions& options = {});
RelationCheck check_path_independence(const PatchPtr& patch, const RibbonSpec& a, const RibbonSpec& b,
                                      const RelationSuiteOptions& options = {});

}  // namespace qdouble
