#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qdouble/cocycles.hpp"
#include "qdouble/quantum_double.hpp"

namespace qdouble {

// chi(g h*) = 1/|K| [gh = hg] sum_x [xgx^-1 in K][xhx^-1 in K] phi(xgx^-1 | xhx^-1)
DGClassFunction boundary_character(const Subgroup& k, const TwoCocycle& phi);

struct CondensationReport {
    DGClassFunction character;
    std::vector<int> multiplicities;   // per anyon
    std::vector<int> condensed;        // anyons with positive multiplicity
    long total_dim = 0;                // sum m_X dim X
    bool dimension_identity = false;   // total_dim == |G|
    bool vacuum_once = false;
};

CondensationReport condense(const QuantumDouble& qd, const Subgroup& k, const TwoCocycle& phi);

struct Fold {
    std::shared_ptr<const QuantumDouble> left;
    std::shared_ptr<const QuantumDouble> right;
    std::shared_ptr<const QuantumDouble> product;
    std::vector<int> pair_to_anyon;                  // i * right->size() + j
    std::vector<std::pair<int, int>> anyon_to_pair;

    int pair(int i, int j) const { return pair_to_anyon[static_cast<size_t>(i) * right->size() + j]; }
};

Fold fold(std::shared_ptr<const QuantumDouble> left, std::shared_ptr<const QuantumDouble> right,
          GroupPtr product = nullptr);
Fold fold(const GroupPtr& left, const GroupPtr& right);

struct TunnelingMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> n;
    bool vacuum_once = false;         // n_00 == 1
    bool dimension_identity = false;  // sum n dimX dimY == |G x G'|

    int operator()(int x, int y) const { return n[static_cast<size_t>(x) * cols + y]; }
    bool is_permutation() const;
};

TunnelingMatrix tunnel(const Fold& f, const WallSpec& wall);

struct EquivalenceVerdict {
    bool left_projection_onto = false;
    bool right_projection_onto = false;
    bool left_injective = false;    // a -> phi(a|.) on U n (G x e)
    bool right_injective = false;   // b -> phi(.|b) on U n (e x G')
    bool conditions_hold = false;
    bool is_permutation = false;
    std::vector<int> map;           // X -> Y^op when the matrix is a permutation
    TunnelingMatrix matrix;

    bool equivalence() const { return conditions_hold && is_permutation; }
};

// Throws ConditionMismatch when the subgroup conditions and the matrix disagree.
EquivalenceVerdict equivalence_check(const Fold& f, const WallSpec& wall);

struct ReferenceCharacters {
    DGClassFunction phi_sum;     // sum_X chi_{X [x] X^op}
    DGClassFunction psi_sum;     // sum_X chi_{X [x] (x^-1, rho)}
    DGClassFunction gamma;       // (chi_C - chi_F) [x] (chi_C - chi_F)
};

ReferenceCharacters reference_characters(const Fold& f, int c, int fl);

// Case formula for the wall character on the affine group of a field.
DGClassFunction wall_character_closed_form(const NearFieldSpec& h, const WallSpec& wall);

struct ChargeonFluxion {
    int chargeon = 0;   // (e, pi), pi induced from a nontrivial character of {(a,1)}
    int fluxion = 0;    // (class of (1,1), trivial)
};

ChargeonFluxion near_field_pair(const QuantumDouble& qd, const NearFieldSpec& h);

struct CFSymmetryReport {
    bool field_route = false;
    ChargeonFluxion pair;
    std::vector<int> expected;       // X -> X^dual with C and F swapped
    std::vector<int> observed;       // from the tunneling matrix, empty on the near-field route
    bool conditions_hold = false;
    bool appendix_identity = false;  // wall character == Psi - Gamma
    double appendix_residual = 0.0;
    bool invariant_route = false;    // near-field route result
    bool passed = false;
    std::string detail;
};

CFSymmetryReport verify_cf_symmetry(const NearFieldSpec& h);

}  // namespace qdouble
