#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qdouble/condensation.hpp"
#include "qdouble/quantum_double.hpp"

namespace qdouble {

struct ModularData {
    Eigen::MatrixXcd s;
    Eigen::VectorXcd t;
};

ModularData modular_data(const QuantumDouble& qd);

struct InvariantVerdict {
    bool invariant = false;
    double s_residual = 0.0;   // max |MS - SM|
    double t_residual = 0.0;   // max |MT - TM|
    bool nonnegative_integer = false;
    bool vacuum_unit = false;
};

InvariantVerdict is_modular_invariant(const Eigen::MatrixXd& m, const ModularData& d, double tol = 1e-8);

// M(x, perm[x]) = 1
Eigen::MatrixXd permutation_matrix(const std::vector<int>& perm);
std::vector<int> transposition(int size, int x, int y);
Eigen::MatrixXd charge_conjugation_matrix(const QuantumDouble& qd);

struct TranspositionHit {
    int x = 0;
    int y = 0;
    AnyonKind kind_x = AnyonKind::Vacuum;
    AnyonKind kind_y = AnyonKind::Vacuum;
    double s_residual = 0.0;
    double t_residual = 0.0;
};

std::vector<TranspositionHit> search_transposition_invariants(const QuantumDouble& qd, const ModularData& d);

struct ProofStep {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct NearFieldInvariantReport {
    int group_order = 0;
    ChargeonFluxion pair;
    std::vector<ProofStep> steps;
    InvariantVerdict transposition;     // P
    InvariantVerdict with_conjugation;  // PJ
    bool passed = false;
};

// Builds C and F for H+ x| Hx, re-checks the structural facts behind the
// chargeon-fluxion symmetry and checks that swapping C and F is a modular invariant.
NearFieldInvariantReport verify_near_field_invariant(const NearFieldSpec& h);

}  // namespace qdouble
