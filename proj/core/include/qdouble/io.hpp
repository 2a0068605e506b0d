#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qdouble/characters.hpp"
#include "qdouble/cocycles.hpp"
#include "qdouble/condensation.hpp"
#include "qdouble/lattice.hpp"
#include "qdouble/modular.hpp"
#include "qdouble/quantum_double.hpp"

namespace qdouble::io {

// insertion-ordered, so field order is stable in every dump
using json = nlohmann::ordered_json;

// [re, im], written exactly
json complex_json(cd v);
cd complex_from_json(const json& j);

// builtin:Zn | builtin:Sn | builtin:An (n <= 6) | affine:q=N | affine:dickson9 |
// product:AxB (factors with or without the builtin: prefix, 'x' or '×') | JSON file path
GroupPtr parse_group(const std::string& uri);
// Near-field behind an affine: URI, if any.
std::optional<NearFieldSpec> parse_near_field(const std::string& uri);
// Fixed list of builtin URIs with group order at most max_order.
std::vector<std::string> builtin_catalog(int max_order);

json group_json(const GroupTable& g);
GroupPtr group_from_json(const json& j);

json subgroup_json(const Subgroup& k);
Subgroup subgroup_from_json(const GroupPtr& g, const json& j);
// whole | trivial | gen:i,j,... | members:i,j,... | centralizer:a | JSON file path
Subgroup parse_subgroup(const GroupPtr& g, const std::string& spec);

struct CocycleFile {
    Subgroup subgroup;
    TwoCocycle phi;
    int omega_order = 1;
};

// Exponents of exp(2 pi i / omega_order), indexed by subgroup position.
json cocycle_json(const Subgroup& k, const TwoCocycle& phi, int omega_order);
CocycleFile cocycle_from_json(const GroupPtr& g, const json& j);

json character_table_json(const CharacterTable& t, bool snap);
std::string character_table_csv(const CharacterTable& t, bool snap);

// {"group", "order", "values": n x n of [re, im]}, row g, column h
json dg_function_json(const DGClassFunction& f);
DGClassFunction dg_function_from_json(const GroupPtr& g, const json& j);

json anyons_json(const QuantumDouble& qd);
std::string anyons_csv(const QuantumDouble& qd);

// p/q with q dividing denominator, or E(N)^j for a root of unity of order N | max_root
std::optional<std::string> snap_exact(cd v, int denominator, int max_root, double tol = kSnapTol);

json matrix_json(const QuantumDouble& qd, const Eigen::MatrixXcd& m, bool snap);
std::string matrix_csv(const QuantumDouble& qd, const Eigen::MatrixXcd& m, bool snap);
json t_json(const QuantumDouble& qd, const Eigen::VectorXcd& t, bool snap);
std::string t_csv(const QuantumDouble& qd, const Eigen::VectorXcd& t, bool snap);
json fusion_json(const QuantumDouble& qd, const FusionTensor& n);
std::string fusion_csv(const QuantumDouble& qd, const FusionTensor& n);

json condensation_json(const QuantumDouble& qd, const CondensationReport& r);
CondensationReport condensation_from_json(const QuantumDouble& qd, const json& j);

json tunneling_json(const Fold& f, const EquivalenceVerdict& v);
json transpositions_json(const QuantumDouble& qd, const std::vector<TranspositionHit>& hits);
json invariant_json(const InvariantVerdict& v);
json cf_json(const CFSymmetryReport& cf, const NearFieldInvariantReport& inv);
json relation_suite_json(const RelationSuiteReport& r);

json read_json_file(const std::string& path);

}  // namespace qdouble::io
