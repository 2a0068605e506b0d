#include <memory>

#include "qdouble/condensation.hpp"
#include "qdouble/error.hpp"
#include "qdouble/modular.hpp"

namespace qdouble {

CFSymmetryReport verify_cf_symmetry(const NearFieldSpec& h) {
    CFSymmetryReport r;
    r.field_route = mul_commutative(h) && right_distributive(h);
    if (!r.field_route) {
        const NearFieldInvariantReport inv = verify_near_field_invariant(h);
        r.pair = inv.pair;
        r.invariant_route = inv.passed;
        r.passed = inv.passed;
        for (const auto& s : inv.steps)
            if (!s.passed) r.detail += s.name + "; ";
        if (r.detail.empty()) r.detail = "modular-invariant route";
        return r;
    }
    const WallSpec wall = wall_cocycle(h);
    auto side = std::make_shared<const QuantumDouble>(wall.left);
    const Fold f = fold(side, side, wall.product);
    r.pair = near_field_pair(*side, h);
    const int c = r.pair.chargeon, fl = r.pair.fluxion;

    r.expected.resize(side->size());
    for (int x = 0; x < side->size(); ++x) {
        const int j = side->dual(x);
        r.expected[x] = j == c ? fl : (j == fl ? c : j);
    }
    const EquivalenceVerdict v = equivalence_check(f, wall);
    r.conditions_hold = v.conditions_hold;
    r.observed = v.map;

    const DGClassFunction chi = boundary_character(wall.u, wall.phi);
    const ReferenceCharacters ref = reference_characters(f, c, fl);
    r.appendix_residual = max_abs_diff(chi, ref.psi_sum - ref.gamma);
    r.appendix_identity = r.appendix_residual < 1e-8;
    r.passed = v.equivalence() && r.observed == r.expected && r.appendix_identity;
    r.detail = r.passed ? "tunneling permutation equals (C F) J" : "tunneling permutation differs from (C F) J";
    return r;
}

}  // namespace qdouble
