#pragma once

#include <vector>

#include "qdouble/characters.hpp"
#include "qdouble/groups.hpp"

namespace qdouble {

// 2-cocycle on an abstract group K, value at (k, l) stored at k * |K| + l.
struct TwoCocycle {
    GroupPtr group;
    std::vector<cd> table;

    int order() const { return group->order(); }
    cd operator()(int k, int l) const { return table[static_cast<size_t>(k) * group->order() + l]; }
};

struct GaugeFixed {
    TwoCocycle cocycle;
    std::vector<cd> alpha;   // phi'(k,l) = alpha(k) alpha(l) / alpha(kl) * phi(k,l)
};

struct NormalizationCheck {
    bool unit_identity = false;   // phi(e,k) = phi(k,e) = 1
    bool inverse_pairs = false;   // phi(k,k^-1) = 1
    bool unit_modulus = false;    // |phi(k,l)| = 1
    bool inverse_swap = false;    // phi(k^-1,l^-1) = phi(l,k)^-1

    bool all() const { return unit_identity && inverse_pairs && unit_modulus && inverse_swap; }
};

struct CommutingPairPhase {
    GroupPtr group;
    std::vector<cd> values;       // 0 on non-commuting pairs
    std::vector<char> commuting;

    cd operator()(int k, int l) const { return values[static_cast<size_t>(k) * group->order() + l]; }
    bool commutes(int k, int l) const { return commuting[static_cast<size_t>(k) * group->order() + l] != 0; }
};

// Checks every triple; CocycleIdentityFailure names the first bad one.
TwoCocycle validate_cocycle(const GroupPtr& k, std::vector<cd> table, double tol = 1e-9);
TwoCocycle trivial_cocycle(const GroupPtr& k);
TwoCocycle cocycle_from_exponents(const GroupPtr& k, int root_order, const std::vector<std::vector<int>>& exponents);
// Exponents e with phi = exp(2 pi i e / root_order), or empty if some value is not such a root.
std::vector<std::vector<int>> cocycle_exponents(const TwoCocycle& phi, int root_order, double tol = 1e-9);

TwoCocycle apply_gauge(const TwoCocycle& phi, const std::vector<cd>& alpha);
GaugeFixed normalize(const TwoCocycle& phi);
NormalizationCheck check_normalized(const TwoCocycle& phi, double tol = 1e-9);

CommutingPairPhase phase(const TwoCocycle& phi);
// phi(k,l) phi(kl,k^-1), equal to the phase on commuting pairs once phi is normalized
cd phase_from_normalized(const TwoCocycle& phi, int k, int l);

TwoCocycle bicharacter_cocycle(const GroupPtr& k, const std::vector<cd>& b, double tol = 1e-9);
bool is_coboundary_abelian(const TwoCocycle& phi, double tol = 1e-9);

// Trace from F_q down to F_p, as an integer 0..p-1.
int absolute_trace(const NearFieldSpec& h, int x);

struct WallSpec {
    GroupPtr left;
    GroupPtr right;
    GroupPtr product;   // left x right
    Subgroup u;         // subgroup of product
    TwoCocycle phi;     // on u.as_group
};

// U = {((a1,alpha),(a2,alpha^-1))} in G x G for G = H+ x| Hx, phi = w^{tr(alpha a2 b1)}
// with w = exp(2 pi i root / p).
WallSpec wall_cocycle(const NearFieldSpec& h, int root = 1);
// U = diagonal of G x G with trivial cocycle.
WallSpec diagonal_wall(const GroupPtr& g);
WallSpec make_wall(const GroupPtr& left, const GroupPtr& right, const GroupPtr& product, std::vector<int> members,
                   const TwoCocycle* phi = nullptr);

}  // namespace qdouble
