#include "qdouble/cocycles.hpp"

#include <cmath>

#include "qdouble/error.hpp"

namespace qdouble {

namespace {

std::string triple(int k, int l, int m) {
    return "(" + std::to_string(k) + ", " + std::to_string(l) + ", " + std::to_string(m) + ")";
}

}  // namespace

TwoCocycle validate_cocycle(const GroupPtr& k, std::vector<cd> table, double tol) {
    const int n = k->order();
    if (table.size() != static_cast<size_t>(n) * n)
        throw Error(ErrorKind::SizeMismatch, "cocycle table has " + std::to_string(table.size()) + " entries, need " +
                                                 std::to_string(n * n));
    TwoCocycle phi{k, std::move(table)};
    const GroupTable& K = *k;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (std::abs(phi(a, b)) < 1e-12)
                throw Error(ErrorKind::CocycleIdentityFailure, "zero value at (" + std::to_string(a) + ", " +
                                                                   std::to_string(b) + ")");
            const int ab = K.mul(a, b);
            for (int c = 0; c < n; ++c) {
                const cd lhs = phi(ab, c) * phi(a, b);
                const cd rhs = phi(a, K.mul(b, c)) * phi(b, c);
                if (std::abs(lhs - rhs) > tol * std::max(1.0, std::abs(lhs)))
                    throw Error(ErrorKind::CocycleIdentityFailure, "triple " + triple(a, b, c));
            }
        }
    return phi;
}

TwoCocycle trivial_cocycle(const GroupPtr& k) {
    const size_t n = static_cast<size_t>(k->order());
    return TwoCocycle{k, std::vector<cd>(n * n, 1.0)};
}

TwoCocycle cocycle_from_exponents(const GroupPtr& k, int root_order, const std::vector<std::vector<int>>& exponents) {
    const int n = k->order();
    if (root_order < 1) throw Error(ErrorKind::InvalidInput, "root order must be positive");
    if (static_cast<int>(exponents.size()) != n)
        throw Error(ErrorKind::SizeMismatch, "exponent table has wrong number of rows");
    std::vector<cd> table(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(exponents[a].size()) != n)
            throw Error(ErrorKind::SizeMismatch, "exponent row " + std::to_string(a) + " has wrong length");
        for (int b = 0; b < n; ++b) table[static_cast<size_t>(a) * n + b] = root_of_unity(exponents[a][b], root_order);
    }
    return validate_cocycle(k, std::move(table));
}

std::vector<std::vector<int>> cocycle_exponents(const TwoCocycle& phi, int root_order, double tol) {
    const int n = phi.order();
    std::vector<std::vector<int>> out(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const cd v = phi(a, b);
            const double turns = std::arg(v) / (2.0 * M_PI) * root_order;
            const long e = std::lround(turns);
            const int ex = static_cast<int>(((e % root_order) + root_order) % root_order);
            if (std::abs(v - root_of_unity(ex, root_order)) > tol) return {};
            out[a][b] = ex;
        }
    return out;
}

TwoCocycle apply_gauge(const TwoCocycle& phi, const std::vector<cd>& alpha) {
    const GroupTable& K = *phi.group;
    const int n = K.order();
    TwoCocycle out = phi;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            out.table[static_cast<size_t>(a) * n + b] = alpha[a] * alpha[b] / alpha[K.mul(a, b)] * phi(a, b);
    return out;
}

GaugeFixed normalize(const TwoCocycle& phi) {
    const GroupTable& K = *phi.group;
    const int n = K.order();
    std::vector<cd> alpha(n, 1.0);
    alpha[0] = 1.0 / phi(0, 0);
    // modulus fixed by averaging log|phi| over the second slot
    std::vector<double> modulus(n);
    for (int a = 0; a < n; ++a) {
        double b = 0.0;
        for (int m = 0; m < n; ++m) b += std::log(std::abs(phi(a, m)));
        modulus[a] = std::exp(-b / n);
    }
    for (int a = 1; a < n; ++a) {
        const int ai = K.inv(a);
        if (ai == a) {
            alpha[a] = std::sqrt(alpha[0] / phi(a, a));
        } else if (a < ai) {
            alpha[a] = modulus[a];
            alpha[ai] = alpha[0] / (phi(a, ai) * alpha[a]);
        }
    }
    return {apply_gauge(phi, alpha), alpha};
}

NormalizationCheck check_normalized(const TwoCocycle& phi, double tol) {
    const GroupTable& K = *phi.group;
    const int n = K.order();
    NormalizationCheck c{true, true, true, true};
    for (int a = 0; a < n; ++a) {
        if (std::abs(phi(0, a) - 1.0) > tol || std::abs(phi(a, 0) - 1.0) > tol) c.unit_identity = false;
        if (std::abs(phi(a, K.inv(a)) - 1.0) > tol) c.inverse_pairs = false;
        for (int b = 0; b < n; ++b) {
            if (std::abs(std::abs(phi(a, b)) - 1.0) > tol) c.unit_modulus = false;
            if (std::abs(phi(K.inv(a), K.inv(b)) * phi(b, a) - 1.0) > tol) c.inverse_swap = false;
        }
    }
    return c;
}

CommutingPairPhase phase(const TwoCocycle& phi) {
    const GroupTable& K = *phi.group;
    const int n = K.order();
    CommutingPairPhase out{phi.group, std::vector<cd>(static_cast<size_t>(n) * n, 0.0),
                           std::vector<char>(static_cast<size_t>(n) * n, 0)};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!K.commute(a, b)) continue;
            const size_t i = static_cast<size_t>(a) * n + b;
            out.commuting[i] = 1;
            out.values[i] = phi(a, b) / phi(K.conj(a, b), a);
        }
    return out;
}

cd phase_from_normalized(const TwoCocycle& phi, int k, int l) {
    const GroupTable& K = *phi.group;
    return phi(k, l) * phi(K.mul(k, l), K.inv(k));
}

TwoCocycle bicharacter_cocycle(const GroupPtr& k, const std::vector<cd>& b, double tol) {
    const GroupTable& K = *k;
    const int n = K.order();
    if (!K.is_abelian()) throw Error(ErrorKind::NotAbelian, K.label() + " is not abelian");
    if (b.size() != static_cast<size_t>(n) * n) throw Error(ErrorKind::SizeMismatch, "bicharacter table size");
    auto at = [&](int x, int y) { return b[static_cast<size_t>(x) * n + y]; };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (std::abs(at(K.mul(x, y), z) - at(x, z) * at(y, z)) > tol)
                    throw Error(ErrorKind::NotBimultiplicative, "first slot fails at " + triple(x, y, z));
                if (std::abs(at(x, K.mul(y, z)) - at(x, y) * at(x, z)) > tol)
                    throw Error(ErrorKind::NotBimultiplicative, "second slot fails at " + triple(x, y, z));
            }
    return validate_cocycle(k, b);
}

bool is_coboundary_abelian(const TwoCocycle& phi, double tol) {
    if (!phi.group->is_abelian()) throw Error(ErrorKind::NotAbelian, phi.group->label() + " is not abelian");
    const CommutingPairPhase ph = phase(phi);
    for (const cd& v : ph.values)
        if (std::abs(v - 1.0) > tol) return false;
    return true;
}

int absolute_trace(const NearFieldSpec& h, int x) {
    auto fmul = [&](int a, int b) { return h.field_mul[static_cast<size_t>(a) * h.q + b]; };
    int sum = h.zero;
    int power = x;
    for (int i = 0; i < h.degree; ++i) {
        sum = h.add(sum, power);
        int next = 1;
        for (int j = 0; j < h.p; ++j) next = fmul(next, power);
        power = next;
    }
    if (sum >= h.p) throw Error(ErrorKind::AxiomFailure, "trace left the prime field");
    return sum;
}

WallSpec make_wall(const GroupPtr& left, const GroupPtr& right, const GroupPtr& product, std::vector<int> members,
                   const TwoCocycle* phi) {
    WallSpec w;
    w.left = left;
    w.right = right;
    w.product = product ? product : direct_product(left, right);
    if (!w.product->product() || w.product->order() != left->order() * right->order())
        throw Error(ErrorKind::SubgroupMismatch, "wall group is not the product of the two sides");
    w.u = make_subgroup(w.product, std::move(members));
    if (phi) {
        if (!phi->group->same_table(*w.u.as_group))
            throw Error(ErrorKind::SubgroupMismatch, "cocycle does not live on the wall subgroup");
        w.phi = *phi;
    } else {
        w.phi = trivial_cocycle(w.u.as_group);
    }
    return w;
}

WallSpec wall_cocycle(const NearFieldSpec& h, int root) {
    if (!mul_commutative(h) || !right_distributive(h))
        throw Error(ErrorKind::NotAField, "wall cocycle needs two-sided distributive commutative multiplication");
    if (root % h.p == 0) throw Error(ErrorKind::InvalidInput, "root must give a primitive p-th root of unity");
    GroupPtr g = affine_group(h);
    GroupPtr gg = direct_product(g, g);
    const int n = g->order();
    std::vector<int> members;
    for (int a1 = 0; a1 < h.q; ++a1)
        for (int a2 = 0; a2 < h.q; ++a2)
            for (int alpha = 1; alpha < h.q; ++alpha)
                members.push_back(affine_index(h, a1, alpha) * n + affine_index(h, a2, h.mul_inv(alpha)));
    Subgroup u = make_subgroup(gg, members);
    const int m = u.order();
    std::vector<cd> table(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        const int gi = u.embed(i);
        const int alpha = affine_scale(h, gi / n);
        const int a2 = affine_translation(h, gi % n);
        for (int j = 0; j < m; ++j) {
            const int b1 = affine_translation(h, u.embed(j) / n);
            const int t = absolute_trace(h, h.mul(h.mul(alpha, a2), b1));
            table[static_cast<size_t>(i) * m + j] = root_of_unity(root * t, h.p);
        }
    }
    TwoCocycle phi = validate_cocycle(u.as_group, std::move(table));
    WallSpec w;
    w.left = g;
    w.right = g;
    w.product = gg;
    w.u = std::move(u);
    w.phi = std::move(phi);
    return w;
}

WallSpec diagonal_wall(const GroupPtr& g) {
    GroupPtr gg = direct_product(g, g);
    std::vector<int> members;
    for (int x = 0; x < g->order(); ++x) members.push_back(x * g->order() + x);
    return make_wall(g, g, gg, std::move(members));
}

}  // namespace qdouble
