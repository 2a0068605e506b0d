#include "qdouble/condensation.hpp"

#include <algorithm>
#include <cmath>

#include "qdouble/error.hpp"

namespace qdouble {

DGClassFunction boundary_character(const Subgroup& k, const TwoCocycle& phi) {
    if (!phi.group->same_table(*k.as_group))
        throw Error(ErrorKind::SubgroupMismatch, "cocycle is not defined on the given subgroup");
    const GroupTable& G = *k.parent;
    const GroupTable& K = *k.as_group;
    const CommutingPairPhase ph = phase(phi);
    DGClassFunction out = DGClassFunction::zero(k.parent);
    const double scale = 1.0 / static_cast<double>(k.order());
    const int m = k.order();
    // substitute g = x^-1 k1 x, h = x^-1 k2 x
    for (int x = 0; x < G.order(); ++x) {
        const int xinv = G.inv(x);
        for (int i = 0; i < m; ++i) {
            const int g = G.conj(xinv, k.embed(i));
            for (int j = 0; j < m; ++j) {
                if (!K.commute(i, j)) continue;
                out.at(g, G.conj(xinv, k.embed(j))) += scale * ph(i, j);
            }
        }
    }
    return out;
}

CondensationReport condense(const QuantumDouble& qd, const Subgroup& k, const TwoCocycle& phi) {
    require_same_group(*qd.group(), *k.parent, "condense");
    CondensationReport r;
    r.character = boundary_character(k, phi);
    r.multiplicities = dg_decompose(qd, r.character);
    for (int x = 0; x < qd.size(); ++x) {
        if (r.multiplicities[x] > 0) r.condensed.push_back(x);
        r.total_dim += static_cast<long>(r.multiplicities[x]) * qd.anyon(x).dim;
    }
    r.dimension_identity = r.total_dim == qd.group()->order();
    r.vacuum_once = r.multiplicities[0] == 1;
    return r;
}

Fold fold(std::shared_ptr<const QuantumDouble> left, std::shared_ptr<const QuantumDouble> right, GroupPtr product) {
    if (!product) product = direct_product(left->group(), right->group());
    const ProductInfo* info = product->product();
    if (!info || !info->left->same_table(*left->group()) || !info->right->same_table(*right->group()))
        throw Error(ErrorKind::GroupMismatch, "product group does not match the folded sides");
    Fold f;
    f.left = std::move(left);
    f.right = std::move(right);
    f.product = std::make_shared<const QuantumDouble>(product);
    const QuantumDouble& P = *f.product;
    const int n2 = f.right->group()->order();
    const int m1 = f.left->size(), m2 = f.right->size();
    f.pair_to_anyon.assign(static_cast<size_t>(m1) * m2, -1);
    f.anyon_to_pair.assign(P.size(), {-1, -1});
    const ConjugacyData& pc = product->conjugacy();
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m2; ++j) {
            const int rep = f.left->anyon(i).class_rep * n2 + f.right->anyon(j).class_rep;
            const int c = pc.class_of[rep];
            if (pc.reps[c] != rep) throw Error(ErrorKind::GroupMismatch, "product class representative mismatch");
            const Subgroup& z = P.centralizer(c);
            const ConjugacyData& zc = z.as_group->conjugacy();
            ClassFunction row{z.as_group, std::vector<cd>(zc.class_count())};
            for (int cls = 0; cls < zc.class_count(); ++cls) {
                const int e = z.embed(zc.reps[cls]);
                row.values[cls] = f.left->centralizer_trace(i, e / n2) * f.right->centralizer_trace(j, e % n2);
            }
            const int r = find_row(P.centralizer_table(c), row);
            if (r < 0) throw Error(ErrorKind::NumericalDegeneracy, "product anyon not found for a pair");
            const int a = P.index_of(c, r);
            f.pair_to_anyon[static_cast<size_t>(i) * m2 + j] = a;
            f.anyon_to_pair[a] = {i, j};
        }
    return f;
}

Fold fold(const GroupPtr& left, const GroupPtr& right) {
    return fold(std::make_shared<const QuantumDouble>(left), std::make_shared<const QuantumDouble>(right));
}

bool TunnelingMatrix::is_permutation() const {
    if (rows != cols) return false;
    std::vector<int> col_sum(cols, 0);
    for (int x = 0; x < rows; ++x) {
        int row_sum = 0;
        for (int y = 0; y < cols; ++y) {
            const int v = (*this)(x, y);
            if (v != 0 && v != 1) return false;
            row_sum += v;
            col_sum[y] += v;
        }
        if (row_sum != 1) return false;
    }
    return std::all_of(col_sum.begin(), col_sum.end(), [](int s) { return s == 1; });
}

TunnelingMatrix tunnel(const Fold& f, const WallSpec& wall) {
    require_same_group(*f.product->group(), *wall.product, "tunnel");
    const std::vector<int> m = dg_decompose(*f.product, boundary_character(wall.u, wall.phi));
    TunnelingMatrix t;
    t.rows = f.left->size();
    t.cols = f.right->size();
    t.n.assign(static_cast<size_t>(t.rows) * t.cols, 0);
    long total = 0;
    for (int x = 0; x < t.rows; ++x)
        for (int y = 0; y < t.cols; ++y) {
            const int v = m[f.pair(x, y)];
            t.n[static_cast<size_t>(x) * t.cols + y] = v;
            total += static_cast<long>(v) * f.left->anyon(x).dim * f.right->anyon(y).dim;
        }
    t.vacuum_once = t(0, 0) == 1;
    t.dimension_identity = total == wall.product->order();
    return t;
}

EquivalenceVerdict equivalence_check(const Fold& f, const WallSpec& wall) {
    EquivalenceVerdict v;
    const int n1 = wall.left->order(), n2 = wall.right->order();
    std::vector<char> hit1(n1, 0), hit2(n2, 0);
    std::vector<int> a_side, b_side;   // indices in U
    for (int i = 0; i < wall.u.order(); ++i) {
        const int e = wall.u.embed(i);
        hit1[e / n2] = 1;
        hit2[e % n2] = 1;
        if (e % n2 == 0) a_side.push_back(i);
        if (e / n2 == 0) b_side.push_back(i);
    }
    v.left_projection_onto = std::all_of(hit1.begin(), hit1.end(), [](char c) { return c != 0; });
    v.right_projection_onto = std::all_of(hit2.begin(), hit2.end(), [](char c) { return c != 0; });

    const CommutingPairPhase ph = phase(wall.phi);
    auto rows_distinct = [&](const std::vector<int>& outer, const std::vector<int>& inner, bool outer_first) {
        for (size_t p = 0; p < outer.size(); ++p)
            for (size_t q = p + 1; q < outer.size(); ++q) {
                bool same = true;
                for (size_t r = 0; r < inner.size() && same; ++r) {
                    const cd x = outer_first ? ph(outer[p], inner[r]) : ph(inner[r], outer[p]);
                    const cd y = outer_first ? ph(outer[q], inner[r]) : ph(inner[r], outer[q]);
                    same = std::abs(x - y) < 1e-8;
                }
                if (same) return false;
            }
        return true;
    };
    v.left_injective = rows_distinct(a_side, b_side, true);
    v.right_injective = rows_distinct(b_side, a_side, false);
    v.conditions_hold = v.left_projection_onto && v.right_projection_onto && v.left_injective && v.right_injective;

    v.matrix = tunnel(f, wall);
    v.is_permutation = v.matrix.is_permutation();
    if (v.is_permutation) {
        v.map.assign(v.matrix.rows, -1);
        for (int x = 0; x < v.matrix.rows; ++x)
            for (int y = 0; y < v.matrix.cols; ++y)
                if (v.matrix(x, y) == 1) v.map[x] = f.right->op(y);
    }
    if (v.conditions_hold != v.is_permutation)
        throw Error(ErrorKind::ConditionMismatch,
                    std::string("subgroup conditions say ") + (v.conditions_hold ? "equivalence" : "partial") +
                        " but the tunneling matrix " + (v.is_permutation ? "is" : "is not") + " a permutation");
    return v;
}

ReferenceCharacters reference_characters(const Fold& f, int c, int fl) {
    const QuantumDouble& L = *f.left;
    const QuantumDouble& P = *f.product;
    require_same_group(*L.group(), *f.right->group(), "reference_characters");
    ReferenceCharacters r{DGClassFunction::zero(P.group()), DGClassFunction::zero(P.group()),
                          DGClassFunction::zero(P.group())};
    auto add = [&](DGClassFunction& acc, int anyon, double s) {
        for (const auto& e : P.support(anyon)) acc.at(e.g, e.h) += s * e.value;
    };
    for (int x = 0; x < L.size(); ++x) {
        add(r.phi_sum, f.pair(x, L.op(x)), 1.0);
        add(r.psi_sum, f.pair(x, L.op(L.dual(x))), 1.0);
    }
    add(r.gamma, f.pair(c, c), 1.0);
    add(r.gamma, f.pair(fl, fl), 1.0);
    add(r.gamma, f.pair(c, fl), -1.0);
    add(r.gamma, f.pair(fl, c), -1.0);
    return r;
}

DGClassFunction wall_character_closed_form(const NearFieldSpec& h, const WallSpec& wall) {
    const GroupTable& GG = *wall.product;
    const int n = wall.left->order();
    DGClassFunction out = DGClassFunction::zero(wall.product);
    const double q = static_cast<double>(h.q);
    for (int g : wall.u.members)
        for (int k : wall.u.members) {
            if (!GG.commute(g, k)) continue;
            const int alpha = affine_scale(h, g / n), beta = affine_scale(h, k / n);
            if (alpha != h.one || beta != h.one) {
                out.at(g, k) = q - 1.0;
                continue;
            }
            const int a1 = affine_translation(h, g / n), a2 = affine_translation(h, g % n);
            const int b1 = affine_translation(h, k / n), b2 = affine_translation(h, k % n);
            out.at(g, k) = h.mul(a1, b2) == h.mul(a2, b1) ? q - 1.0 : -1.0;
        }
    return out;
}

ChargeonFluxion near_field_pair(const QuantumDouble& qd, const NearFieldSpec& h) {
    const GroupPtr& g = qd.group();
    if (g->order() != h.q * (h.q - 1)) throw Error(ErrorKind::GroupMismatch, "group is not the affine group of H");
    std::vector<int> translations;
    for (int a = 0; a < h.q; ++a) translations.push_back(affine_index(h, a, h.one));
    const Subgroup k = make_subgroup(g, translations);
    const CharacterTable tk = character_table(k.as_group);
    if (tk.size() < 2) throw Error(ErrorKind::InvalidInput, "translation subgroup has no nontrivial character");
    const ClassFunction pi = induced_character(g, k, tk.rows[1]);
    const CharacterTable& tg = qd.centralizer_table(0);
    ClassFunction pi_on_z{tg.group, pi.values};
    const int row = find_row(tg, pi_on_z);
    if (row < 0) throw Error(ErrorKind::AxiomFailure, "induced character is not irreducible");
    ChargeonFluxion cf;
    cf.chargeon = qd.index_of(0, row);
    cf.fluxion = qd.index_of(g->conjugacy().class_of[affine_index(h, h.one, h.one)], 0);
    return cf;
}

}  // namespace qdouble
