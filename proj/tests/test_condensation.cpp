#include <gtest/gtest.h>

#include "qdouble/condensation.hpp"
#include "qdouble/error.hpp"
#include "qdouble/io.hpp"

using namespace qdouble;

namespace {

std::vector<cd> bilinear_table() {
    std::vector<cd> t(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t[a * 4 + b] = ((a % 2) * (b / 2)) ? -1.0 : 1.0;
    return t;
}

void expect_sound(const QuantumDouble& qd, const CondensationReport& r) {
    EXPECT_TRUE(r.vacuum_once);
    EXPECT_TRUE(r.dimension_identity);
    EXPECT_EQ(r.multiplicities[0], 1);
    long total = 0;
    for (int x = 0; x < qd.size(); ++x) {
        EXPECT_GE(r.multiplicities[x], 0);
        total += static_cast<long>(r.multiplicities[x]) * qd.anyon(x).dim;
    }
    EXPECT_EQ(total, qd.group()->order());
    EXPECT_EQ(r.total_dim, total);
}

}  // namespace

TEST(BoundaryCharacter, FullAndTrivialSubgroupFormulas) {
    for (auto g : {cyclic(2), symmetric(3), alternating(4)}) {
        const int n = g->order();
        auto full = boundary_character(whole_group(g), trivial_cocycle(g));
        auto triv_k = trivial_subgroup(g);
        auto none = boundary_character(triv_k, trivial_cocycle(triv_k.as_group));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                EXPECT_NEAR(std::abs(full(a, b) - (g->commute(a, b) ? 1.0 : 0.0)), 0.0, 1e-12);
                EXPECT_NEAR(std::abs(none(a, b) - (a == 0 && b == 0 ? static_cast<double>(n) : 0.0)), 0.0, 1e-12);
            }
    }
}

TEST(BoundaryCharacter, SubgroupMismatch) {
    auto g = symmetric(3);
    auto k = generated_subgroup(g, {1});
    try {
        boundary_character(k, trivial_cocycle(g));
        ADD_FAILURE() << "expected SubgroupMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SubgroupMismatch);
    }
}

TEST(Condense, FluxionsAndChargeons) {
    for (auto g : {cyclic(2), symmetric(3), alternating(4)}) {
        SCOPED_TRACE(g->label());
        QuantumDouble qd(g);
        auto full = condense(qd, whole_group(g), trivial_cocycle(g));
        auto tk = trivial_subgroup(g);
        auto none = condense(qd, tk, trivial_cocycle(tk.as_group));
        expect_sound(qd, full);
        expect_sound(qd, none);
        for (int x = 0; x < qd.size(); ++x) {
            const auto k = qd.kind(x);
            const bool flux = k == AnyonKind::Vacuum || k == AnyonKind::Fluxion;
            const bool charge = k == AnyonKind::Vacuum || k == AnyonKind::Chargeon;
            EXPECT_EQ(full.multiplicities[x], flux ? 1 : 0) << qd.label(x);
            EXPECT_EQ(none.multiplicities[x], charge ? qd.anyon(x).irrep_dim : 0) << qd.label(x);
        }
    }
}

TEST(Condense, ToricCodeBoundaries) {
    auto g = cyclic(2);
    QuantumDouble qd(g);
    auto z = condense(qd, whole_group(g), trivial_cocycle(g));
    EXPECT_EQ(z.condensed, (std::vector<int>{0, 2}));   // 1 and m
    auto tk = trivial_subgroup(g);
    auto x = condense(qd, tk, trivial_cocycle(tk.as_group));
    EXPECT_EQ(x.condensed, (std::vector<int>{0, 1}));   // 1 and e
}

TEST(Condense, AllCyclicSubgroupsAreSound) {
    for (auto g : {symmetric(3), symmetric(4), alternating(4), direct_product(cyclic(2), symmetric(3))}) {
        QuantumDouble qd(g);
        for (int a = 0; a < g->order(); ++a) {
            auto k = generated_subgroup(g, {a});
            expect_sound(qd, condense(qd, k, trivial_cocycle(k.as_group)));
        }
    }
}

TEST(Condense, S3OrderThreeSubgroup) {
    auto g = symmetric(3);
    QuantumDouble qd(g);
    int r = -1;
    for (int a = 0; a < 6 && r < 0; ++a)
        if (g->element_order(a) == 3) r = a;
    auto k = generated_subgroup(g, {r});
    auto rep = condense(qd, k, trivial_cocycle(k.as_group));
    expect_sound(qd, rep);
    // the sign rep restricts trivially to Z3, and so does the rotation flux with trivial charge
    EXPECT_EQ(rep.multiplicities, (std::vector<int>{1, 1, 0, 0, 0, 2, 0, 0}));
}

TEST(Condense, BilinearKleinWall) {
    auto k4 = direct_product(cyclic(2), cyclic(2));
    QuantumDouble qd(k4);
    auto phi = validate_cocycle(k4, bilinear_table());
    auto rep = condense(qd, whole_group(k4), phi);
    expect_sound(qd, rep);
    EXPECT_EQ(rep.condensed.size(), 4u);
    for (int x : rep.condensed) EXPECT_EQ(rep.multiplicities[x], 1);
}

TEST(Condense, CondensedAnyonsMultiplyNontrivially) {
    for (auto g : {symmetric(3), alternating(4)}) {
        QuantumDouble qd(g);
        auto n = fusion_verlinde(qd, s_matrix(qd));
        auto rep = condense(qd, whole_group(g), trivial_cocycle(g));
        for (int x : rep.condensed)
            for (int y : rep.condensed) {
                int hits = 0;
                for (int z : rep.condensed) hits += n(x, y, z);
                EXPECT_GT(hits, 0);
            }
    }
}

TEST(Fold, PairingAndCharacters) {
    auto l = symmetric(3), r = cyclic(2);
    auto f = fold(l, r);
    const auto& qp = *f.product;
    EXPECT_EQ(qp.size(), f.left->size() * f.right->size());
    EXPECT_EQ(f.pair(0, 0), 0);
    const int n2 = r->order();
    const auto& pg = *qp.group();
    for (int i = 0; i < f.left->size(); ++i)
        for (int j = 0; j < f.right->size(); ++j) {
            const int x = f.pair(i, j);
            EXPECT_EQ(f.anyon_to_pair[x], std::make_pair(i, j));
            EXPECT_EQ(qp.anyon(x).dim, f.left->anyon(i).dim * f.right->anyon(j).dim);
            auto chi = qp.character(x);
            auto cl = f.left->character(i);
            auto cr = f.right->character(j);
            for (int g = 0; g < pg.order(); ++g)
                for (int h = 0; h < pg.order(); ++h) {
                    const cd expect = cl(g / n2, h / n2) * cr(g % n2, h % n2);
                    EXPECT_NEAR(std::abs(chi(g, h) - expect), 0.0, 1e-12);
                }
        }
}

TEST(Tunnel, DiagonalWallIsOpPermutation) {
    for (const auto& uri : io::builtin_catalog(24)) {
        SCOPED_TRACE(uri);
        auto g = io::parse_group(uri);
        auto qd = std::make_shared<const QuantumDouble>(g);
        auto wall = diagonal_wall(g);
        auto f = fold(qd, qd, wall.product);
        auto v = equivalence_check(f, wall);
        EXPECT_TRUE(v.conditions_hold);
        ASSERT_TRUE(v.is_permutation);
        for (int x = 0; x < qd->size(); ++x) {
            EXPECT_EQ(v.matrix(x, qd->op(x)), 1);
            EXPECT_EQ(v.map[x], x);
        }
    }
}

TEST(Tunnel, WallCocyclesSwapChargeonAndFluxion) {
    for (int q : {2, 3, 4}) {
        SCOPED_TRACE(q);
        auto h = near_field(q, NearFieldKind::Field);
        auto r = verify_cf_symmetry(h);
        EXPECT_TRUE(r.passed) << r.detail;
        EXPECT_TRUE(r.conditions_hold);
        EXPECT_TRUE(r.appendix_identity);
        EXPECT_EQ(r.observed, r.expected);
    }
    // q = 2 is the toric code: e (chargeon) and m (fluxion) are exchanged
    auto r2 = verify_cf_symmetry(near_field(2, NearFieldKind::Field));
    EXPECT_EQ(r2.observed, (std::vector<int>{0, 2, 1, 3}));
    // q = 3: S3 is self-dual, so only C and F move
    auto r3 = verify_cf_symmetry(near_field(3, NearFieldKind::Field));
    ASSERT_EQ(r3.observed.size(), 8u);
    for (int x = 0; x < 8; ++x) {
        if (x == r3.pair.chargeon) EXPECT_EQ(r3.observed[x], r3.pair.fluxion);
        else if (x == r3.pair.fluxion) EXPECT_EQ(r3.observed[x], r3.pair.chargeon);
        else EXPECT_EQ(r3.observed[x], x);
    }
}

TEST(Tunnel, DicksonUsesInvariantRoute) {
    auto r = verify_cf_symmetry(near_field(9, NearFieldKind::Dickson9));
    EXPECT_FALSE(r.field_route);
    EXPECT_TRUE(r.invariant_route);
    EXPECT_TRUE(r.passed);
}

TEST(Tunnel, ProjectionDeficientWallIsPartial) {
    auto g = symmetric(3);
    auto qd = std::make_shared<const QuantumDouble>(g);
    auto prod = direct_product(g, g);
    std::vector<int> members;
    for (int a = 0; a < 6; ++a) members.push_back(a * 6);
    auto wall = make_wall(g, g, prod, members);
    auto v = equivalence_check(fold(qd, qd, prod), wall);
    EXPECT_TRUE(v.left_projection_onto);
    EXPECT_FALSE(v.right_projection_onto);
    EXPECT_FALSE(v.conditions_hold);
    EXPECT_FALSE(v.is_permutation);
    EXPECT_FALSE(v.equivalence());
    EXPECT_TRUE(v.matrix.vacuum_once);
    EXPECT_TRUE(v.matrix.dimension_identity);
}

TEST(ReferenceCharacters, DiagonalWallIsPhi) {
    for (auto g : {cyclic(2), symmetric(3)}) {
        auto qd = std::make_shared<const QuantumDouble>(g);
        auto wall = diagonal_wall(g);
        auto f = fold(qd, qd, wall.product);
        auto refs = reference_characters(f, 0, 0);
        auto chi = boundary_character(wall.u, wall.phi);
        EXPECT_LT(max_abs_diff(chi, refs.phi_sum), 1e-10);
        // closed form: [gh = hg] [g1 h1* ~ g2 h2*] |Z(g1) n Z(h1)|
        const auto& pg = *wall.product;
        const int n = g->order();
        for (int a = 0; a < pg.order(); ++a)
            for (int b = 0; b < pg.order(); ++b) {
                double expect = 0.0;
                if (pg.commute(a, b)) {
                    const int g1 = a / n, g2 = a % n, h1 = b / n, h2 = b % n;
                    int simultaneous = 0, common = 0;
                    for (int k = 0; k < n; ++k) {
                        simultaneous += g->conj(k, g1) == g2 && g->conj(k, h1) == h2;
                        common += g->commute(k, g1) && g->commute(k, h1);
                    }
                    if (simultaneous) expect = common;
                }
                EXPECT_NEAR(std::abs(refs.phi_sum(a, b) - expect), 0.0, 1e-10);
            }
    }
}

TEST(ReferenceCharacters, WallCharacterIsPsiMinusGamma) {
    for (int q : {2, 3, 4, 5}) {
        SCOPED_TRACE(q);
        auto h = near_field(q, NearFieldKind::Field);
        auto w = wall_cocycle(h);
        auto qd = std::make_shared<const QuantumDouble>(w.left);
        auto f = fold(qd, qd, w.product);
        auto cf = near_field_pair(*qd, h);
        auto refs = reference_characters(f, cf.chargeon, cf.fluxion);
        auto general = boundary_character(w.u, w.phi);
        EXPECT_LT(max_abs_diff(general, refs.psi_sum - refs.gamma), 1e-8);
        EXPECT_LT(max_abs_diff(general, wall_character_closed_form(h, w)), 1e-8);
    }
}
