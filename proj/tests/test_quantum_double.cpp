#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qdouble/error.hpp"
#include "qdouble/io.hpp"
#include "qdouble/quantum_double.hpp"

using namespace qdouble;

namespace {

// Anyon indices of the S3 double in the A..H naming.
enum S3 { A, B, C, D, E, F, G, H };

int anyon_count_oracle(const GroupPtr& g) {
    int n = 0;
    for (const auto& cls : oracle::classes(*g)) {
        auto z = centralizer_subgroup(g, *cls.begin());
        n += static_cast<int>(oracle::classes(*z.as_group).size());
    }
    return n;
}

std::vector<int> fusion_row(const FusionTensor& n, int x, int y) {
    std::vector<int> out;
    for (int z = 0; z < n.size; ++z) out.push_back(n(x, y, z));
    return out;
}

}  // namespace

TEST(Anyons, Counts) {
    EXPECT_EQ(QuantumDouble(cyclic(2)).size(), 4);
    EXPECT_EQ(QuantumDouble(symmetric(3)).size(), 8);
    EXPECT_EQ(QuantumDouble(alternating(4)).size(), 14);
    EXPECT_EQ(QuantumDouble(symmetric(4)).size(), 21);
    auto a6 = alternating(6);
    EXPECT_EQ(QuantumDouble(a6).size(), anyon_count_oracle(a6));
    EXPECT_EQ(QuantumDouble(a6).size(), 44);
    for (const auto& uri : io::builtin_catalog(24)) {
        auto g = io::parse_group(uri);
        EXPECT_EQ(QuantumDouble(g).size(), anyon_count_oracle(g)) << uri;
    }
}

TEST(Anyons, S3Table) {
    QuantumDouble qd(symmetric(3));
    const std::vector<std::string> labels = {"e:0", "e:1", "e:2", "(2,3):0", "(2,3):1", "(1,2,3):0", "(1,2,3):1",
                                             "(1,2,3):2"};
    const std::vector<int> dims = {1, 1, 2, 3, 3, 2, 2, 2};
    const std::vector<AnyonKind> kinds = {AnyonKind::Vacuum,  AnyonKind::Chargeon, AnyonKind::Chargeon,
                                          AnyonKind::Fluxion, AnyonKind::Mixed,    AnyonKind::Fluxion,
                                          AnyonKind::Mixed,   AnyonKind::Mixed};
    for (int x = 0; x < 8; ++x) {
        EXPECT_EQ(qd.label(x), labels[x]);
        EXPECT_EQ(qd.anyon(x).dim, dims[x]);
        EXPECT_EQ(qd.kind(x), kinds[x]);
        EXPECT_EQ(qd.dual(x), x);
    }
    EXPECT_EQ(qd.op(G), H);
    EXPECT_EQ(qd.op(H), G);
    EXPECT_EQ(qd.op(A), A);
    EXPECT_EQ(qd.op(C), C);
}

TEST(Anyons, Z3DualsPairUp) {
    QuantumDouble qd(cyclic(3));
    int fixed = 0;
    for (int x = 0; x < qd.size(); ++x) {
        EXPECT_EQ(qd.dual(qd.dual(x)), x);
        const auto& a = qd.anyon(x);
        const auto& d = qd.anyon(qd.dual(x));
        EXPECT_EQ(d.class_rep, qd.group()->inv(a.class_rep));
        fixed += qd.dual(x) == x;
    }
    EXPECT_EQ(fixed, 1);
}

TEST(AnyonCharacter, BasicValues) {
    QuantumDouble qd(symmetric(3));
    const auto& g = *qd.group();
    for (int x = 0; x < qd.size(); ++x) {
        auto chi = qd.character(x);
        cd unit = 0.0;
        for (int h = 0; h < g.order(); ++h) unit += chi(0, h);
        EXPECT_NEAR(std::abs(unit - static_cast<double>(qd.anyon(x).dim)), 0.0, 1e-12);
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                if (!g.commute(a, b)) EXPECT_EQ(chi(a, b), cd(0.0));
    }
    auto chi_f = qd.character(F);
    for (int h = 0; h < g.order(); ++h) {
        const bool in_class = g.conjugacy().class_of[h] == qd.anyon(F).class_index;
        EXPECT_NEAR(std::abs(chi_f(0, h) - (in_class ? 1.0 : 0.0)), 0.0, 1e-12);
    }
}

TEST(AnyonCharacter, SimultaneousConjugationInvariance) {
    QuantumDouble qd(symmetric(4));
    const auto& g = *qd.group();
    for (int x = 0; x < qd.size(); x += 3) {
        auto chi = qd.character(x);
        for (int k = 0; k < g.order(); k += 5)
            for (int a = 0; a < g.order(); ++a)
                for (int b = 0; b < g.order(); ++b)
                    EXPECT_NEAR(std::abs(chi(g.conj(k, a), g.conj(k, b)) - chi(a, b)), 0.0, 1e-12);
    }
}

TEST(AnyonCharacter, TransversalIndependence) {
    std::mt19937_64 rng(11);
    for (const auto& uri : io::builtin_catalog(24)) {
        SCOPED_TRACE(uri);
        QuantumDouble qd(io::parse_group(uri));
        for (int x = 0; x < qd.size(); ++x) {
            auto t = oracle::random_transversal(*qd.group(), qd.anyon(x).class_rep, rng);
            EXPECT_LT(max_abs_diff(qd.character(x), qd.character_with_transversal(x, t)), 1e-12);
        }
    }
}

TEST(DGDecompose, OrthonormalityRegularAndLinearity) {
    QuantumDouble qd(symmetric(3));
    for (int x = 0; x < qd.size(); ++x) {
        auto m = dg_decompose(qd, qd.character(x));
        for (int y = 0; y < qd.size(); ++y) EXPECT_EQ(m[y], x == y ? 1 : 0);
    }
    std::vector<int> dims;
    for (const auto& a : qd.anyons()) dims.push_back(a.dim);
    EXPECT_EQ(dg_decompose(qd, regular_dg_character(qd.group())), dims);

    auto mixed = qd.character(C) + 2.0 * qd.character(F);
    auto m = dg_decompose(qd, mixed);
    EXPECT_EQ(m, (std::vector<int>{0, 0, 1, 0, 0, 2, 0, 0}));
    EXPECT_LT(max_abs_diff(dg_combine(qd, m), mixed), 1e-12);

    try {
        dg_decompose(qd, 0.5 * qd.character(D));
        ADD_FAILURE() << "expected NonIntegerMultiplicity";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonIntegerMultiplicity);
    }
}

TEST(SMatrix, Z2ClosedForm) {
    QuantumDouble qd(cyclic(2));
    auto s = s_matrix(qd);
    // anyons (a, chi_j): S = 1/2 (-1)^{a k + b j}
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            const int a = qd.anyon(x).class_rep, j = qd.anyon(x).irrep;
            const int b = qd.anyon(y).class_rep, k = qd.anyon(y).irrep;
            const double expect = ((a * k + b * j) % 2 ? -0.5 : 0.5);
            EXPECT_NEAR(std::abs(s(x, y) - expect), 0.0, 1e-12);
        }
}

TEST(SMatrix, S3Entries) {
    QuantumDouble qd(symmetric(3));
    auto s = s_matrix(qd);
    // the first rows are fixed by dimensions and centralizer traces
    const double first[8] = {1, 1, 2, 3, 3, 2, 2, 2};
    const double chargeon_c[8] = {2, 2, 4, 0, 0, -2, -2, -2};
    for (int y = 0; y < 8; ++y) {
        EXPECT_NEAR(std::abs(6.0 * s(A, y) - first[y]), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(6.0 * s(C, y) - chargeon_c[y]), 0.0, 1e-12);
    }
    EXPECT_NEAR(std::abs(6.0 * s(D, D) - 3.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(6.0 * s(D, E) + 3.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(6.0 * s(F, F) - 4.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(6.0 * s(F, G) + 2.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(6.0 * s(G, G) + 2.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(6.0 * s(G, H) - 4.0), 0.0, 1e-12);
}

TEST(SMatrix, MatchesClassSumOracle) {
    for (const auto& uri : io::builtin_catalog(24)) {
        SCOPED_TRACE(uri);
        QuantumDouble qd(io::parse_group(uri));
        EXPECT_LT(oracle::max_abs(s_matrix(qd) - oracle::s_matrix(qd)), 1e-12);
    }
}

TEST(SMatrix, ModularProperties) {
    for (const auto& uri : io::builtin_catalog(72)) {
        SCOPED_TRACE(uri);
        QuantumDouble qd(io::parse_group(uri));
        const int n = qd.size();
        auto s = s_matrix(qd);
        const auto id = Eigen::MatrixXcd::Identity(n, n);
        EXPECT_LT(oracle::max_abs(s - s.transpose()), 1e-10);
        EXPECT_LT(oracle::max_abs(s * s.adjoint() - id), 1e-8);
        Eigen::MatrixXcd dual = Eigen::MatrixXcd::Zero(n, n);
        for (int x = 0; x < n; ++x) dual(x, qd.dual(x)) = 1.0;
        const Eigen::MatrixXcd s2 = s * s;
        EXPECT_LT(oracle::max_abs(s2 - dual), 1e-8);
        EXPECT_LT(oracle::max_abs(s2 * s2 - id), 1e-8);
        for (int x = 0; x < n; ++x) {
            EXPECT_GT(s(0, x).real(), 0.0);
            EXPECT_NEAR(std::abs(s(0, x) - static_cast<double>(qd.anyon(x).dim) / qd.group()->order()), 0.0, 1e-12);
        }
    }
}

TEST(TVector, TwistsAndOrders) {
    QuantumDouble s3(symmetric(3));
    auto t = t_vector(s3);
    EXPECT_NEAR(std::abs(t(G) - std::polar(1.0, 2 * M_PI / 3)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(t(H) - std::polar(1.0, -2 * M_PI / 3)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(t(E) + 1.0), 0.0, 1e-12);
    for (const auto& uri : io::builtin_catalog(72)) {
        SCOPED_TRACE(uri);
        QuantumDouble qd(io::parse_group(uri));
        auto tv = t_vector(qd);
        for (int x = 0; x < qd.size(); ++x) {
            EXPECT_NEAR(std::abs(tv(x)), 1.0, 1e-12);
            if (qd.anyon(x).class_rep == 0) EXPECT_NEAR(std::abs(tv(x) - 1.0), 0.0, 1e-12);
            const int ord = qd.group()->element_order(qd.anyon(x).class_rep);
            EXPECT_NEAR(std::abs(std::pow(tv(x), ord) - 1.0), 0.0, 1e-9);
        }
    }
}

TEST(TVector, STRelationMeasured) {
    for (auto g : {cyclic(2), symmetric(3), alternating(4)}) {
        QuantumDouble qd(g);
        auto r = measure_st_relation(s_matrix(qd), t_vector(qd));
        EXPECT_LT(r.residual, 1e-9);
        EXPECT_NEAR(std::abs(r.phase), 1.0, 1e-9);
    }
}

TEST(Fusion, S3Rows) {
    QuantumDouble qd(symmetric(3));
    auto n = fusion_verlinde(qd, s_matrix(qd));
    EXPECT_LT(n.max_residual, 1e-6);
    EXPECT_EQ(fusion_row(n, D, D), (std::vector<int>{1, 0, 1, 0, 0, 1, 1, 1}));
    EXPECT_EQ(fusion_row(n, C, C), (std::vector<int>{1, 1, 1, 0, 0, 0, 0, 0}));
    EXPECT_EQ(fusion_row(n, C, F), (std::vector<int>{0, 0, 0, 0, 0, 0, 1, 1}));
}

TEST(Fusion, AxiomsAcrossCatalog) {
    for (const auto& uri : io::builtin_catalog(24)) {
        SCOPED_TRACE(uri);
        QuantumDouble qd(io::parse_group(uri));
        auto n = fusion_verlinde(qd, s_matrix(qd));
        EXPECT_LT(n.max_residual, 1e-6);
        for (int x = 0; x < n.size; ++x)
            for (int y = 0; y < n.size; ++y) {
                long dim = 0;
                for (int z = 0; z < n.size; ++z) {
                    EXPECT_GE(n(x, y, z), 0);
                    EXPECT_EQ(n(x, y, z), n(y, x, z));
                    dim += static_cast<long>(n(x, y, z)) * qd.anyon(z).dim;
                }
                EXPECT_EQ(dim, static_cast<long>(qd.anyon(x).dim) * qd.anyon(y).dim);
                EXPECT_EQ(n(x, 0, y), x == y ? 1 : 0);
                EXPECT_EQ(n(x, y, 0), y == qd.dual(x) ? 1 : 0);
            }
    }
}

TEST(Fusion, VerlindeEqualsTensorCharacterDecomposition) {
    for (auto g : {cyclic(2), symmetric(3), direct_product(cyclic(2), cyclic(2))}) {
        QuantumDouble qd(g);
        auto n = fusion_verlinde(qd, s_matrix(qd));
        for (int x = 0; x < qd.size(); ++x)
            for (int y = 0; y < qd.size(); ++y) {
                auto prod = tensor_character(qd.character(x), qd.character(y));
                cd unit = 0.0;
                for (int h = 0; h < g->order(); ++h) unit += prod(0, h);
                EXPECT_NEAR(std::abs(unit - static_cast<double>(qd.anyon(x).dim * qd.anyon(y).dim)), 0.0, 1e-12);
                EXPECT_EQ(dg_decompose(qd, prod), fusion_row(n, x, y));
            }
        EXPECT_LT(max_abs_diff(tensor_character(qd.character(0), qd.character(1)), qd.character(1)), 1e-12);
    }
}

TEST(Fusion, TensorCharacterGroupMismatch) {
    QuantumDouble a(cyclic(2)), b(cyclic(3));
    try {
        tensor_character(a.character(1), b.character(1));
        ADD_FAILURE() << "expected GroupMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GroupMismatch);
    }
}

TEST(ProductRoute, MatchesGenericRoute) {
    auto g = direct_product(symmetric(3), cyclic(2));
    QuantumDouble fast(g), slow(g, QuantumDouble::Route::Generic);
    ASSERT_EQ(fast.size(), slow.size());
    std::vector<char> used(slow.size(), 0);
    for (int x = 0; x < fast.size(); ++x) {
        auto chi = fast.character(x);
        int match = -1;
        for (int y = 0; y < slow.size() && match < 0; ++y)
            if (!used[y] && max_abs_diff(chi, slow.character(y)) < 1e-9) match = y;
        ASSERT_GE(match, 0) << fast.label(x);
        used[match] = 1;
    }
}
