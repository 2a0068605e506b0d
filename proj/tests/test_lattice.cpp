#include <gtest/gtest.h>

#include "qdouble/condensation.hpp"
#include "qdouble/error.hpp"
#include "qdouble/lattice.hpp"

using namespace qdouble;

namespace {

std::vector<cd> bilinear_table() {
    std::vector<cd> t(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t[a * 4 + b] = ((a % 2) * (b / 2)) ? -1.0 : 1.0;
    return t;
}

BoundarySpec plain(const Subgroup& k) { return {k, trivial_cocycle(k.as_group)}; }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidInput;
}

void expect_suite_passes(const RelationSuiteReport& r) {
    EXPECT_TRUE(r.passed());
    EXPECT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) {
        EXPECT_TRUE(c.passed) << c.name << " residual " << c.residual;
        EXPECT_GE(c.states, 16) << c.name;
        EXPECT_GT(c.evaluations, 0) << c.name;
    }
    EXPECT_LT(r.worst(), 1e-8);
}

}  // namespace

TEST(Patch, SizesAndCap) {
    auto z2 = cyclic(2);
    auto p = build_patch(z2, 3, 2);
    EXPECT_EQ(p->edge_count(), 17);
    EXPECT_LE(p->dimension(), 1LL << 20);
    EXPECT_EQ(p->internal_vertices().size(), 2u);
    EXPECT_EQ(p->faces().size(), 6u);

    auto s3 = symmetric(3);
    auto m = minimal_boundary_patch(s3, plain(whole_group(s3)));
    EXPECT_EQ(m->edge_count(), 7);
    EXPECT_EQ(m->dimension(), 279936);
    EXPECT_EQ(kind_of([&] { build_patch(s3, 3, 3); }), ErrorKind::DimensionCap);
}

TEST(Patch, WallMarkingAlternates) {
    auto z2 = cyclic(2);
    auto p = build_patch(z2, 4, 2, plain(whole_group(z2)));
    std::vector<EdgeMark> wall;
    for (int x = 0; x < 4; ++x) wall.push_back(p->mark(p->edge_index(h_edge(x, 0))));
    const int s0 = p->s0().vertex.x;
    EXPECT_EQ(wall[s0], EdgeMark::Solid);
    for (int x = 0; x + 1 < 4; ++x) EXPECT_NE(wall[x], wall[x + 1]);
    EXPECT_EQ(p->mark(p->edge_index(v_edge(1, 0))), EdgeMark::Bulk);
}

TEST(Patch, BoundaryEdgesCarrySubgroup) {
    auto s3 = symmetric(3);
    int r = -1;
    for (int a = 0; a < 6 && r < 0; ++a)
        if (s3->element_order(a) == 3) r = a;
    auto p = minimal_boundary_patch(s3, plain(generated_subgroup(s3, {r})));
    for (int e = 0; e < p->edge_count(); ++e) EXPECT_EQ(p->dim(e), p->is_wall_edge(e) ? 3 : 6);
    int t = -1;
    for (int a = 0; a < 6 && t < 0; ++a)
        if (s3->element_order(a) == 2) t = a;
    std::vector<int> config(p->edge_count(), 0);
    for (int e = 0; e < p->edge_count(); ++e)
        if (p->is_wall_edge(e)) config[e] = t;
    EXPECT_EQ(kind_of([&] { p->index_of(config); }), ErrorKind::NotInSubgroup);
}

TEST(GroundState, FixedByEveryProjector) {
    auto z2 = cyclic(2);
    auto p = build_patch(z2, 3, 2);
    auto psi = ground_state(p, 3);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    for (const auto& t : hamiltonian_terms(p)) {
        auto out = t.projector.apply(psi.amplitudes);
        EXPECT_LT((out - psi.amplitudes).norm(), 1e-8) << t.name;
    }
}

// With rim vertex terms the disk ground state is unique: the uniform
// superposition over flat Z2 configurations.
TEST(GroundState, UniqueOnDiskMatchesFlatConfigurations) {
    auto z2 = cyclic(2);
    PatchOptions opt;
    opt.rim_vertex_terms = true;
    auto p = build_patch(z2, 3, 2, std::nullopt, opt);
    Eigen::VectorXcd flat = Eigen::VectorXcd::Zero(p->dimension());
    for (long long i = 0; i < p->dimension(); ++i) {
        auto c = p->configuration(i);
        bool ok = true;
        for (int x = 0; x < 3 && ok; ++x)
            for (int y = 0; y < 2 && ok; ++y) {
                const int s = c[p->edge_index(h_edge(x, y))] ^ c[p->edge_index(v_edge(x + 1, y))] ^
                              c[p->edge_index(h_edge(x, y + 1))] ^ c[p->edge_index(v_edge(x, y))];
                ok = s == 0;
            }
        if (ok) flat(i) = 1.0;
    }
    flat.normalize();
    auto a = ground_state(p, 1);
    auto b = ground_state(p, 2);
    EXPECT_NEAR(std::abs(a.inner(b)), 1.0, 1e-8);
    EXPECT_NEAR(std::abs(flat.dot(a.amplitudes)), 1.0, 1e-8);
}

TEST(LocalOps, VertexGroupLawAndBoundaryPhases) {
    auto k4 = direct_product(cyclic(2), cyclic(2));
    auto phi = validate_cocycle(k4, bilinear_table());
    auto p = minimal_boundary_patch(k4, {whole_group(k4), phi});
    auto psi = random_state(p, 9);
    const GridPoint v = p->s0().vertex;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            auto lhs = boundary_vertex_op(p, v, k).apply(boundary_vertex_op(p, v, l).apply(psi.amplitudes));
            auto rhs = boundary_vertex_op(p, v, k4->mul(k, l)).apply(psi.amplitudes);
            EXPECT_LT((lhs - rhs).norm(), 1e-10);
        }
    auto s3 = symmetric(3);
    auto q = minimal_boundary_patch(s3, plain(whole_group(s3)));
    auto chi = random_state(q, 4);
    const GridPoint w = q->s1().vertex;
    for (int g = 0; g < 6; ++g)
        for (int h = 0; h < 6; ++h) {
            auto lhs = vertex_op(q, w, g).apply(face_op(q, q->s1(), h).apply(chi.amplitudes));
            auto rhs = face_op(q, q->s1(), s3->conj(g, h)).apply(vertex_op(q, w, g).apply(chi.amplitudes));
            EXPECT_LT((lhs - rhs).norm(), 1e-10);
        }
}

TEST(Ribbons, ResolutionOfIdentityAndGroundExpectation) {
    auto z2 = cyclic(2);
    auto p = build_patch(z2, 3, 2);
    auto ribbon = default_ribbon(*p);
    auto rr = resolve_ribbon(*p, ribbon);
    EXPECT_EQ(rr.start, p->s0());
    EXPECT_EQ(rr.end, p->s1());
    auto psi = random_state(p, 5);
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(p->dimension());
    for (int g = 0; g < 2; ++g) sum += ribbon_op(p, ribbon, 0, g).apply(psi.amplitudes);
    EXPECT_LT((sum - psi.amplitudes).norm(), 1e-12);

    auto ground = ground_state(p, 8);
    for (int h = 0; h < 2; ++h)
        for (int g = 0; g < 2; ++g) {
            const cd ev = ground.amplitudes.dot(ribbon_op(p, ribbon, h, g).apply(ground.amplitudes));
            EXPECT_NEAR(std::abs(ev - (h == 0 ? 0.5 : 0.0)), 0.0, 1e-10);
        }
}

TEST(Ribbons, Errors) {
    auto z2 = cyclic(2);
    auto tk = trivial_subgroup(z2);
    auto p = build_patch(z2, 2, 2, plain(tk));
    auto ribbon = default_ribbon(*p);
    EXPECT_EQ(kind_of([&] { boundary_ribbon_op(p, ribbon, 1, 0); }), ErrorKind::NotInSubgroup);
    EXPECT_EQ(kind_of([&] { ribbon_op(p, ribbon, 0, 0); }), ErrorKind::InvalidRibbon);
    auto bulk = build_patch(z2, 3, 2);
    EXPECT_EQ(kind_of([&] { boundary_ribbon_op(bulk, default_ribbon(*bulk), 0, 0); }), ErrorKind::InvalidRibbon);
    RibbonSpec broken = default_ribbon(*bulk);
    broken.steps.insert(broken.steps.begin(), RibbonStep{StepKind::Direct, h_edge(2, 2)});
    EXPECT_EQ(kind_of([&] { resolve_ribbon(*bulk, broken); }), ErrorKind::InvalidRibbon);
}

TEST(RelationSuite, Z2BulkEveryState) {
    auto p = build_patch(cyclic(2), 3, 2);
    RelationSuiteOptions opt;
    opt.every_state = true;
    expect_suite_passes(run_relation_suite(p, default_ribbon(*p), opt));
}

TEST(RelationSuite, Z2Walls) {
    auto z2 = cyclic(2);
    for (const auto& k : {trivial_subgroup(z2), whole_group(z2)}) {
        auto p = build_patch(z2, 2, 2, plain(k));
        expect_suite_passes(run_relation_suite(p, default_ribbon(*p)));
    }
}

TEST(RelationSuite, KleinBilinearWall) {
    auto k4 = direct_product(cyclic(2), cyclic(2));
    auto p = minimal_boundary_patch(k4, {whole_group(k4), validate_cocycle(k4, bilinear_table())});
    expect_suite_passes(run_relation_suite(p, default_ribbon(*p)));
}

TEST(RelationSuite, PathIndependence) {
    auto p = path_independence_patch(cyclic(2));
    EXPECT_EQ(p->edge_count(), 18);
    auto [a, b] = path_independence_ribbons();
    EXPECT_EQ(resolve_ribbon(*p, a).end, resolve_ribbon(*p, b).end);
    auto c = check_path_independence(p, a, b);
    EXPECT_TRUE(c.passed);
    EXPECT_GE(c.states, 16);
    EXPECT_LT(c.residual, 1e-8);
}

TEST(CrossOracle, Z2Walls) {
    auto z2 = cyclic(2);
    for (const auto& k : {trivial_subgroup(z2), whole_group(z2)}) {
        auto p = build_patch(z2, 2, 2, plain(k));
        auto lat = lattice_boundary_character(p, default_ribbon(*p));
        auto alg = boundary_character(k, trivial_cocycle(k.as_group));
        EXPECT_LT(max_abs_diff(lat, alg), 1e-6);
    }
}

TEST(CrossOracle, KleinBilinearDecomposesToFourAnyons) {
    auto k4 = direct_product(cyclic(2), cyclic(2));
    auto phi = validate_cocycle(k4, bilinear_table());
    auto p = minimal_boundary_patch(k4, {whole_group(k4), phi});
    auto lat = lattice_boundary_character(p, default_ribbon(*p));
    EXPECT_LT(max_abs_diff(lat, boundary_character(whole_group(k4), phi)), 1e-6);
    QuantumDouble qd(k4);
    auto m = dg_decompose(qd, lat);
    int condensed = 0;
    for (int x : m) {
        EXPECT_LE(x, 1);
        condensed += x;
    }
    EXPECT_EQ(condensed, 4);
}

TEST(CrossOracle, S3OrderThreeWall) {
    auto s3 = symmetric(3);
    int r = -1;
    for (int a = 0; a < 6 && r < 0; ++a)
        if (s3->element_order(a) == 3) r = a;
    auto k = generated_subgroup(s3, {r});
    auto p = minimal_boundary_patch(s3, plain(k));
    auto lat = lattice_boundary_character(p, default_ribbon(*p));
    EXPECT_LT(max_abs_diff(lat, boundary_character(k, trivial_cocycle(k.as_group))), 1e-6);
}
