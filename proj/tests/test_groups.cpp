#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "qdouble/error.hpp"
#include "qdouble/groups.hpp"
#include "qdouble/io.hpp"

using namespace qdouble;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidInput;
}

std::multiset<size_t> class_sizes(const GroupTable& g) {
    std::multiset<size_t> out;
    for (const auto& c : g.conjugacy().classes) out.insert(c.size());
    return out;
}

int find_label(const GroupTable& g, const std::string& label) {
    for (int a = 0; a < g.order(); ++a)
        if (g.element_label(a) == label) return a;
    return -1;
}

}  // namespace

TEST(FromCayley, TrivialGroup) {
    auto g = from_cayley({{0}});
    EXPECT_EQ(g->order(), 1);
    EXPECT_EQ(g->conjugacy().class_count(), 1);
}

TEST(FromCayley, RejectsNonAssociativeLoop) {
    // every element squares to the identity, so this Latin square cannot be a group of order 5
    std::vector<std::vector<int>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    EXPECT_EQ(kind_of([&] { from_cayley(loop); }), ErrorKind::NotAssociative);
}

TEST(FromCayley, RejectsMalformedTables) {
    EXPECT_EQ(kind_of([] { from_cayley({}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { from_cayley({{0, 1}, {1, 2}}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { from_cayley({{0, 1}, {1, 1}}); }), ErrorKind::NotLatinSquare);
    EXPECT_EQ(kind_of([] { from_cayley({{1, 0}, {0, 1}}); }), ErrorKind::NoIdentity);
}

TEST(FromCayley, PermutationClosureMatchesBuiltinS3) {
    auto table = oracle::permutation_closure({{1, 0, 2}, {1, 2, 0}}, 3);
    auto g = from_cayley(table, "S3");
    EXPECT_EQ(g->order(), 6);
    EXPECT_FALSE(g->is_abelian());
    EXPECT_EQ(class_sizes(*g), (std::multiset<size_t>{1, 2, 3}));
    EXPECT_EQ(class_sizes(*g), class_sizes(*symmetric(3)));
}

TEST(Builtins, OrdersAndSizeLimits) {
    EXPECT_EQ(cyclic(7)->order(), 7);
    EXPECT_EQ(symmetric(4)->order(), 24);
    EXPECT_EQ(alternating(5)->order(), 60);
    EXPECT_EQ(alternating(6)->order(), 360);
    EXPECT_EQ(direct_product(cyclic(2), symmetric(3))->order(), 12);
    EXPECT_EQ(kind_of([] { cyclic(0); }), ErrorKind::SizeExceeded);
    EXPECT_EQ(kind_of([] { symmetric(9); }), ErrorKind::SizeExceeded);
}

TEST(Builtins, S3ClassStructure) {
    auto g = symmetric(3);
    const auto& c = g->conjugacy();
    ASSERT_EQ(c.class_count(), 3);
    EXPECT_EQ(c.classes[0].size(), 1u);
    EXPECT_EQ(c.classes[1].size(), 3u);
    EXPECT_EQ(c.classes[2].size(), 2u);
    std::vector<int> z;
    for (int rep : c.reps) z.push_back(oracle::centralizer_order(*g, rep));
    EXPECT_EQ(z, (std::vector<int>{6, 2, 3}));
}

TEST(Builtins, A6DoubleTranspositionClass) {
    auto g = alternating(6);
    const int a = find_label(*g, "(1,2)(3,4)");
    ASSERT_GE(a, 0);
    EXPECT_EQ(g->conjugacy().classes[g->conjugacy().class_of[a]].size(), 45u);
    EXPECT_EQ(oracle::centralizer_order(*g, a), 8);
    EXPECT_EQ(centralizer_subgroup(g, a).order(), 8);
}

TEST(Builtins, ProductIndexing) {
    auto l = cyclic(3), r = symmetric(3);
    auto p = direct_product(l, r);
    ASSERT_NE(p->product(), nullptr);
    for (int a = 0; a < p->order(); ++a)
        for (int b = 0; b < p->order(); ++b) {
            const int a1 = a / 6, a2 = a % 6, b1 = b / 6, b2 = b % 6;
            EXPECT_EQ(p->mul(a, b), l->mul(a1, b1) * 6 + r->mul(a2, b2));
        }
}

// Conjugacy data of every catalog group against brute force.
TEST(Builtins, ConjugacyDataMatchesBruteForce) {
    for (const auto& uri : io::builtin_catalog(72)) {
        SCOPED_TRACE(uri);
        auto g = io::parse_group(uri);
        const auto& c = g->conjugacy();
        auto brute = oracle::classes(*g);
        std::set<std::set<int>> expect(brute.begin(), brute.end());
        std::set<std::set<int>> got;
        for (const auto& cls : c.classes) got.insert(std::set<int>(cls.begin(), cls.end()));
        EXPECT_EQ(got, expect);
        for (int k = 0; k < c.class_count(); ++k) {
            EXPECT_EQ(c.reps[k], *std::min_element(c.classes[k].begin(), c.classes[k].end()));
            EXPECT_EQ(static_cast<int>(c.centralizers[k].size()), oracle::centralizer_order(*g, c.reps[k]));
            for (int z : c.centralizers[k]) EXPECT_TRUE(g->commute(z, c.reps[k]));
        }
        for (int b = 0; b < g->order(); ++b) {
            EXPECT_EQ(g->conj(c.transversal[b], c.reps[c.class_of[b]]), b);
            EXPECT_EQ(g->mul(b, g->inv(b)), 0);
            int n = 1, x = b;
            while (x != 0) x = g->mul(x, b), ++n;
            EXPECT_EQ(g->element_order(b), n);
        }
    }
}

TEST(Subgroups, ConstructionAndErrors) {
    auto g = symmetric(3);
    const int r = find_label(*g, "(1,2,3)");
    ASSERT_GE(r, 0);
    auto z3 = generated_subgroup(g, {r});
    EXPECT_EQ(z3.order(), 3);
    EXPECT_TRUE(z3.contains(r));
    EXPECT_EQ(z3.as_group->order(), 3);
    EXPECT_TRUE(z3.as_group->is_abelian());
    EXPECT_EQ(whole_group(g).order(), 6);
    EXPECT_EQ(trivial_subgroup(g).order(), 1);
    EXPECT_EQ(kind_of([&] { make_subgroup(g, {0, r}); }), ErrorKind::NotSubgroup);
    EXPECT_EQ(kind_of([&] { make_subgroup(g, {r}); }), ErrorKind::NotSubgroup);
}

TEST(Subgroups, CosetsPartitionTheGroup) {
    auto g = symmetric(4);
    for (const auto& k : {trivial_subgroup(g), generated_subgroup(g, {1}), centralizer_subgroup(g, 1), whole_group(g)}) {
        auto reps = cosets(*g, k);
        ASSERT_EQ(static_cast<int>(reps.size()) * k.order(), g->order());
        EXPECT_EQ(reps[0], 0);
        std::set<int> seen;
        for (int x : reps)
            for (int m : k.members) seen.insert(g->mul(x, m));
        EXPECT_EQ(static_cast<int>(seen.size()), g->order());
    }
    auto s3 = symmetric(3);
    EXPECT_EQ(cosets(*s3, generated_subgroup(s3, {find_label(*s3, "(1,2,3)")})).size(), 2u);
}

TEST(NearFields, DistributivityPattern) {
    auto f9 = near_field(9, NearFieldKind::Field);
    EXPECT_NO_THROW(check_near_field_axioms(f9));
    EXPECT_TRUE(left_distributive(f9));
    EXPECT_TRUE(right_distributive(f9));
    EXPECT_TRUE(mul_commutative(f9));

    auto d9 = near_field(9, NearFieldKind::Dickson9);
    EXPECT_NO_THROW(check_near_field_axioms(d9));
    EXPECT_TRUE(left_distributive(d9));
    EXPECT_FALSE(right_distributive(d9));
    EXPECT_FALSE(mul_commutative(d9));

    EXPECT_EQ(kind_of([] { near_field(6, NearFieldKind::Field); }), ErrorKind::NotPrimePower);
    EXPECT_EQ(kind_of([] { near_field(5, NearFieldKind::Dickson9); }), ErrorKind::InvalidInput);
}

TEST(NearFields, FieldArithmeticIsAField) {
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        SCOPED_TRACE(q);
        auto h = near_field(q, NearFieldKind::Field);
        EXPECT_EQ(h.q, q);
        for (int x = 0; x < q; ++x) {
            // p * x = 0 in characteristic p
            int s = h.zero;
            for (int i = 0; i < h.p; ++i) s = h.add(s, x);
            EXPECT_EQ(s, h.zero);
            if (x != h.zero) EXPECT_EQ(h.mul(x, h.mul_inv(x)), h.one);
        }
    }
}

TEST(AffineGroups, SmallCases) {
    auto f2 = affine_group(near_field(2, NearFieldKind::Field));
    EXPECT_EQ(f2->order(), 2);
    EXPECT_TRUE(f2->is_abelian());

    auto f3 = affine_group(near_field(3, NearFieldKind::Field));
    EXPECT_EQ(f3->order(), 6);
    EXPECT_FALSE(f3->is_abelian());
    EXPECT_EQ(class_sizes(*f3), class_sizes(*symmetric(3)));

    // q(q-1), one class of nonzero translations of size q-1
    for (int q : {4, 5, 7}) {
        auto h = near_field(q, NearFieldKind::Field);
        auto g = affine_group(h);
        EXPECT_EQ(g->order(), q * (q - 1));
        const int t = affine_index(h, h.one, h.one);
        EXPECT_EQ(g->conjugacy().classes[g->conjugacy().class_of[t]].size(), static_cast<size_t>(q - 1));
        EXPECT_EQ(affine_translation(h, t), h.one);
        EXPECT_EQ(affine_scale(h, t), h.one);
    }
}

TEST(AffineGroups, Dickson) {
    auto h = near_field(9, NearFieldKind::Dickson9);
    auto g = affine_group(h);
    EXPECT_EQ(g->order(), 72);
    const int a = affine_index(h, h.one, h.one);
    EXPECT_EQ(g->conjugacy().classes[g->conjugacy().class_of[a]].size(), 8u);
    auto z = centralizer_subgroup(g, a);
    EXPECT_EQ(z.order(), 9);
    EXPECT_TRUE(z.as_group->is_abelian());
    for (int x = 1; x < 9; ++x) EXPECT_EQ(z.as_group->element_order(x), 3);
}
