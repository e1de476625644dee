#include "nilgen/baer_group.hpp"
#include "nilgen/error.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

namespace nilgen {
namespace {

using testing::random_system;
using testing::vec;

const Field F3(3);

NilGroup plane_group() { return NilGroup(symplectic_plane(F3, 1, vec({1}))); }

TEST(NilGroup, ProductExample) {
    const NilGroup g = plane_group();
    const GroupElement xy = g_mul(g, g.generator(0), g.generator(1));
    EXPECT_EQ(xy, (GroupElement{vec({1, 1}), vec({2})}));
}

TEST(NilGroup, IdentityAndInverse) {
    std::mt19937_64 rng(1);
    const NilGroup g(random_system(rng, 5, 2, 4));
    for (int i = 0; i < 50; ++i) {
        const GroupElement x = g.random_element(rng);
        EXPECT_EQ(g.mul(x, g.inverse(x)), g.identity());
        EXPECT_EQ(g.mul(x, g.identity()), x);
        EXPECT_EQ(g.mul(g.identity(), x), x);
    }
}

TEST(NilGroup, ProductsDifferByBeta) {
    std::mt19937_64 rng(2);
    const NilGroup g(random_system(rng, 3, 2, 4));
    for (int i = 0; i < 50; ++i) {
        const GroupElement x = g.random_element(rng), y = g.random_element(rng);
        const GroupElement xy = g.mul(x, y), yx = g.mul(y, x);
        EXPECT_EQ(xy.v, yx.v);
        EXPECT_EQ(sub(g.field(), xy.w, yx.w), g.system().eval(x.v, y.v));
    }
    const NilGroup flat(AltSystem(F3, 1, 3));
    const GroupElement a = flat.random_element(rng), b = flat.random_element(rng);
    EXPECT_EQ(flat.mul(a, b), flat.mul(b, a));
}

TEST(NilGroup, CommutatorExamples) {
    const NilGroup g = plane_group();
    const GroupElement x = g.generator(0), y = g.generator(1);
    EXPECT_EQ(g_comm(g, x, y), (GroupElement{vec({0, 0}), vec({1})}));
    EXPECT_EQ(g_comm(g, x, x), g.identity());
    EXPECT_EQ(g.mul(g_comm(g, x, y), g_comm(g, y, x)), g.identity());
}

TEST(NilGroup, CommutatorIsBeta) {
    std::mt19937_64 rng(3);
    const NilGroup g(random_system(rng, 5, 2, 5));
    for (int i = 0; i < 100; ++i) {
        const GroupElement x = g.random_element(rng), y = g.random_element(rng);
        const GroupElement c = g.comm(x, y);
        EXPECT_TRUE(is_zero(c.v));
        EXPECT_EQ(c.w, eval_beta(g.system(), x.v, y.v));
    }
}

TEST(NilGroup, PowerExamples) {
    const NilGroup g = plane_group();
    const GroupElement x{vec({1, 0}), vec({1})};
    EXPECT_EQ(g_pow(g, x, 3), g.identity());
    EXPECT_EQ(g_pow(g, x, 2), (GroupElement{vec({2, 0}), vec({2})}));
    EXPECT_EQ(g_pow(g, x, 0), g.identity());
    EXPECT_EQ(g_pow(g, x, -1), g.inverse(x));
}

TEST(NilGroup, ShapeErrors) {
    const NilGroup g = plane_group();
    EXPECT_THROW(g.mul(g.generator(0), GroupElement{vec({1}), vec({0})}), Error);
    EXPECT_THROW(g.element(vec({1, 5}), vec({0})), Error);
}

TEST(Functor, RoundTrip) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const AltSystem s = random_system(rng, i % 2 ? 5 : 3, 1 + i % 2, i % 6);
        EXPECT_EQ(system_from_group(group_from_system(s)), s);
    }
}

TEST(GroupLaws, ExhaustiveSmallAndSampledLarge) {
    const LawCheck small = check_group_laws(plane_group(), 100, 0, 81);
    EXPECT_TRUE(small.exhaustive);
    EXPECT_EQ(small.triples, 9u * 9u * 9u);
    EXPECT_EQ(small.central_checks, 9u);
    EXPECT_EQ(small.failures, 0u);
    std::mt19937_64 rng(5);
    const LawCheck big = check_group_laws(NilGroup(random_system(rng, 5, 2, 5)), 1000, 7);
    EXPECT_FALSE(big.exhaustive);
    EXPECT_EQ(big.triples, 1000u);
    EXPECT_EQ(big.failures, 0u);
}

TEST(StructuralSubgroups, ReferenceExamples) {
    const SubgroupReport sp = structural_subgroups(plane_group());
    EXPECT_TRUE(sp.center_vspan.empty());
    EXPECT_EQ(sp.derived_pspan.size(), 1u);
    EXPECT_TRUE(sp.sigma1);
    EXPECT_TRUE(sp.sigma2);
    EXPECT_TRUE(sp.extraspecial);

    const SubgroupReport zero = structural_subgroups(NilGroup(AltSystem(F3, 1, 3)));
    EXPECT_EQ(zero.center_vspan.size(), 3u);
    EXPECT_TRUE(zero.derived_pspan.empty());
    EXPECT_FALSE(zero.sigma2);
    EXPECT_TRUE(zero.in_k);

    const SubgroupReport partial = structural_subgroups(NilGroup(symplectic_plane(F3, 2, vec({1, 0}))));
    EXPECT_EQ(partial.derived_pspan.size(), 1u);
    EXPECT_FALSE(partial.sigma2);
    EXPECT_FALSE(partial.extraspecial);
}

TEST(LiftEmbedding, PlaneIntoTwoPlanes) {
    const AltSystem p = symplectic_plane(F3, 1, vec({1}));
    const AltSystem two = orthogonal_sum(p, p);
    const NilGroup gp(p), gt(two);
    const GroupHom h = lift_embedding(prefix_embedding(p, two), gp, gt);
    EXPECT_EQ(h.verified_pairs(), 16u);
    for (std::size_t i = 0; i < 1; ++i) EXPECT_EQ(h(gp.constant(i)), gt.constant(i));
    std::mt19937_64 rng(6);
    for (int i = 0; i < 50; ++i) {
        const GroupElement x = gp.random_element(rng), y = gp.random_element(rng);
        EXPECT_EQ(h(gp.mul(x, y)), gt.mul(h(x), h(y)));
        EXPECT_EQ(h(x).v.size(), 4u);
    }
    const GroupHom id = lift_embedding(identity_embedding(p), gp, gp);
    const GroupElement x = gp.random_element(rng);
    EXPECT_EQ(id(x), x);
}

TEST(LiftEmbedding, RejectsNonEmbedding) {
    const AltSystem p = symplectic_plane(F3, 1, vec({1}));
    const AltSystem z(F3, 1, 2);
    try {
        lift_embedding(Embedding{z, p, FMatrix::identity(F3, 2)}, NilGroup(z), NilGroup(p));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BadEmbedding);
    }
}

} // namespace
} // namespace nilgen
