#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fqinc/pinned.hpp"
#include "fqinc/rng.hpp"

using namespace fqinc;

namespace {

std::vector<std::uint64_t> everything(std::uint64_t n) {
    std::vector<std::uint64_t> v(n);
    for (std::uint64_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

std::uint64_t idx2(const FieldCtx& f, std::uint32_t a, std::uint32_t b) { return coords_to_index(f, Coords{{a}, {b}}); }

}  // namespace

TEST(DistanceSet, Examples) {
    const auto f5 = FieldCtx::make(5, 1);
    EXPECT_EQ(pinned_distance_set(f5, 1, {0, 1, 2}, Coords{{0}}), (std::vector<FieldElem>{{0}, {1}, {4}}));
    EXPECT_EQ(pinned_distance_set(f5, 1, {3}, Coords{{3}}), (std::vector<FieldElem>{{0}}));
    const auto f4 = FieldCtx::make(2, 2);
    try {
        pinned_distance_set(f4, 1, {0}, Coords{{0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EvenCharacteristic);
    }
}

TEST(DistanceSet, FullPlaneHitsEveryValue) {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const auto f = FieldCtx::make(q, 1);
        const auto all = everything(q * q);
        for (auto y : all) EXPECT_EQ(pinned_distance_set(f, 2, all, index_to_coords(f, 2, y)).size(), q);
    }
}

TEST(DistanceSet, SizeIsBounded) {
    const auto f = FieldCtx::make(3, 2);
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
        const auto P = random_subset(rng, 81, 1 + uniform_below(rng, 81));
        const auto y = index_to_coords(f, 2, uniform_below(rng, 81));
        const auto D = pinned_distance_set(f, 2, P, y);
        EXPECT_LE(D.size(), std::min<std::size_t>(P.size(), 9));
        EXPECT_GE(D.size(), 1u);
    }
}

TEST(Precondition, MinimumSizes) {
    struct Row {
        std::uint64_t q;
        BigRational eps;
        double e;
    };
    for (const auto& r : std::vector<Row>{{5, {1, 4}, 0.25}, {7, {1, 4}, 0.25}, {5, {1, 2}, 0.5}, {7, {1, 2}, 0.5},
                                          {11, {1, 4}, 0.25}, {11, {1, 2}, 0.5}}) {
        const double thr = (1 / r.e) * std::sqrt((1 - r.e) * double(r.q) * double((r.q - 1) * (r.q - 1)));
        const auto m = min_pinned_size(r.q, 2, r.eps);
        EXPECT_EQ(m, std::uint64_t(std::ceil(thr))) << r.q << " " << r.e;
        EXPECT_TRUE(meets_pinned_precondition(r.q, 2, r.eps, m));
        EXPECT_FALSE(meets_pinned_precondition(r.q, 2, r.eps, m - 1));
    }
    EXPECT_EQ(min_pinned_size(5, 2, {1, 4}), 31u);
    EXPECT_EQ(min_pinned_size(7, 2, {1, 4}), 55u);
    EXPECT_EQ(min_pinned_size(7, 2, {1, 2}), 23u);
    EXPECT_THROW(meets_pinned_precondition(7, 2, 1, 10), Error);
}

TEST(PinnedGuarantee, UndersizedSetRejected) {
    PinnedConfig cfg{FieldCtx::make(7, 1), 2, {1, 2}, {0, 1, 2}};
    try {
        verify_pinned_corollary(cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
    }
    const auto r = verify_pinned_corollary(cfg, true);
    EXPECT_FALSE(r.precondition);
}

TEST(PinnedGuarantee, FullSpace) {
    for (std::uint32_t q : {5u, 7u, 11u}) {
        PinnedConfig cfg{FieldCtx::make(q, 1), 2, {1, 2}, everything(q * q)};
        const auto r = verify_pinned_corollary(cfg);
        EXPECT_EQ(r.average_pinned, BigRational(BigInt(q)));
        EXPECT_EQ(r.countQ, q * q);
        EXPECT_TRUE(r.pass());
    }
}

TEST(PinnedGuarantee, RandomDrawsAtThreshold) {
    const auto f7 = FieldCtx::make(7, 1);
    const BigRational eps(1, 2);
    const auto m = min_pinned_size(7, 2, eps);
    Rng rng(43);
    for (int t = 0; t < 100; ++t) {
        PinnedConfig cfg{f7, 2, eps, random_subset(rng, 49, m)};
        const auto r = verify_pinned_corollary(cfg);
        ASSERT_TRUE(r.average_holds);
        ASSERT_TRUE(r.rich_holds);
        std::uint64_t pins = 0;
        for (auto [sz, c] : r.histogram) pins += c;
        ASSERT_EQ(pins, m);
    }
}

TEST(PinnedGuarantee, RichThreshold) {
    // |Delta| >= (1 - sqrt(eps)) q with eps = 1/4, q = 7: |Delta| >= 3.5
    EXPECT_FALSE(is_rich_pin(7, {1, 4}, 3));
    EXPECT_TRUE(is_rich_pin(7, {1, 4}, 4));
    EXPECT_TRUE(is_rich_pin(7, {1, 4}, 9));
}

TEST(Chain, SinglePoint) {
    const auto f5 = FieldCtx::make(5, 1);
    const auto c = pinned_incidence_chain(f5, 2, {7});
    EXPECT_EQ(c.sizePtilde, 1u);
    EXPECT_EQ(c.incidences, 1u);
    EXPECT_TRUE(c.identity_holds);
    EXPECT_TRUE(c.bijective);
}

TEST(Chain, IdentityOnRandomSets) {
    const auto f5 = FieldCtx::make(5, 1);
    Rng rng(47);
    for (int t = 0; t < 50; ++t) {
        const auto P = random_subset(rng, 25, 10);
        const auto c = pinned_incidence_chain(f5, 2, P);
        EXPECT_EQ(c.incidences, 100u);
        EXPECT_TRUE(c.identity_holds);
        EXPECT_TRUE(c.bijective);
        EXPECT_TRUE(c.bound.holds);
    }
}

TEST(Chain, VertexOnAnotherParaboloid) {
    // 1^2 + 2^2 = 0 in F_5, so the vertex (p, 0) of V(p) also lies on V(p') for p' = p + (1, 2)
    const auto f5 = FieldCtx::make(5, 1);
    const std::vector<std::uint64_t> P{idx2(f5, 0, 0), idx2(f5, 1, 2)};
    const auto c = pinned_incidence_chain(f5, 2, P);
    EXPECT_EQ(c.shared_vertices, 2u);
    EXPECT_TRUE(c.bijective);
    EXPECT_TRUE(c.identity_holds);
    EXPECT_EQ(c.incidences, 4u);
    EXPECT_EQ(c.sizePtilde, 2u);  // both pins see only the distance 0

    const auto fam = VarietyFamily::paraboloid_family(f5, 2);
    const auto other = paraboloid_id(fam, index_to_coords(f5, 2, P[1]));
    EXPECT_TRUE(fam.contains(other, Point{{{0}, {0}, {0}}}));
}

TEST(Chain, NoSharedVertexWithoutIsotropicVectors) {
    for (std::uint32_t q : {3u, 7u}) {
        const auto f = FieldCtx::make(q, 1);
        const auto c = pinned_incidence_chain(f, 2, everything(q * q));
        EXPECT_EQ(c.shared_vertices, 0u) << q;
        EXPECT_TRUE(c.bijective);
        EXPECT_TRUE(c.identity_holds);
    }
    const auto f5 = FieldCtx::make(5, 1);
    const auto c = pinned_incidence_chain(f5, 2, everything(25));
    EXPECT_EQ(c.shared_vertices, 25u);
    EXPECT_TRUE(c.bijective);
    EXPECT_TRUE(c.identity_holds);
}
