#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "fqinc/rng.hpp"
#include "fqinc/variety.hpp"

using namespace fqinc;

namespace {

VarietyFamily family(const FieldCtx& f, std::size_t n, std::size_t d, const std::vector<std::string>& h,
                     std::vector<std::vector<std::uint64_t>> b) {
    std::vector<Poly> hs;
    for (const auto& s : h) hs.push_back(Poly::parse(f, n, s));
    return VarietyFamily::make(f, n, d, std::move(hs), std::move(b));
}

std::vector<std::uint64_t> ones(std::size_t n) { return std::vector<std::uint64_t>(n, 1); }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::ParseError;
}

}  // namespace

TEST(Poly, ParseAndEvaluate) {
    const auto f5 = FieldCtx::make(5, 1);
    const Poly p = Poly::parse(f5, 2, "2*x1^2*x2 + x2 - 1");
    // 2*9*2 + 2 - 1 = 37 = 2 mod 5
    EXPECT_EQ(p.eval(f5, Coords{{3}, {2}}), FieldElem{2});
    EXPECT_EQ(p.total_degree(), 3u);
    EXPECT_EQ(Poly::parse(f5, 2, "0").eval(f5, Coords{{1}, {1}}), FieldElem{0});
    EXPECT_EQ(kind_of([&] { Poly::parse(f5, 2, "x3"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([&] { Poly::parse(f5, 2, "x1^"); }), ErrorKind::ParseError);
}

TEST(Family, LinearEvaluation) {
    const auto f3 = FieldCtx::make(3, 1);
    const auto fam = VarietyFamily::flat_family(f3, 1, 1);
    EXPECT_EQ(fam.f_eval(1, Coords{{1}, {2}}, Coords{{2}}), FieldElem{1});
    EXPECT_EQ(fam.f_eval(1, Coords{{0}, {0}}, Coords{{2}}), FieldElem{0});
}

TEST(Family, TwistedEvaluation) {
    const auto f5 = FieldCtx::make(5, 1);
    const auto fam = family(f5, 2, 1, {"0"}, {{3, 1}});
    // 1*2^3 + 1*4 + 0 = 12 = 2 mod 5
    EXPECT_EQ(fam.f_eval(1, Coords{{1}, {1}, {0}}, Coords{{2}, {4}}), FieldElem{2});
}

TEST(Family, ConstructionErrors) {
    const auto f7 = FieldCtx::make(7, 1);
    EXPECT_EQ(kind_of([&] { family(f7, 1, 1, {"0"}, {{2}}); }), ErrorKind::InvalidFamily);
    EXPECT_EQ(kind_of([&] { family(f7, 1, 1, {"x1^7"}, {{1}}); }), ErrorKind::InvalidFamily);
    EXPECT_EQ(kind_of([&] { family(f7, 1, 2, {"0"}, {{1}}); }), ErrorKind::InvalidFamily);
    EXPECT_EQ(kind_of([&] { VarietyFamily::flat_family(f7, 0, 1); }), ErrorKind::InvalidFamily);
}

TEST(Family, PointSets) {
    const auto f2 = FieldCtx::make(2, 1);
    const auto lines = VarietyFamily::flat_family(f2, 1, 1);
    const VarietyId id{{Coords{{1}, {0}}}};
    std::vector<Point> expect{{Coords{{0}, {0}}}, {Coords{{1}, {1}}}};
    EXPECT_EQ(lines.variety_points(id), expect);

    const auto f3 = FieldCtx::make(3, 1);
    const auto par = family(f3, 1, 1, {"x1^2"}, {ones(1)});
    std::set<std::vector<std::uint32_t>> got;
    for (const auto& pt : par.variety_points(VarietyId{{Coords{{0}, {0}}}})) got.insert({pt.x[0].idx, pt.x[1].idx});
    EXPECT_EQ(got, (std::set<std::vector<std::uint32_t>>{{0, 0}, {1, 1}, {2, 1}}));
}

TEST(Family, EveryVarietyHasBaseManyPoints) {
    const auto f3 = FieldCtx::make(3, 1);
    for (const auto& fam : {family(f3, 1, 2, {"x1^2", "2*x1+1"}, {ones(1), ones(1)}),
                            family(f3, 2, 1, {"x1*x2"}, {ones(2)})}) {
        for (std::uint64_t v = 0; v < fam.num_varieties(); ++v) {
            const auto pts = fam.variety_point_indices(v);
            ASSERT_EQ(pts.size(), fam.num_base());
            ASSERT_EQ(std::set<std::uint64_t>(pts.begin(), pts.end()).size(), pts.size());
            for (auto p : pts) ASSERT_TRUE(fam.contains(v, p));
        }
    }
}

TEST(Family, MembershipIsAGraph) {
    const auto f3 = FieldCtx::make(3, 1);
    const auto fam = family(f3, 1, 2, {"x1^2", "0"}, {ones(1), ones(1)});
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const auto id = fam.variety_at(uniform_below(rng, fam.num_varieties()));
        int hits = 0;
        for (std::uint64_t p = 0; p < fam.num_points(); ++p) hits += fam.contains(id, fam.point_at(p));
        EXPECT_EQ(hits, 3);
        for (auto p : fam.variety_points(id)) {
            Point bumped = p;
            bumped.x[2] = f3.add(bumped.x[2], f3.one());
            EXPECT_FALSE(fam.contains(id, bumped));
        }
    }
}

TEST(Family, IndexRoundTrip) {
    const auto f3 = FieldCtx::make(3, 1);
    const auto fam = VarietyFamily::flat_family(f3, 1, 2);
    EXPECT_EQ(fam.num_varieties(), 81u);
    for (std::uint64_t v = 0; v < fam.num_varieties(); ++v) EXPECT_EQ(fam.variety_index(fam.variety_at(v)), v);
    // a_1 occupies the low digits
    const VarietyId id{{Coords{{1}, {0}}, Coords{{0}, {1}}}};
    EXPECT_EQ(fam.variety_index(id), 1u + 1u * 27u);
}

TEST(FlatFamily, Lines) {
    const auto f2 = FieldCtx::make(2, 1);
    const auto fam = VarietyFamily::flat_family(f2, 1, 1);
    EXPECT_EQ(fam.num_varieties(), 4u);
    for (std::uint64_t v = 0; v < 4; ++v) EXPECT_EQ(fam.variety_point_indices(v).size(), 2u);
    const auto f3 = FieldCtx::make(3, 1);
    const auto planes = VarietyFamily::flat_family(f3, 2, 1);
    for (std::uint64_t v = 0; v < planes.num_varieties(); ++v) {
        const auto id = planes.variety_at(v);
        EXPECT_EQ(planes.contains(id, Point{Coords(3, f3.zero())}), id.a[0][2] == f3.zero());
    }
}

TEST(FlatFamily, ClosedUnderDifferences) {
    // every variety of the flat family is an affine subspace: x + y - z stays inside
    const auto f3 = FieldCtx::make(3, 1);
    const auto fam = VarietyFamily::flat_family(f3, 1, 2);
    for (std::uint64_t v = 0; v < fam.num_varieties(); v += 5) {
        const auto pts = fam.variety_points(fam.variety_at(v));
        for (const auto& a : pts)
            for (const auto& b : pts)
                for (const auto& c : pts) {
                    Point s{Coords(3)};
                    for (int j = 0; j < 3; ++j) s.x[j] = f3.sub(f3.add(a.x[j], b.x[j]), c.x[j]);
                    ASSERT_TRUE(fam.contains(fam.variety_at(v), s));
                }
    }
}

TEST(Paraboloid, Identifier) {
    const auto f5 = FieldCtx::make(5, 1);
    const auto fam = VarietyFamily::paraboloid_family(f5, 1);
    EXPECT_EQ(paraboloid_id(fam, Coords{{2}}), (VarietyId{{Coords{{1}, {4}}}}));
    EXPECT_EQ(paraboloid_id(fam, Coords{{0}}), (VarietyId{{Coords{{0}, {0}}}}));
}

TEST(Paraboloid, VertexAndShape) {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const auto f = FieldCtx::make(q, 1);
        const auto fam = VarietyFamily::paraboloid_family(f, 2);
        for (std::uint64_t pi = 0; pi < fam.num_base(); ++pi) {
            const Coords p = index_to_coords(f, 2, pi);
            const auto id = paraboloid_id(fam, p);
            EXPECT_TRUE(fam.contains(id, Point{{p[0], p[1], f.zero()}}));
            for (std::uint64_t u = 0; u < fam.num_base(); ++u) {
                const Coords x = index_to_coords(f, 2, u);
                FieldElem r = f.zero();
                for (int j = 0; j < 2; ++j) r = f.add(r, f.mul(f.sub(x[j], p[j]), f.sub(x[j], p[j])));
                ASSERT_TRUE(fam.contains(id, Point{{x[0], x[1], r}}));
            }
        }
    }
}

TEST(Paraboloid, EvenCharacteristicRejected) {
    const auto f4 = FieldCtx::make(2, 2);
    const auto fam = VarietyFamily::paraboloid_family(f4, 1);
    EXPECT_EQ(kind_of([&] { paraboloid_id(fam, Coords{{1}}); }), ErrorKind::EvenCharacteristic);
}

TEST(Distinctness, SmallFamilies) {
    const auto f2 = FieldCtx::make(2, 1);
    EXPECT_TRUE(distinctness_check(VarietyFamily::flat_family(f2, 1, 1)));
    const auto f3 = FieldCtx::make(3, 1);
    EXPECT_TRUE(distinctness_check(family(f3, 1, 2, {"x1^2", "2*x1^2+1"}, {ones(1), ones(1)})));
    EXPECT_TRUE(distinctness_check(family(f3, 2, 1, {"x1*x2"}, {ones(2)})));
    const auto f4 = FieldCtx::make(2, 2);
    EXPECT_TRUE(distinctness_check(family(f4, 1, 2, {"x1^3", "x1"}, {{1}, {2}})));
    const auto f5 = FieldCtx::make(5, 1);
    EXPECT_TRUE(distinctness_check(family(f5, 2, 1, {"x1^2+x1*x2"}, {{3, 1}})));
    EXPECT_EQ(kind_of([&] { distinctness_check(VarietyFamily::flat_family(f5, 2, 1), 10); }), ErrorKind::TooLarge);
}
