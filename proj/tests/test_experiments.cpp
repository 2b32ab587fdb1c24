#include <gtest/gtest.h>

#include <set>

#include "fqinc/experiments.hpp"

using namespace fqinc;
namespace ex = fqinc::experiments;

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    EXPECT_EQ(trial_seed(1, 2, 3), trial_seed(1, 2, 3));
    std::set<std::uint64_t> seeds;
    for (std::uint64_t s = 0; s < 4; ++s)
        for (std::uint64_t t = 0; t < 50; ++t) seeds.insert(trial_seed(99, ex::stream_id(ex::kIncidence, s), t));
    EXPECT_EQ(seeds.size(), 200u);
    Rng a = trial_rng(5, 6, 7), b = trial_rng(5, 6, 7);
    EXPECT_EQ(random_subset(a, 1000, 20), random_subset(b, 1000, 20));
}

TEST(Rng, UniformBelowStaysInRange) {
    Rng rng(1);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const auto x = uniform_below(rng, 7);
        ASSERT_LT(x, 7u);
        ++hist[x];
    }
    for (auto h : hist) EXPECT_GT(h, 800);
    EXPECT_EQ(uniform_below(rng, 1), 0u);
    EXPECT_THROW(uniform_below(rng, 0), Error);
}

TEST(Rng, SubsetsAreSortedAndDistinct) {
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
        const auto s = random_subset(rng, 50, t % 51);
        EXPECT_EQ(s.size(), std::size_t(t % 51));
        EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
        EXPECT_EQ(std::set<std::uint64_t>(s.begin(), s.end()).size(), s.size());
        for (auto x : s) EXPECT_LT(x, 50u);
    }
    EXPECT_THROW(random_subset(rng, 3, 4), Error);
}

TEST(Json, ExactNumbers) {
    EXPECT_EQ(ex::exact(BigInt(12)), ex::Json(12));
    const BigInt big = big_pow(BigInt(10), 30);
    EXPECT_EQ(ex::exact(big), ex::Json(big.str()));
    EXPECT_EQ(ex::exact(BigRational(4, 6)), ex::Json("2/3"));
}

TEST(Families, TwistedVariantsAreValid) {
    for (const std::string field : {"2", "3", "2^2", "5", "7", "3^2"})
        for (std::size_t n = 1; n <= 2; ++n)
            for (std::size_t d = 1; d <= 2; ++d) {
                const auto s = ex::twisted_family(field, n, d);
                EXPECT_NO_THROW(ex::build_family(s)) << field << " " << n << " " << d;
                EXPECT_GT(s.b[0][0], 1u);
            }
    EXPECT_EQ(ex::twisted_family("7", 1, 1).b[0][0], 5u);
    EXPECT_EQ(ex::twisted_family("3", 1, 1).b[0][0], 3u);
}

TEST(Reports, SpectrumPasses) {
    const auto j = ex::run_spectrum(ex::twisted_family("3", 1, 2), {}, true, true);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["sides"].size(), 2u);
}

TEST(Reports, IncidenceIsDeterministic) {
    ex::IncidenceConfig cfg;
    cfg.seed = 77;
    cfg.trials = 64;
    const auto spec = ex::plain_family("3", 1, 1);
    const auto a = ex::run_incidence(spec, 0, cfg, {});
    const auto b = ex::run_incidence(spec, 0, cfg, {});
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_TRUE(a["pass"].get<bool>());
    cfg.seed = 78;
    cfg.rows = true;
    const auto c = ex::run_incidence(spec, 0, cfg, {});
    EXPECT_EQ(c["rows"].size(), 64u * 3u);
}

TEST(Reports, PinnedVacuousBranch) {
    ex::PinnedRunConfig cfg;
    cfg.seed = 3;
    cfg.trials = 4;
    const auto j = ex::run_pinned("5", 2, BigRational(1, 4), 0, cfg);
    EXPECT_TRUE(j["vacuous"].get<bool>());
    EXPECT_TRUE(j["pass"].get<bool>());
    const auto k = ex::run_pinned("7", 2, BigRational(1, 2), 0, cfg);
    EXPECT_TRUE(k["pass"].get<bool>());
}

TEST(Reports, FlatsCensusCounts) {
    const auto j = ex::run_flats_census("2", 2, 1, {});
    EXPECT_EQ(j["flats"].get<std::uint64_t>(), 14u);
    EXPECT_EQ(j["family_flats"].get<std::uint64_t>(), 8u);
    EXPECT_TRUE(j["pass"].get<bool>());
}
