#include <gtest/gtest.h>

#include <numeric>
#include <set>
#include <vector>

#include "fqinc/gf.hpp"

using namespace fqinc;

namespace {

// Schoolbook product of base-p coefficient vectors, reduced by a monic modulus.
std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                       const std::vector<std::uint32_t>& mod, std::uint32_t p) {
    const std::size_t m = mod.size() - 1;
    std::vector<std::uint32_t> prod(2 * m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (std::size_t k = prod.size(); k-- > m;) {
        const std::uint32_t c = prod[k];
        if (!c) continue;
        for (std::size_t t = 0; t <= m; ++t) prod[k - m + t] = (prod[k - m + t] + (p - c) * mod[t] % p) % p;
    }
    prod.resize(m);
    return prod;
}

bool has_root(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint32_t v = 0;
        for (std::size_t i = poly.size(); i-- > 0;) v = (v * x + poly[i]) % p;
        if (v == 0) return true;
    }
    return false;
}

std::vector<FieldCtx> small_fields() {
    std::vector<FieldCtx> out;
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {7, 2}})
        out.push_back(FieldCtx::make(p, m));
    return out;
}

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

TEST(Field, PrimeFieldArithmetic) {
    const auto f3 = FieldCtx::make(3, 1);
    EXPECT_EQ(f3.q(), 3u);
    EXPECT_EQ(f3.add({2}, {2}), FieldElem{1});
    const auto f5 = FieldCtx::make(5, 1);
    EXPECT_EQ(f5.inv({2}), FieldElem{3});
}

TEST(Field, F4GeneratorSquares) {
    const auto f4 = FieldCtx::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
    // x = index 2, x + 1 = index 3
    EXPECT_EQ(f4.mul({2}, {2}), FieldElem{3});
}

TEST(Field, DefaultModulusIsLeastIrreducible) {
    // monic quadratics over F_3 in order of their lower coefficients; the first without a root
    std::vector<std::uint32_t> least;
    for (std::uint32_t code = 0; code < 9 && least.empty(); ++code) {
        std::vector<std::uint32_t> cand{code % 3, code / 3, 1};
        if (!has_root(cand, 3)) least = cand;
    }
    EXPECT_EQ(FieldCtx::make(3, 2).modulus(), least);
    EXPECT_EQ(least, (std::vector<std::uint32_t>{1, 0, 1}));
    EXPECT_EQ(FieldCtx::make(2, 2).modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
    EXPECT_EQ(FieldCtx::make(2, 3).modulus(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
}

TEST(Field, ConstructionErrors) {
    EXPECT_EQ(kind_of([] { FieldCtx::make(4, 1); }), ErrorKind::NonPrimeP);
    EXPECT_EQ(kind_of([] { FieldCtx::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}); }), ErrorKind::ReducibleModulus);
    EXPECT_EQ(kind_of([] { FieldCtx::make(3, 2, std::vector<std::uint32_t>{2, 0, 1}); }), ErrorKind::ReducibleModulus);
    EXPECT_EQ(kind_of([] { FieldCtx::make(2, 11); }), ErrorKind::TooLarge);
    const auto f5 = FieldCtx::make(5, 1);
    EXPECT_EQ(kind_of([&] { f5.inv({0}); }), ErrorKind::DivisionByZero);
    EXPECT_EQ(kind_of([&] { f5.add({5}, {0}); }), ErrorKind::IndexOutOfRange);
    EXPECT_EQ(kind_of([&] { index_to_elem(f5, 5); }), ErrorKind::IndexOutOfRange);
}

TEST(Field, SpecParsing) {
    EXPECT_EQ(FieldCtx::parse("7").q(), 7u);
    EXPECT_EQ(FieldCtx::parse("3^2").q(), 9u);
    EXPECT_EQ(kind_of([] { FieldCtx::parse("x"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { FieldCtx::parse("3^"); }), ErrorKind::ParseError);
}

TEST(Field, MultiplicationMatchesSchoolbook) {
    for (const auto& f : small_fields()) {
        for (std::uint32_t a = 0; a < f.q(); ++a)
            for (std::uint32_t b = 0; b < f.q(); ++b) {
                const auto expect = poly_mulmod(f.coeffs({a}), f.coeffs({b}), f.modulus(), f.p());
                ASSERT_EQ(f.coeffs(f.mul({a}, {b})), expect) << f.q() << ": " << a << "*" << b;
                std::vector<std::uint32_t> sum(f.m());
                const auto ca = f.coeffs({a}), cb = f.coeffs({b});
                for (std::size_t i = 0; i < f.m(); ++i) sum[i] = (ca[i] + cb[i]) % f.p();
                ASSERT_EQ(f.coeffs(f.add({a}, {b})), sum);
            }
    }
}

TEST(Field, Axioms) {
    for (const auto& f : small_fields()) {
        const auto E = f.elements();
        for (auto a : E) {
            EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
            EXPECT_EQ(f.mul(a, f.one()), a);
            if (a != f.zero()) {
                EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
            }
            for (auto b : E) {
                EXPECT_EQ(f.add(a, b), f.add(b, a));
                EXPECT_EQ(f.mul(a, b), f.mul(b, a));
                if (f.q() > 16) continue;
                for (auto c : E) {
                    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    EXPECT_EQ(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
        // multiplicative group is cyclic of order q-1
        for (auto a : E)
            if (a != f.zero()) {
                EXPECT_EQ(f.pow(a, f.q() - 1), f.one());
            }
    }
}

TEST(Field, TraceValues) {
    const auto f9 = FieldCtx::make(3, 2);
    EXPECT_EQ(f9.trace({0}), FieldElem{0});
    EXPECT_EQ(f9.trace({1}), FieldElem{2});
    EXPECT_EQ(FieldCtx::make(2, 2).trace({1}), FieldElem{0});
    EXPECT_EQ(FieldCtx::make(2, 2).trace({2}), FieldElem{1});
}

TEST(Field, TraceIsLinearAndBalanced) {
    for (const auto& f : small_fields()) {
        std::vector<std::uint64_t> fibre(f.p(), 0);
        for (auto a : f.elements()) {
            // Frobenius sum computed independently through pow
            FieldElem s = f.zero(), fr = a;
            for (std::uint32_t i = 0; i < f.m(); ++i, fr = f.pow(fr, f.p())) s = f.add(s, fr);
            ASSERT_EQ(f.trace(a), s);
            ASSERT_LT(f.trace(a).idx, f.p());
            ++fibre[f.trace(a).idx];
            for (auto b : f.elements()) ASSERT_EQ(f.trace(f.add(a, b)), f.add(f.trace(a), f.trace(b)));
        }
        for (auto c : fibre) EXPECT_EQ(c, f.q() / f.p());
    }
}

TEST(Field, PowerMaps) {
    const auto f5 = FieldCtx::make(5, 1);
    const auto m = pow_map(f5, 3);
    EXPECT_EQ(m, (std::vector<FieldElem>{{0}, {1}, {3}, {2}, {4}}));
    const auto f7 = FieldCtx::make(7, 1);
    const auto sq = pow_map(f7, 2);
    EXPECT_EQ(sq[3], FieldElem{2});
    EXPECT_EQ(sq[4], FieldElem{2});
    EXPECT_FALSE(is_power_permutation(f7, 2));
    for (const auto& f : small_fields())
        for (std::uint64_t b = 1; b < 2 * f.q(); ++b) {
            const auto t = pow_map(f, b);
            std::set<std::uint32_t> img;
            for (auto x : t) img.insert(x.idx);
            EXPECT_EQ(img.size() == f.q(), std::gcd(b, std::uint64_t(f.q() - 1)) == 1) << f.q() << " b=" << b;
            EXPECT_EQ(is_power_permutation(f, b), img.size() == f.q());
            if (b == 1) {
                for (std::uint32_t i = 0; i < f.q(); ++i) EXPECT_EQ(t[i].idx, i);
            }
        }
}

TEST(Field, IndexEncoding) {
    const auto f9 = FieldCtx::make(3, 2);
    const std::vector<std::uint32_t> c{1, 2};  // 1 + 2x
    EXPECT_EQ(elem_to_index(f9, f9.from_coeffs(c)), 7u);
    const auto f4 = FieldCtx::make(2, 2);
    EXPECT_EQ(f4.coeffs({2}), (std::vector<std::uint32_t>{0, 1}));
    EXPECT_EQ(elem_to_index(FieldCtx::make(3, 1), {2}), 2u);
    for (const auto& f : small_fields())
        for (std::uint32_t i = 0; i < f.q(); ++i) EXPECT_EQ(elem_to_index(f, index_to_elem(f, i)), i);
}

TEST(Field, VectorIndexRoundTrip) {
    const auto f3 = FieldCtx::make(3, 1);
    const Coords x{{1}, {2}};
    EXPECT_EQ(coords_to_index(f3, x), 1u + 2u * 3u);
    for (std::uint64_t i = 0; i < 27; ++i) EXPECT_EQ(coords_to_index(f3, index_to_coords(f3, 3, i)), i);
    EXPECT_EQ(kind_of([&] { index_to_coords(f3, 2, 9); }), ErrorKind::IndexOutOfRange);
}

TEST(Field, ExplicitModulusSpec) {
    const auto f = FieldCtx::parse("3^2/2,2,1");
    EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{2, 2, 1}));
    EXPECT_EQ(kind_of([] { FieldCtx::parse("3^2/1,1,1"); }), ErrorKind::ReducibleModulus);
}
