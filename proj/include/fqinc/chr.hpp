#pragma once

// Exact arithmetic in Z[zeta_p] and the additive characters chi_v(a) = zeta_p^{Tr(<v,a>)} of F_q^k.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fqinc/error.hpp"
#include "fqinc/gf.hpp"
#include "fqinc/numeric.hpp"

namespace fqinc {

/// sum_i coeffs[i] * zeta_p^i, i < p-1, in Z[x]/(1 + x + ... + x^{p-1}).
/// Canonical: zeta^{p-1} is always rewritten as -(1 + zeta + ... + zeta^{p-2}), so equality is coefficient-wise.
class CycInt {
public:
    CycInt() = default;
    explicit CycInt(std::uint32_t p) : p_(p), c_(p - 1) {
        require(p >= 2 && detail::is_prime(p), ErrorKind::NonPrimeP, "root-of-unity order must be prime");
    }

    static CycInt from_int(std::uint32_t p, const BigInt& v) {
        CycInt x(p);
        x.c_[0] = v;
        return x;
    }

    /// zeta_p^k for any integer k.
    static CycInt zeta_pow(std::uint32_t p, std::int64_t k) {
        std::vector<BigInt> b(p);
        const std::int64_t pp = p;
        b[static_cast<std::size_t>(((k % pp) + pp) % pp)] = 1;
        return from_buckets(p, std::move(b));
    }

    /// sum_e buckets[e] * zeta^e, e in [0, p).
    static CycInt from_buckets(std::uint32_t p, std::vector<BigInt> buckets) {
        require(buckets.size() == p, ErrorKind::DimensionMismatch, "bucket vector must have length p");
        CycInt x(p);
        const BigInt top = buckets[p - 1];
        for (std::uint32_t i = 0; i + 1 < p; ++i) x.c_[i] = buckets[i] - top;
        return x;
    }

    std::uint32_t order() const { return p_; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }

    /// True when the value is a rational integer (all non-constant coefficients vanish).
    bool is_integer() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    bool operator==(const CycInt& o) const { return p_ == o.p_ && c_ == o.c_; }

    friend CycInt operator+(CycInt a, const CycInt& b) {
        a.same(b);
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
        return a;
    }

    friend CycInt operator-(CycInt a, const CycInt& b) {
        a.same(b);
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
        return a;
    }

    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        a.same(b);
        const std::uint32_t p = a.p_;
        std::vector<BigInt> buckets(p);
        for (std::uint32_t i = 0; i + 1 < p; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::uint32_t j = 0; j + 1 < p; ++j)
                if (b.c_[j] != 0) buckets[(i + j) % p] += a.c_[i] * b.c_[j];
        }
        return from_buckets(p, std::move(buckets));
    }

    friend CycInt operator*(const BigInt& s, CycInt a) {
        for (auto& c : a.c_) c *= s;
        return a;
    }

    /// Complex conjugation zeta -> zeta^{-1}.
    CycInt conj() const {
        std::vector<BigInt> buckets(p_);
        for (std::uint32_t i = 0; i + 1 < p_; ++i) buckets[(p_ - i) % p_] += c_[i];
        return from_buckets(p_, std::move(buckets));
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].str();
            if (i) s += "*z^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    void same(const CycInt& o) const {
        require(p_ == o.p_, ErrorKind::MixedOrders,
                "cyclotomic orders differ: " + std::to_string(p_) + " vs " + std::to_string(o.p_));
    }

    std::uint32_t p_ = 0;
    std::vector<BigInt> c_;
};

/// The additive character chi_v of F_q^k.
struct Character {
    FieldCtx ctx;
    std::size_t k = 0;
    Coords v;

    Character(FieldCtx c, Coords vec) : ctx(std::move(c)), k(vec.size()), v(std::move(vec)) {}

    static Character from_index(const FieldCtx& c, std::size_t k, std::uint64_t idx) {
        return Character(c, index_to_coords(c, k, idx));
    }

    /// Tr(<v,a>) lifted to [0, p): the exponent of zeta_p in chi_v(a).
    std::uint32_t exponent(std::span<const FieldElem> a) const {
        require(a.size() == k, ErrorKind::DimensionMismatch, "character argument has wrong dimension");
        return ctx.trace(dot(ctx, v, a)).idx;
    }
};

inline CycInt char_eval(const Character& chi, std::span<const FieldElem> a) {
    return CycInt::zeta_pow(chi.ctx.p(), chi.exponent(a));
}

/// Exponent table e(u) with chi(u) = zeta^{e(u)}, for every u in F_q^k in index order.
inline std::vector<std::uint32_t> char_exponents(const Character& chi) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < chi.k; ++i) total *= chi.ctx.q();
    std::vector<std::uint32_t> e(total);
    for (std::uint64_t u = 0; u < total; ++u) e[u] = chi.exponent(index_to_coords(chi.ctx, chi.k, u));
    return e;
}

/// <f, chi> = sum_u f(u) * conj(chi(u)), f indexed by the canonical index of F_q^k.
inline CycInt char_inner_product(std::span<const CycInt> f, const Character& chi) {
    const auto e = char_exponents(chi);
    require(f.size() == e.size(), ErrorKind::DimensionMismatch, "function length must be q^k");
    const std::uint32_t p = chi.ctx.p();
    CycInt acc(p);
    for (std::size_t u = 0; u < f.size(); ++u) acc = acc + f[u] * CycInt::zeta_pow(p, -std::int64_t(e[u]));
    return acc;
}

/// Integer-valued variant: buckets collect sum_u f(u) over each exponent class of conj(chi(u)).
inline CycInt char_inner_product(std::span<const BigInt> f, const Character& chi) {
    const auto e = char_exponents(chi);
    require(f.size() == e.size(), ErrorKind::DimensionMismatch, "function length must be q^k");
    const std::uint32_t p = chi.ctx.p();
    std::vector<BigInt> buckets(p);
    for (std::size_t u = 0; u < f.size(); ++u) buckets[(p - e[u]) % p] += f[u];
    return CycInt::from_buckets(p, std::move(buckets));
}

}  // namespace fqinc
