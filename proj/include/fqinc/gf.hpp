#pragma once

// Finite fields F_q, q = p^m, as F_p[x]/(modulus).
//
// Elements are identified with their canonical index sum_i coeffs[i] * p^i (coeffs little-endian,
// coeffs[0] the constant term). Every matrix index in the library is derived from this bijection.
// Addition and multiplication are tabulated once per context; contexts are immutable and cheap to copy.

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqinc/error.hpp"

namespace fqinc {

/// An element of F_q, stored as its canonical index.
struct FieldElem {
    std::uint32_t idx = 0;
    auto operator<=>(const FieldElem&) const = default;
};

namespace detail {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using PolyFp = std::vector<std::uint32_t>;  // little-endian coefficients over F_p

inline void trim(PolyFp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    // p prime, a != 0: Fermat
    std::uint64_t r = 1, b = a % p;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return static_cast<std::uint32_t>(r);
}

/// Remainder of a modulo b over F_p (b nonzero).
inline PolyFp poly_mod(PolyFp a, PolyFp b, std::uint32_t p) {
    trim(a);
    trim(b);
    const std::uint32_t lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            const std::uint64_t sub = factor * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

/// Exhaustive irreducibility test: no monic factor of degree 1..deg/2 divides f.
inline bool is_irreducible(const PolyFp& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    for (std::size_t k = 1; k <= deg / 2; ++k) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < k; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            PolyFp g(k + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < k; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[k] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

struct FieldTables {
    std::uint32_t p = 0, m = 0, q = 0;
    std::vector<std::uint32_t> modulus;  // length m+1, monic
    std::vector<std::uint32_t> add, mul; // q*q
    std::vector<std::uint32_t> neg, inv, trace;
};

}  // namespace detail

class FieldCtx {
public:
    static constexpr std::uint32_t kMaxOrder = 1024;

    /// Validates p and the modulus. With no modulus: m = 1 gives the prime field, m > 1 picks the
    /// monic irreducible whose lower coefficients have the least base-p value.
    static FieldCtx make(std::uint32_t p, std::uint32_t m,
                         std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
        require(detail::is_prime(p), ErrorKind::NonPrimeP, std::to_string(p) + " is not prime");
        require(m >= 1, ErrorKind::InvalidRange, "extension degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            q *= p;
            require(q <= kMaxOrder, ErrorKind::TooLarge, "field order exceeds " + std::to_string(kMaxOrder));
        }
        std::vector<std::uint32_t> mod;
        if (modulus) {
            mod = *modulus;
            require(mod.size() == m + 1, ErrorKind::ReducibleModulus,
                    "modulus must have degree m = " + std::to_string(m));
            for (auto c : mod) require(c < p, ErrorKind::ReducibleModulus, "modulus coefficient out of range");
            require(mod.back() == 1, ErrorKind::ReducibleModulus, "modulus must be monic");
            require(m == 1 || detail::is_irreducible(mod, p), ErrorKind::ReducibleModulus,
                    "modulus is reducible over F_" + std::to_string(p));
        } else if (m == 1) {
            mod = {0, 1};
        } else {
            const std::uint64_t lower = q;  // p^m choices of the m lower coefficients
            for (std::uint64_t code = 0; code < lower; ++code) {
                std::vector<std::uint32_t> cand(m + 1, 0);
                std::uint64_t c = code;
                for (std::uint32_t i = 0; i < m; ++i) {
                    cand[i] = static_cast<std::uint32_t>(c % p);
                    c /= p;
                }
                cand[m] = 1;
                if (detail::is_irreducible(cand, p)) {
                    mod = std::move(cand);
                    break;
                }
            }
        }
        return FieldCtx(build_tables(p, m, static_cast<std::uint32_t>(q), std::move(mod)));
    }

    /// Parses "p", "p^m" or "p^m/c0,c1,...,cm" (modulus coefficients little-endian).
    static FieldCtx parse(const std::string& spec) {
        auto parse_u32 = [&](const std::string& s) -> std::uint32_t {
            require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos, ErrorKind::ParseError,
                    "bad field spec '" + spec + "'");
            return static_cast<std::uint32_t>(std::stoul(s));
        };
        std::string head = spec, tail;
        if (auto slash = spec.find('/'); slash != std::string::npos) {
            head = spec.substr(0, slash);
            tail = spec.substr(slash + 1);
        }
        std::uint32_t p = 0, m = 1;
        if (auto caret = head.find('^'); caret != std::string::npos) {
            p = parse_u32(head.substr(0, caret));
            m = parse_u32(head.substr(caret + 1));
        } else {
            p = parse_u32(head);
        }
        if (tail.empty()) return make(p, m);
        std::vector<std::uint32_t> mod;
        std::size_t pos = 0;
        while (pos <= tail.size()) {
            auto comma = tail.find(',', pos);
            if (comma == std::string::npos) comma = tail.size();
            mod.push_back(parse_u32(tail.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return make(p, m, mod);
    }

    std::uint32_t p() const { return t_->p; }
    std::uint32_t m() const { return t_->m; }
    std::uint32_t q() const { return t_->q; }
    const std::vector<std::uint32_t>& modulus() const { return t_->modulus; }

    /// "p^m/c0,...,cm"; round-trips through parse().
    std::string spec() const {
        std::string s = std::to_string(p()) + "^" + std::to_string(m()) + "/";
        for (std::size_t i = 0; i < modulus().size(); ++i) {
            if (i) s += ",";
            s += std::to_string(modulus()[i]);
        }
        return s;
    }

    bool same_field(const FieldCtx& o) const { return t_ == o.t_ || (p() == o.p() && modulus() == o.modulus()); }

    FieldElem zero() const { return {0}; }
    FieldElem one() const { return {1}; }

    /// Image of an integer in the prime subfield.
    FieldElem from_int(std::int64_t v) const {
        const std::int64_t pp = p();
        return {static_cast<std::uint32_t>(((v % pp) + pp) % pp)};
    }

    FieldElem add(FieldElem x, FieldElem y) const { return {t_->add[check(x) * q() + check(y)]}; }
    FieldElem neg(FieldElem x) const { return {t_->neg[check(x)]}; }
    FieldElem sub(FieldElem x, FieldElem y) const { return add(x, neg(y)); }
    FieldElem mul(FieldElem x, FieldElem y) const { return {t_->mul[check(x) * q() + check(y)]}; }

    FieldElem inv(FieldElem x) const {
        require(check(x) != 0, ErrorKind::DivisionByZero, "inverse of zero");
        return {t_->inv[x.idx]};
    }

    FieldElem div(FieldElem x, FieldElem y) const { return mul(x, inv(y)); }

    /// x^b by square-and-multiply (0^0 = 1).
    FieldElem pow(FieldElem x, std::uint64_t b) const {
        FieldElem r = one(), base = x;
        check(x);
        for (; b; b >>= 1) {
            if (b & 1) r = mul(r, base);
            base = mul(base, base);
        }
        return r;
    }

    /// Tr(a) = a + a^p + ... + a^{p^{m-1}}; the result lies in the prime subfield (index < p).
    FieldElem trace(FieldElem a) const { return {t_->trace[check(a)]}; }

    std::vector<std::uint32_t> coeffs(FieldElem x) const {
        std::vector<std::uint32_t> c(m());
        std::uint32_t v = check(x);
        for (auto& ci : c) {
            ci = v % p();
            v /= p();
        }
        return c;
    }

    FieldElem from_coeffs(std::span<const std::uint32_t> c) const {
        require(c.size() == m(), ErrorKind::DimensionMismatch, "coefficient vector must have length m");
        std::uint32_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            require(c[i] < p(), ErrorKind::IndexOutOfRange, "coefficient out of [0,p)");
            v = v * p() + c[i];
        }
        return {v};
    }

    std::vector<FieldElem> elements() const {
        std::vector<FieldElem> e(q());
        for (std::uint32_t i = 0; i < q(); ++i) e[i] = {i};
        return e;
    }

private:
    explicit FieldCtx(std::shared_ptr<const detail::FieldTables> t) : t_(std::move(t)) {}

    std::uint32_t check(FieldElem x) const {
        require(x.idx < q(), ErrorKind::IndexOutOfRange, "element index outside field");
        return x.idx;
    }

    static std::shared_ptr<const detail::FieldTables> build_tables(std::uint32_t p, std::uint32_t m, std::uint32_t q,
                                                                   std::vector<std::uint32_t> mod) {
        auto t = std::make_shared<detail::FieldTables>();
        t->p = p;
        t->m = m;
        t->q = q;
        t->modulus = std::move(mod);
        auto digits = [&](std::uint32_t v) {
            detail::PolyFp c(m);
            for (auto& ci : c) {
                ci = v % p;
                v /= p;
            }
            return c;
        };
        auto encode = [&](const detail::PolyFp& c) {
            std::uint32_t v = 0;
            for (std::size_t i = m; i-- > 0;) v = v * p + (i < c.size() ? c[i] : 0);
            return v;
        };
        t->add.resize(std::size_t(q) * q);
        t->mul.resize(std::size_t(q) * q);
        t->neg.resize(q);
        t->inv.assign(q, 0);
        t->trace.resize(q);
        for (std::uint32_t x = 0; x < q; ++x) {
            const auto cx = digits(x);
            detail::PolyFp cn(m);
            for (std::uint32_t i = 0; i < m; ++i) cn[i] = (p - cx[i]) % p;
            t->neg[x] = encode(cn);
            for (std::uint32_t y = 0; y < q; ++y) {
                const auto cy = digits(y);
                detail::PolyFp s(m);
                for (std::uint32_t i = 0; i < m; ++i) s[i] = (cx[i] + cy[i]) % p;
                t->add[std::size_t(x) * q + y] = encode(s);
                detail::PolyFp prod(2 * m - 1, 0);
                for (std::uint32_t i = 0; i < m; ++i)
                    for (std::uint32_t j = 0; j < m; ++j)
                        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(cx[i]) * cy[j]) % p);
                t->mul[std::size_t(x) * q + y] = encode(m == 1 ? prod : detail::poly_mod(prod, t->modulus, p));
            }
        }
        for (std::uint32_t x = 1; x < q; ++x)
            for (std::uint32_t y = 1; y < q; ++y)
                if (t->mul[std::size_t(x) * q + y] == 1) {
                    t->inv[x] = y;
                    break;
                }
        for (std::uint32_t x = 0; x < q; ++x) {
            std::uint32_t acc = 0, frob = x;
            for (std::uint32_t k = 0; k < m; ++k) {
                acc = t->add[std::size_t(acc) * q + frob];
                std::uint32_t f = 1;  // frob^p
                for (std::uint32_t e = 0; e < p; ++e) f = t->mul[std::size_t(f) * q + frob];
                frob = f;
            }
            t->trace[x] = acc;
        }
        return t;
    }

    std::shared_ptr<const detail::FieldTables> t_;
};

/// Canonical index of an element (the base-p encoding of its coefficients).
inline std::uint32_t elem_to_index(const FieldCtx& ctx, FieldElem x) {
    require(x.idx < ctx.q(), ErrorKind::IndexOutOfRange, "element index outside field");
    return x.idx;
}

inline FieldElem index_to_elem(const FieldCtx& ctx, std::uint64_t i) {
    require(i < ctx.q(), ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " outside [0,q)");
    return {static_cast<std::uint32_t>(i)};
}

/// Table of x -> x^b over the whole field, in index order.
inline std::vector<FieldElem> pow_map(const FieldCtx& ctx, std::uint64_t b) {
    std::vector<FieldElem> out(ctx.q());
    for (std::uint32_t i = 0; i < ctx.q(); ++i) out[i] = ctx.pow({i}, b);
    return out;
}

/// gcd(b, q-1) == 1, i.e. x -> x^b permutes F_q.
inline bool is_power_permutation(const FieldCtx& ctx, std::uint64_t b) {
    return b >= 1 && std::gcd(b, std::uint64_t(ctx.q() - 1)) == 1;
}

using Coords = std::vector<FieldElem>;

/// Vectors of F_q^k are indexed little-endian: index = sum_j idx(x_j) * q^j.
inline std::uint64_t coords_to_index(const FieldCtx& ctx, std::span<const FieldElem> x) {
    std::uint64_t v = 0;
    for (std::size_t j = x.size(); j-- > 0;) {
        require(x[j].idx < ctx.q(), ErrorKind::IndexOutOfRange, "coordinate outside field");
        v = v * ctx.q() + x[j].idx;
    }
    return v;
}

inline Coords index_to_coords(const FieldCtx& ctx, std::size_t k, std::uint64_t idx) {
    Coords x(k);
    for (auto& xj : x) {
        xj.idx = static_cast<std::uint32_t>(idx % ctx.q());
        idx /= ctx.q();
    }
    require(idx == 0, ErrorKind::IndexOutOfRange, "vector index outside F_q^k");
    return x;
}

/// <v, a> = sum_j v_j a_j
inline FieldElem dot(const FieldCtx& ctx, std::span<const FieldElem> v, std::span<const FieldElem> a) {
    require(v.size() == a.size(), ErrorKind::DimensionMismatch, "dot product of unequal lengths");
    FieldElem s = ctx.zero();
    for (std::size_t j = 0; j < v.size(); ++j) s = ctx.add(s, ctx.mul(v[j], a[j]));
    return s;
}

}  // namespace fqinc
