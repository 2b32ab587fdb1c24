#pragma once

// Incidence bound right-hand sides, evaluated as exact squares, and the single comparison protocol
// for inequalities of the form x <= s * sqrt(t).

#include <cstdint>
#include <optional>
#include <string>

#include "fqinc/error.hpp"
#include "fqinc/incidence.hpp"
#include "fqinc/numeric.hpp"
#include "fqinc/variety.hpp"

namespace fqinc {

/// [n choose k]_q by the product formula; [n choose 0]_q = 1.
inline BigInt gaussian_binomial(std::int64_t n, std::int64_t k, std::int64_t q) {
    require(n >= 0 && k >= 0 && k <= n, ErrorKind::InvalidRange,
            "gaussian_binomial needs 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    require(q >= 2, ErrorKind::InvalidRange, "gaussian_binomial needs q >= 2");
    BigInt num = 1, den = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        num *= big_pow(BigInt(q), unsigned(n - i)) - 1;
        den *= big_pow(BigInt(q), unsigned(k - i)) - 1;
    }
    return num / den;
}

/// x <= s * sqrt(t) for s, t >= 0, decided without square roots.
inline bool leq_scaled_sqrt(const BigRational& x, const BigRational& s, const BigRational& t) {
    require(s >= 0 && t >= 0, ErrorKind::InvalidRange, "scaled sqrt needs s, t >= 0");
    return x <= 0 || x * x <= s * s * t;
}

/// x >= s * sqrt(t) for s, t >= 0.
inline bool geq_scaled_sqrt(const BigRational& x, const BigRational& s, const BigRational& t) {
    require(s >= 0 && t >= 0, ErrorKind::InvalidRange, "scaled sqrt needs s, t >= 0");
    return x >= 0 && x * x >= s * s * t;
}

enum class BoundName {
    MainD1,
    MainDge2,
    MainIntermediate,
    Phuong,
    FlatsCor,
    FlatsThmD1,
    FlatsThmDge2,
    LundLeading,
    ExpanderGeneric,
};

inline std::string to_string(BoundName b) {
    switch (b) {
        case BoundName::MainD1: return "main_d1";
        case BoundName::MainDge2: return "main_dge2";
        case BoundName::MainIntermediate: return "main_intermediate";
        case BoundName::Phuong: return "phuong";
        case BoundName::FlatsCor: return "flats_cor";
        case BoundName::FlatsThmD1: return "flats_thm_d1";
        case BoundName::FlatsThmDge2: return "flats_thm_dge2";
        case BoundName::LundLeading: return "lund_leading";
        case BoundName::ExpanderGeneric: return "expander_generic";
    }
    return "?";
}

inline BoundName parse_bound_name(const std::string& s) {
    for (auto b : {BoundName::MainD1, BoundName::MainDge2, BoundName::MainIntermediate, BoundName::Phuong,
                   BoundName::FlatsCor, BoundName::FlatsThmD1, BoundName::FlatsThmDge2, BoundName::LundLeading,
                   BoundName::ExpanderGeneric})
        if (to_string(b) == s) return b;
    fail(ErrorKind::ParseError, "unknown bound name '" + s + "'");
}

/// The bound for a point set of size |P| and a set of |Y| varieties or flats.
/// Expander fields are read only by ExpanderGeneric: parts of size |A|, |B|, degree a on the A side, lambda_3^2.
struct BoundSpec {
    BoundName name = BoundName::MainD1;
    BigInt q = 2;
    unsigned n = 1, d = 1;
    BigInt sizeP = 0, sizeY = 0;
    BigInt sizeA = 0, sizeB = 0, degree_a = 0;
    BigRational lambda3_sq = 0;

    static BoundSpec for_family(BoundName name, const VarietyFamily& fam, std::uint64_t sizeP, std::uint64_t sizeY) {
        BoundSpec s;
        s.name = name;
        s.q = fam.ctx().q();
        s.n = unsigned(fam.n());
        s.d = unsigned(fam.d());
        s.sizeP = sizeP;
        s.sizeY = sizeY;
        return s;
    }

    /// lund_leading drops an unquantified (1 + o(1)) factor, so a violation is not a counterexample.
    bool falsifiable() const { return name != BoundName::LundLeading; }
};

inline BigRational eval_bound_squared(const BoundSpec& s) {
    require(s.d >= 1 && s.n >= 1 && s.q >= 2, ErrorKind::InvalidRange, "bound needs n, d >= 1 and q >= 2");
    require(s.sizeP >= 0 && s.sizeY >= 0, ErrorKind::InvalidRange, "set sizes must be nonnegative");
    const BigRational q(s.q), P(s.sizeP), Y(s.sizeY);
    const BigRational qn(big_pow(s.q, s.n)), qdn(big_pow(s.q, s.d * s.n)), qd(big_pow(s.q, s.d));
    const BigRational one_minus = 1 - 1 / q;
    switch (s.name) {
        case BoundName::MainD1: return qn * one_minus * one_minus * P * Y;
        case BoundName::MainDge2: return qn * P * Y * (1 + Y / q);
        case BoundName::MainIntermediate:
            return qn * (1 - 1 / qd) * P * Y * (1 - 1 / q + Y * (BigRational(big_pow(s.q, s.d - 1)) - 1) / qd);
        case BoundName::Phuong: return qdn * P * Y;
        case BoundName::FlatsCor: {
            BoundSpec t = s;
            t.name = s.d == 1 ? BoundName::MainD1 : BoundName::MainDge2;
            return eval_bound_squared(t);
        }
        case BoundName::FlatsThmDge2:
            return qn * P * Y * (Y / q + BigRational(gaussian_binomial(s.n + s.d, s.d, std::int64_t(s.q))) / qdn);
        case BoundName::FlatsThmD1:
            return qn * one_minus * one_minus * P * Y * BigRational(gaussian_binomial(s.n + 1, 1, std::int64_t(s.q))) / qn;
        case BoundName::LundLeading: return qdn * P * Y;
        case BoundName::ExpanderGeneric: {
            require(s.sizeA > 0 && s.sizeB > 0 && s.sizeP <= s.sizeA && s.sizeY <= s.sizeB, ErrorKind::InvalidRange,
                    "expander bound needs X within A and Y within B");
            return s.lambda3_sq * P * Y * (1 - P / BigRational(s.sizeA)) * (1 - Y / BigRational(s.sizeB));
        }
    }
    fail(ErrorKind::InvalidRange, "unhandled bound");
}

/// |count - center| <= sqrt(bound_sq), with its witnesses.
struct ExactComparison {
    BoundName bound = BoundName::MainD1;
    BigInt incidences = 0;
    BigRational delta = 0;
    BigRational lhs_squared = 0;  // delta^2
    BigRational rhs_squared = 0;  // bound^2
    bool holds = false;
    bool informational = false;

    /// delta^2 / bound^2; empty when bound^2 = 0.
    std::optional<BigRational> ratio() const {
        if (rhs_squared == 0) return std::nullopt;
        return lhs_squared / rhs_squared;
    }
};

/// The expected count |X||Y|/q^d for the incidence bounds, a|X||Y|/|B| for the expander bound.
inline BigRational bound_center(const BoundSpec& s) {
    if (s.name == BoundName::ExpanderGeneric)
        return BigRational(s.degree_a) * BigRational(s.sizeP) * BigRational(s.sizeY) / BigRational(s.sizeB);
    return BigRational(s.sizeP * s.sizeY, big_pow(s.q, s.d));
}

inline ExactComparison compare_discrepancy(const BigInt& count, const BoundSpec& s) {
    ExactComparison c;
    c.bound = s.name;
    c.incidences = count;
    c.delta = BigRational(count) - bound_center(s);
    c.lhs_squared = c.delta * c.delta;
    c.rhs_squared = eval_bound_squared(s);
    c.holds = leq_scaled_sqrt(abs(c.delta), 1, c.rhs_squared);
    c.informational = !s.falsifiable();
    return c;
}

/// Counts I(P, V) directly and compares against the named bound at (|P|, |V|).
inline ExactComparison check_incidence_bound(const VarietyFamily& fam, const PointSet& P, const VarietySet& V,
                                             BoundName name) {
    const BoundSpec s = BoundSpec::for_family(name, fam, P.size(), V.size());
    return compare_discrepancy(BigInt(count_incidences(fam, P, V)), s);
}

/// q^n (1 + |V|/q) < q^{dn}: the regime where the d >= 2 bound beats the earlier one.
inline bool dge2_improves_phuong(const BigInt& q, unsigned n, unsigned d, const BigInt& sizeV) {
    return sizeV < big_pow(q, (d - 1) * n + 1) - q;
}

}  // namespace fqinc
