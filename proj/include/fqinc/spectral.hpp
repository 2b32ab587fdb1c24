#pragma once

// Exact spectral certificates for the two Gram matrices.
//
// Both A = T'T and B = TT' have spectrum {q^{(d+1)n}, q^{dn}, 0}. We certify this without any
// eigendecomposition: the annihilating polynomial x(x - lam1)(x - lam0) kills G, and trace, trace of G^2
// and rank then pin all three multiplicities. Character eigenvectors are checked in Z[zeta_p], and the
// eigenspace projectors are polynomials in G with rational coefficients.

#include <cstdint>
#include <string>
#include <vector>

#include "fqinc/chr.hpp"
#include "fqinc/error.hpp"
#include "fqinc/incidence.hpp"
#include "fqinc/numeric.hpp"
#include "fqinc/variety.hpp"

namespace fqinc {

struct SpectrumSpec {
    GramSide side;
    BigInt lam0, lam1;  // lam2 = 0
    BigInt mult0, mult1, mult2;
    BigInt order;

    static SpectrumSpec for_family(const VarietyFamily& fam, GramSide side) {
        const BigInt q = fam.ctx().q();
        const unsigned n = unsigned(fam.n()), d = unsigned(fam.d());
        SpectrumSpec s{side, big_pow(q, (d + 1) * n), big_pow(q, d * n), 1, 0, 0, 0};
        s.mult1 = big_pow(q, n + d) - big_pow(q, n);
        if (side == GramSide::Points) {
            s.order = big_pow(q, n + d);
            s.mult2 = big_pow(q, n) - 1;
        } else {
            s.order = big_pow(q, d * (n + 1));
            s.mult2 = big_pow(q, d * (n + 1)) - big_pow(q, n + d) + big_pow(q, n) - 1;
        }
        return s;
    }

    BigInt expected_trace() const { return lam0 * mult0 + lam1 * mult1; }
    BigInt expected_trace_sq() const { return lam0 * lam0 * mult0 + lam1 * lam1 * mult1; }
};

struct AnnihilationCertificate {
    bool pass = false;
    BigInt max_gram_entry;
    BigInt max_intermediate_entry;  // of G(G - lam1 I)
};

/// G (G - lam1 I)(G - lam0 I) == 0 as an exact integer identity.
inline AnnihilationCertificate annihilation_check(const GramMatrix& g, const SpectrumSpec& s) {
    require(BigInt(g.order()) == s.order, ErrorKind::DimensionMismatch, "Gram order does not match spectrum spec");
    const IntMatrix& G = g.entries;
    const IntMatrix partial = G * G.minus_scalar(s.lam1);
    const IntMatrix full = partial * G.minus_scalar(s.lam0);
    return {full.is_zero(), G.max_abs(), partial.max_abs()};
}

struct MultiplicityCertificate {
    bool pass = false;
    BigInt trace, trace_sq;
    std::size_t rank = 0;
    BigInt mult0, mult1, mult2;  // the values the three identities certify
};

/// trace(G), trace(G^2) and rank(G) against the expected multiplicities. Given annihilation, these three
/// linear conditions determine mult0, mult1, mult2 uniquely (lam0 != lam1, both nonzero).
inline MultiplicityCertificate multiplicity_check(const GramMatrix& g, const SpectrumSpec& s) {
    const IntMatrix& G = g.entries;
    MultiplicityCertificate c;
    c.trace = G.trace();
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < G.cols(); ++j) c.trace_sq += G(i, j) * G(j, i);
    c.rank = bareiss_rank(G);
    // solve m0*l0 + m1*l1 = tr, m0*l0^2 + m1*l1^2 = tr2
    const BigInt det = s.lam0 * s.lam1 * (s.lam1 - s.lam0);
    const BigInt n0 = c.trace * s.lam1 * s.lam1 - c.trace_sq * s.lam1;
    const BigInt n1 = c.trace_sq * s.lam0 - c.trace * s.lam0 * s.lam0;
    const bool integral = n0 % det == 0 && n1 % det == 0;
    c.mult0 = integral ? BigInt(n0 / det) : BigInt(-1);
    c.mult1 = integral ? BigInt(n1 / det) : BigInt(-1);
    c.mult2 = BigInt(g.order()) - BigInt(c.rank);
    c.pass = integral && c.trace == s.expected_trace() && c.trace_sq == s.expected_trace_sq() &&
             BigInt(c.rank) == s.mult0 + s.mult1 && c.mult0 == s.mult0 && c.mult1 == s.mult1 && c.mult2 == s.mult2;
    return c;
}

/// Eigenvalue predicted for a character: lam0 for the trivial one, lam1 or 0 by the shape of its index vector.
inline BigInt expected_eigenvalue(const VarietyFamily& fam, const SpectrumSpec& s, std::uint64_t char_index) {
    const FieldCtx& ctx = fam.ctx();
    const std::size_t n = fam.n(), d = fam.d();
    if (char_index == 0) return s.lam0;
    if (s.side == GramSide::Points) {
        // v|[n+1, n+d] != 0
        return char_index / fam.num_base() != 0 ? s.lam1 : BigInt(0);
    }
    const Coords a = index_to_coords(ctx, d * (n + 1), char_index);
    // a_i = c_i (y, 1): c_i is forced to be a_{i,n+1}; y comes from any i with c_i != 0
    std::size_t lead = d;
    for (std::size_t i = 0; i < d; ++i)
        if (a[i * (n + 1) + n] != ctx.zero()) {
            lead = i;
            break;
        }
    if (lead == d) return 0;
    const FieldElem c_lead_inv = ctx.inv(a[lead * (n + 1) + n]);
    Coords y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = ctx.mul(a[lead * (n + 1) + j], c_lead_inv);
    for (std::size_t i = 0; i < d; ++i) {
        const FieldElem ci = a[i * (n + 1) + n];
        for (std::size_t j = 0; j < n; ++j)
            if (a[i * (n + 1) + j] != ctx.mul(ci, y[j])) return 0;
    }
    return s.lam1;
}

struct CharacterCertificate {
    bool pass = false;
    std::uint64_t n_checked = 0;
    std::uint64_t n_passed = 0;
    std::uint64_t row_counts[3] = {0, 0, 0};  // characters assigned lam0, lam1, 0
};

/// For every character chi of the ambient group (F_q^{n+d}, or F_q^{d(n+1)} via a <-> (f_{a_1},...,f_{a_d})):
/// G chi = lambda chi entrywise in Z[zeta_p], with lambda from expected_eigenvalue, and lambda also equal
/// to <z, chi> where z is the column of G at the identity.
inline CharacterCertificate character_eigenvector_check(const GramMatrix& g, const VarietyFamily& fam,
                                                        const Guards& guards = {}) {
    const SpectrumSpec s = SpectrumSpec::for_family(fam, g.side);
    require(g.order() <= guards.max_gram_order, ErrorKind::TooLarge, "Gram order exceeds guard");
    const FieldCtx& ctx = fam.ctx();
    const std::uint32_t p = ctx.p();
    const std::size_t k = g.side == GramSide::Points ? fam.n() + fam.d() : fam.d() * (fam.n() + 1);
    const std::size_t order = g.order();
    const IntMatrix& G = g.entries;
    std::vector<BigInt> z(order);
    for (std::size_t u = 0; u < order; ++u) z[u] = G(u, 0);

    CharacterCertificate cert;
    for (std::uint64_t ci = 0; ci < order; ++ci) {
        const Character chi = Character::from_index(ctx, k, ci);
        const auto e = char_exponents(chi);
        const BigInt lambda = expected_eigenvalue(fam, s, ci);
        cert.row_counts[lambda == s.lam0 ? 0 : lambda == s.lam1 ? 1 : 2] += 1;
        bool ok = char_inner_product(std::span<const BigInt>(z), chi) == CycInt::from_int(p, lambda);
        for (std::size_t v = 0; v < order && ok; ++v) {
            std::vector<BigInt> buckets(p);
            for (std::size_t u = 0; u < order; ++u)
                if (G(v, u) != 0) buckets[e[u]] += G(v, u);
            ok = CycInt::from_buckets(p, std::move(buckets)) == lambda * CycInt::zeta_pow(p, e[v]);
        }
        ++cert.n_checked;
        cert.n_passed += ok;
    }
    cert.pass = cert.n_passed == cert.n_checked && BigInt(cert.row_counts[0]) == s.mult0 &&
                BigInt(cert.row_counts[1]) == s.mult1 && BigInt(cert.row_counts[2]) == s.mult2;
    return cert;
}

/// Rational matrix numer / denom (denom > 0) projecting onto one eigenspace.
struct Projector {
    BigInt eigenvalue;
    BigInt denom;
    IntMatrix numer;

    BigRational entry(std::size_t i, std::size_t j) const { return BigRational(numer(i, j), denom); }
    BigRational trace() const { return BigRational(numer.trace(), denom); }
    bool idempotent() const { return numer * numer == numer.scaled(denom); }
};

struct ProjectorSet {
    Projector top, middle, zero;  // eigenvalues lam0, lam1, 0
    bool verified = false;        // idempotent, pairwise orthogonal, summing to I
};

/// Lagrange interpolation on {lam0, lam1, 0}:
///   P_lam0 = G(G - lam1)/(lam0(lam0 - lam1)),  P_lam1 = G(G - lam0)/(lam1(lam1 - lam0)),  P_0 = I - P_lam0 - P_lam1.
/// Requires a passed annihilation certificate.
inline ProjectorSet projectors(const GramMatrix& g, const SpectrumSpec& s) {
    const IntMatrix& G = g.entries;
    const std::size_t N = G.rows();
    ProjectorSet ps;
    ps.top = {s.lam0, s.lam0 * (s.lam0 - s.lam1), G * G.minus_scalar(s.lam1)};
    // lam1 - lam0 < 0: flip signs so the denominator is positive
    ps.middle = {s.lam1, s.lam1 * (s.lam0 - s.lam1), (G * G.minus_scalar(s.lam0)).scaled(-1)};
    const BigInt L = boost::multiprecision::lcm(ps.top.denom, ps.middle.denom);
    IntMatrix z = IntMatrix::identity(N).scaled(L) - ps.top.numer.scaled(L / ps.top.denom) -
                  ps.middle.numer.scaled(L / ps.middle.denom);
    ps.zero = {0, L, std::move(z)};
    const bool orth = (ps.top.numer * ps.middle.numer).is_zero() && (ps.top.numer * ps.zero.numer).is_zero() &&
                      (ps.middle.numer * ps.zero.numer).is_zero();
    ps.verified = orth && ps.top.idempotent() && ps.middle.idempotent() && ps.zero.idempotent();
    return ps;
}

struct ProjectionNorms {
    BigRational top, middle, zero;
};

/// 1_S' P_lambda 1_S for each eigenspace.
inline ProjectionNorms projection_norm(const ProjectorSet& ps, const std::vector<std::uint64_t>& S) {
    auto quad = [&](const Projector& pr) {
        BigInt acc = 0;
        for (auto i : S)
            for (auto j : S) acc += pr.numer(i, j);
        return BigRational(acc, pr.denom);
    };
    return {quad(ps.top), quad(ps.middle), quad(ps.zero)};
}

/// Middle-eigenspace bound for indicator vectors: (1 - 1/q^d)|P| on the points side,
/// (|V|/q^{(d-1)n}) (1 - 1/q + |V|(q^{d-1} - 1)/q^d) on the varieties side.
inline BigRational middle_projection_bound(const VarietyFamily& fam, GramSide side, std::uint64_t size) {
    const BigInt q = fam.ctx().q();
    const unsigned n = unsigned(fam.n()), d = unsigned(fam.d());
    const BigRational sz = BigRational(BigInt(size));
    if (side == GramSide::Points) return (1 - BigRational(1, big_pow(q, d))) * sz;
    return sz / BigRational(big_pow(q, (d - 1) * n)) *
           (1 - BigRational(1, q) + sz * BigRational(big_pow(q, d - 1) - 1, big_pow(q, d)));
}

/// |S|^2 / order: the top-eigenspace norm.
inline BigRational top_projection_value(const SpectrumSpec& s, std::uint64_t size) {
    return BigRational(BigInt(size) * BigInt(size), s.order);
}

/// Throwing forms, for callers that treat a failed certificate as fatal.
inline void ensure(const AnnihilationCertificate& c) {
    require(c.pass, ErrorKind::AnnihilationFailed, "G(G - lam1 I)(G - lam0 I) != 0");
}
inline void ensure(const MultiplicityCertificate& c) {
    require(c.pass, ErrorKind::MultiplicityMismatch, "trace / trace^2 / rank disagree with the expected multiplicities");
}
inline void ensure(const CharacterCertificate& c) {
    require(c.pass, ErrorKind::EigenvectorMismatch,
            std::to_string(c.n_checked - c.n_passed) + " characters are not eigenvectors with the tabulated eigenvalue");
}

}  // namespace fqinc
