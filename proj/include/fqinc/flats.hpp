#pragma once

// n-flats of F_q^{n+d}: canonical form, census, the affine group action, and the point-flat bound check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "fqinc/bounds.hpp"
#include "fqinc/error.hpp"
#include "fqinc/gf.hpp"
#include "fqinc/rng.hpp"
#include "fqinc/variety.hpp"

namespace fqinc {

namespace linalg {

/// Reduced row echelon form in place; zero rows dropped. Returns pivot columns.
inline std::vector<std::size_t> rref(const FieldCtx& ctx, std::vector<Coords>& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == ctx.zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const FieldElem inv = ctx.inv(rows[r][c]);
        for (auto& x : rows[r]) x = ctx.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == ctx.zero()) continue;
            const FieldElem f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] = ctx.sub(rows[i][j], ctx.mul(f, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

inline std::size_t rank(const FieldCtx& ctx, std::vector<Coords> rows) { return rref(ctx, rows).size(); }

/// Square matrix given by rows.
inline std::vector<Coords> inverse(const FieldCtx& ctx, const std::vector<Coords>& m) {
    const std::size_t k = m.size();
    std::vector<Coords> aug(k);
    for (std::size_t i = 0; i < k; ++i) {
        require(m[i].size() == k, ErrorKind::DimensionMismatch, "inverse needs a square matrix");
        aug[i] = m[i];
        for (std::size_t j = 0; j < k; ++j) aug[i].push_back(i == j ? ctx.one() : ctx.zero());
    }
    const auto piv = rref(ctx, aug);
    require(piv.size() == k && (k == 0 || piv.back() == k - 1), ErrorKind::SingularMatrix, "matrix is singular");
    std::vector<Coords> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i].assign(aug[i].begin() + std::ptrdiff_t(k), aug[i].end());
    return out;
}

inline Coords mat_vec(const FieldCtx& ctx, const std::vector<Coords>& m, std::span<const FieldElem> x) {
    Coords y(m.size(), ctx.zero());
    for (std::size_t i = 0; i < m.size(); ++i) y[i] = dot(ctx, m[i], x);
    return y;
}

inline std::vector<Coords> mat_mul(const FieldCtx& ctx, const std::vector<Coords>& a, const std::vector<Coords>& b) {
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    std::vector<Coords> c(a.size(), Coords(cols, ctx.zero()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t t = 0; t < b.size(); ++t)
            if (a[i][t] != ctx.zero())
                for (std::size_t j = 0; j < cols; ++j) c[i][j] = ctx.add(c[i][j], ctx.mul(a[i][t], b[t][j]));
    return c;
}

inline Coords sub(const FieldCtx& ctx, std::span<const FieldElem> x, std::span<const FieldElem> y) {
    Coords z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = ctx.sub(x[i], y[i]);
    return z;
}

}  // namespace linalg

/// offset + span(basis). basis is in RREF with pivot columns `pivots`; offset vanishes on every pivot column.
/// Under these two conditions equal flats have equal fields.
struct Flat {
    std::vector<Coords> basis;
    std::vector<std::size_t> pivots;
    Coords offset;

    /// Canonicalizes offset + span(spanning). The span must have dimension `dim`.
    static Flat make(const FieldCtx& ctx, std::vector<Coords> spanning, Coords point, std::size_t dim) {
        for (const auto& v : spanning)
            require(v.size() == point.size(), ErrorKind::DimensionMismatch, "flat vectors must share the ambient dimension");
        Flat f;
        f.pivots = linalg::rref(ctx, spanning);
        require(f.pivots.size() == dim, ErrorKind::DimensionMismatch,
                "spanning set has rank " + std::to_string(f.pivots.size()) + ", expected " + std::to_string(dim));
        f.basis = std::move(spanning);
        f.offset = f.reduce(ctx, point);
        return f;
    }

    std::size_t dim() const { return basis.size(); }
    std::size_t ambient() const { return offset.size(); }

    /// v minus the combination of basis rows that clears v on every pivot column.
    Coords reduce(const FieldCtx& ctx, Coords v) const {
        for (std::size_t r = 0; r < basis.size(); ++r) {
            const FieldElem c = v[pivots[r]];
            if (c == ctx.zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = ctx.sub(v[j], ctx.mul(c, basis[r][j]));
        }
        return v;
    }

    /// pt - offset lies in span(basis), decided by reduction against the RREF rows.
    bool contains(const FieldCtx& ctx, std::span<const FieldElem> pt) const {
        require(pt.size() == ambient(), ErrorKind::DimensionMismatch, "point has wrong dimension");
        for (auto x : reduce(ctx, linalg::sub(ctx, pt, offset)))
            if (x != ctx.zero()) return false;
        return true;
    }

    /// All q^dim points, sorted by index.
    std::vector<std::uint64_t> point_indices(const FieldCtx& ctx) const {
        const std::uint64_t total = checked_pow(ctx.q(), unsigned(dim()));
        std::vector<std::uint64_t> out;
        out.reserve(total);
        for (std::uint64_t u = 0; u < total; ++u) {
            const Coords c = index_to_coords(ctx, dim(), u);
            Coords x = offset;
            for (std::size_t r = 0; r < dim(); ++r)
                for (std::size_t j = 0; j < x.size(); ++j) x[j] = ctx.add(x[j], ctx.mul(c[r], basis[r][j]));
            out.push_back(coords_to_index(ctx, x));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Structural key: pivots, then basis entries, then offset.
    std::vector<std::uint32_t> key() const {
        std::vector<std::uint32_t> k(pivots.begin(), pivots.end());
        for (const auto& row : basis)
            for (auto x : row) k.push_back(x.idx);
        for (auto x : offset) k.push_back(x.idx);
        return k;
    }

    bool operator==(const Flat& o) const { return key() == o.key(); }
    bool operator<(const Flat& o) const { return key() < o.key(); }

    /// Graph of an affine map on the first n coordinates, i.e. pivots are exactly 0..n-1.
    bool is_graph_over_first_coords() const {
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (pivots[r] != r) return false;
        return true;
    }
};

/// The flat spanned by a point set, which must be exactly an affine subspace of dimension dim.
inline Flat flat_from_points(const FieldCtx& ctx, std::size_t ambient, const std::vector<std::uint64_t>& pts,
                             std::size_t dim) {
    require(!pts.empty(), ErrorKind::InvalidRange, "empty point set spans no flat");
    const Coords p0 = index_to_coords(ctx, ambient, pts.front());
    std::vector<Coords> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(linalg::sub(ctx, index_to_coords(ctx, ambient, pts[i]), p0));
    if (diffs.empty()) diffs.push_back(Coords(ambient, ctx.zero()));
    Flat f = Flat::make(ctx, diffs, p0, dim);
    std::vector<std::uint64_t> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    require(f.point_indices(ctx) == sorted, ErrorKind::FormulaMismatch, "point set is not a whole flat");
    return f;
}

inline std::uint64_t expected_flat_count(const FieldCtx& ctx, std::size_t n, std::size_t d) {
    const BigInt c = big_pow(BigInt(ctx.q()), unsigned(d)) * gaussian_binomial(std::int64_t(n + d), std::int64_t(n), ctx.q());
    require(c <= BigInt(std::uint64_t(1) << 40), ErrorKind::TooLarge, "flat count too large");
    return std::uint64_t(c);
}

/// Every n-flat of F_q^{n+d}: pivot sets in lexicographic order, then free RREF entries, then offsets.
inline std::vector<Flat> enumerate_all_flats(const FieldCtx& ctx, std::size_t n, std::size_t d,
                                             std::uint64_t guard = 1000000) {
    require(n >= 1 && d >= 1, ErrorKind::InvalidRange, "need n, d >= 1");
    const std::uint64_t expected = expected_flat_count(ctx, n, d);
    require(expected <= guard, ErrorKind::TooLarge,
            std::to_string(expected) + " flats exceed the census guard " + std::to_string(guard));
    const std::size_t k = n + d;
    std::vector<Flat> out;
    out.reserve(expected);
    std::vector<bool> choose(k, false);
    std::fill(choose.begin(), choose.begin() + std::ptrdiff_t(n), true);
    do {
        std::vector<std::size_t> piv;
        for (std::size_t c = 0; c < k; ++c)
            if (choose[c]) piv.push_back(c);
        std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, col)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = piv[r] + 1; c < k; ++c)
                if (!choose[c]) free.emplace_back(r, c);
        std::vector<std::size_t> nonpiv;
        for (std::size_t c = 0; c < k; ++c)
            if (!choose[c]) nonpiv.push_back(c);
        const std::uint64_t nfill = checked_pow(ctx.q(), unsigned(free.size()));
        const std::uint64_t noff = checked_pow(ctx.q(), unsigned(d));
        for (std::uint64_t fi = 0; fi < nfill; ++fi) {
            const Coords vals = index_to_coords(ctx, free.size(), fi);
            std::vector<Coords> basis(n, Coords(k, ctx.zero()));
            for (std::size_t r = 0; r < n; ++r) basis[r][piv[r]] = ctx.one();
            for (std::size_t t = 0; t < free.size(); ++t) basis[free[t].first][free[t].second] = vals[t];
            for (std::uint64_t oi = 0; oi < noff; ++oi) {
                const Coords ov = index_to_coords(ctx, d, oi);
                Coords off(k, ctx.zero());
                for (std::size_t t = 0; t < d; ++t) off[nonpiv[t]] = ov[t];
                out.push_back(Flat{basis, piv, off});
            }
        }
    } while (std::prev_permutation(choose.begin(), choose.end()));
    require(out.size() == expected, ErrorKind::FormulaMismatch, "flat census disagrees with q^d [n+d choose n]_q");
    return out;
}

struct FlatCensus {
    std::vector<Flat> all;            // the full census F1
    std::vector<bool> in_family;      // all[i] lies in F0
    std::vector<Flat> family;         // F0 by variety index of the flat family
    std::uint64_t family_count = 0;   // |F0|, distinct
    bool family_subset = false;       // every F0 member found in F1
    bool structural_agrees = false;   // in_family matches the pivot criterion
};

/// Splits the census into members of the flat family (found through the point sets of its varieties) and the rest.
inline FlatCensus flat_family_census(const FieldCtx& ctx, std::size_t n, std::size_t d, std::uint64_t guard = 1000000) {
    FlatCensus c;
    c.all = enumerate_all_flats(ctx, n, d, guard);
    const VarietyFamily fam = VarietyFamily::flat_family(ctx, n, d);
    std::set<Flat> fam_set;
    for (std::uint64_t v = 0; v < fam.num_varieties(); ++v) {
        c.family.push_back(flat_from_points(ctx, n + d, fam.variety_point_indices(v), n));
        fam_set.insert(c.family.back());
    }
    c.family_count = fam_set.size();
    const std::set<Flat> all_set(c.all.begin(), c.all.end());
    c.family_subset = std::includes(all_set.begin(), all_set.end(), fam_set.begin(), fam_set.end());
    c.in_family.resize(c.all.size());
    c.structural_agrees = true;
    for (std::size_t i = 0; i < c.all.size(); ++i) {
        c.in_family[i] = fam_set.count(c.all[i]) > 0;
        c.structural_agrees = c.structural_agrees && c.in_family[i] == c.all[i].is_graph_over_first_coords();
    }
    return c;
}

/// x -> matrix x + shift, matrix invertible.
struct AffineMap {
    std::vector<Coords> matrix;
    Coords shift;

    static AffineMap make(const FieldCtx& ctx, std::vector<Coords> m, Coords s) {
        require(m.size() == s.size(), ErrorKind::DimensionMismatch, "matrix and shift dimensions differ");
        for (const auto& row : m) require(row.size() == s.size(), ErrorKind::DimensionMismatch, "matrix must be square");
        require(linalg::rank(ctx, m) == m.size(), ErrorKind::SingularMatrix, "affine map needs an invertible matrix");
        return {std::move(m), std::move(s)};
    }

    static AffineMap identity(const FieldCtx& ctx, std::size_t k) {
        std::vector<Coords> m(k, Coords(k, ctx.zero()));
        for (std::size_t i = 0; i < k; ++i) m[i][i] = ctx.one();
        return {m, Coords(k, ctx.zero())};
    }

    /// Uniform over AGL(k, q): rejection-sampled invertible matrix, uniform shift.
    static AffineMap random(const FieldCtx& ctx, std::size_t k, Rng& rng) {
        for (;;) {
            std::vector<Coords> m(k, Coords(k));
            for (auto& row : m)
                for (auto& x : row) x = {std::uint32_t(uniform_below(rng, ctx.q()))};
            if (linalg::rank(ctx, m) != k) continue;
            Coords s(k);
            for (auto& x : s) x = {std::uint32_t(uniform_below(rng, ctx.q()))};
            return {std::move(m), std::move(s)};
        }
    }
};

inline Coords apply_affine(const FieldCtx& ctx, const AffineMap& g, std::span<const FieldElem> pt) {
    require(pt.size() == g.shift.size(), ErrorKind::DimensionMismatch, "point has wrong dimension");
    Coords y = linalg::mat_vec(ctx, g.matrix, pt);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = ctx.add(y[i], g.shift[i]);
    return y;
}

inline std::uint64_t apply_affine_index(const FieldCtx& ctx, const AffineMap& g, std::uint64_t pt) {
    return coords_to_index(ctx, apply_affine(ctx, g, index_to_coords(ctx, g.shift.size(), pt)));
}

inline Flat apply_affine_flat(const FieldCtx& ctx, const AffineMap& g, const Flat& f) {
    std::vector<Coords> dirs;
    for (const auto& b : f.basis) dirs.push_back(linalg::mat_vec(ctx, g.matrix, b));
    return Flat::make(ctx, std::move(dirs), apply_affine(ctx, g, f.offset), f.dim());
}

/// A g in AGL with g(from) = to. Both bases are completed by the unit vectors of their non-pivot columns;
/// the linear part sends one completed basis to the other.
inline AffineMap map_between(const FieldCtx& ctx, const Flat& from, const Flat& to) {
    require(from.dim() == to.dim() && from.ambient() == to.ambient(), ErrorKind::DimensionMismatch,
            "flats must have equal dimension and ambient space");
    const std::size_t k = from.ambient();
    auto completed = [&](const Flat& f) {
        std::vector<Coords> cols = f.basis;
        for (std::size_t c = 0; c < k; ++c)
            if (std::find(f.pivots.begin(), f.pivots.end(), c) == f.pivots.end()) {
                Coords e(k, ctx.zero());
                e[c] = ctx.one();
                cols.push_back(e);
            }
        // rows -> column matrix
        std::vector<Coords> m(k, Coords(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m[i][j] = cols[j][i];
        return m;
    };
    const auto S = completed(from), T = completed(to);
    std::vector<Coords> M = linalg::mat_mul(ctx, T, linalg::inverse(ctx, S));
    const Coords mo = linalg::mat_vec(ctx, M, from.offset);
    AffineMap g = AffineMap::make(ctx, std::move(M), linalg::sub(ctx, to.offset, mo));
    require(apply_affine_flat(ctx, g, from) == to, ErrorKind::FormulaMismatch, "constructed map misses the target flat");
    return g;
}

/// I(P, F) by RREF membership.
inline std::uint64_t count_flat_incidences(const FieldCtx& ctx, std::size_t ambient, const std::vector<std::uint64_t>& P,
                                           const std::vector<Flat>& F) {
    std::vector<Coords> pts;
    for (auto p : P) pts.push_back(index_to_coords(ctx, ambient, p));
    std::uint64_t count = 0;
    for (const auto& f : F)
        for (const auto& x : pts) count += f.contains(ctx, x);
    return count;
}

struct FlatsTheoremCheck {
    ExactComparison theorem;
    ExactComparison leading;                    // informational only
    std::optional<ExactComparison> family_bound;  // when every flat belongs to the flat family
};

inline FlatsTheoremCheck check_flats_theorem(const FieldCtx& ctx, std::size_t n, std::size_t d,
                                             const std::vector<std::uint64_t>& P, const std::vector<Flat>& F) {
    const BigInt I = count_flat_incidences(ctx, n + d, P, F);
    BoundSpec s;
    s.q = ctx.q();
    s.n = unsigned(n);
    s.d = unsigned(d);
    s.sizeP = P.size();
    s.sizeY = F.size();
    FlatsTheoremCheck out;
    s.name = d == 1 ? BoundName::FlatsThmD1 : BoundName::FlatsThmDge2;
    out.theorem = compare_discrepancy(I, s);
    s.name = BoundName::LundLeading;
    out.leading = compare_discrepancy(I, s);
    if (std::all_of(F.begin(), F.end(), [](const Flat& f) { return f.is_graph_over_first_coords(); })) {
        s.name = BoundName::FlatsCor;
        out.family_bound = compare_discrepancy(I, s);
    }
    return out;
}

/// "pivots=c1,c2; basis r1 | r2; offset o", entries as canonical element indices.
inline void dump_flat(std::ostream& os, const Flat& f) {
    auto row = [&](const Coords& v) {
        for (std::size_t j = 0; j < v.size(); ++j) os << (j ? " " : "") << v[j].idx;
    };
    os << "pivots=";
    for (std::size_t i = 0; i < f.pivots.size(); ++i) os << (i ? "," : "") << f.pivots[i];
    os << "; basis ";
    for (std::size_t r = 0; r < f.basis.size(); ++r) {
        if (r) os << " | ";
        row(f.basis[r]);
    }
    os << "; offset ";
    row(f.offset);
    os << '\n';
}

}  // namespace fqinc
