#pragma once

// Incidence matrix T (rows: varieties, columns: points), incidence counts, and the Gram matrices
// A = T'T (points side) and B = TT' (varieties side), each checked against its closed-form entries.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fqinc/error.hpp"
#include "fqinc/numeric.hpp"
#include "fqinc/variety.hpp"

namespace fqinc {

/// Sorted, duplicate-free canonical indices drawn from [0, universe). Tag keeps point and variety sets apart.
template <class Tag>
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::vector<std::uint64_t> idx, std::uint64_t universe) : idx_(std::move(idx)) {
        std::sort(idx_.begin(), idx_.end());
        require(std::adjacent_find(idx_.begin(), idx_.end()) == idx_.end(), ErrorKind::InvalidRange,
                "index set has duplicates");
        require(idx_.empty() || idx_.back() < universe, ErrorKind::IndexOutOfRange, "index set entry out of range");
    }

    static IndexSet all(std::uint64_t universe) {
        std::vector<std::uint64_t> v(universe);
        for (std::uint64_t i = 0; i < universe; ++i) v[i] = i;
        return IndexSet(std::move(v), universe);
    }

    std::size_t size() const { return idx_.size(); }
    bool empty() const { return idx_.empty(); }
    const std::vector<std::uint64_t>& indices() const { return idx_; }
    auto begin() const { return idx_.begin(); }
    auto end() const { return idx_.end(); }
    bool contains(std::uint64_t i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

private:
    std::vector<std::uint64_t> idx_;
};

struct PointTag {};
struct VarietyTag {};
using PointSet = IndexSet<PointTag>;
using VarietySet = IndexSet<VarietyTag>;

/// Dense 0/1 matrix, one bit per (variety, point).
class IncidenceMatrix {
public:
    IncidenceMatrix(std::uint64_t rows, std::uint64_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

    std::uint64_t rows() const { return rows_; }
    std::uint64_t cols() const { return cols_; }

    bool get(std::uint64_t r, std::uint64_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u; }
    void set(std::uint64_t r, std::uint64_t c) { bits_[r * words_ + c / 64] |= std::uint64_t(1) << (c % 64); }

    std::uint64_t row_sum(std::uint64_t r) const {
        std::uint64_t s = 0;
        for (std::uint64_t w = 0; w < words_; ++w) s += std::uint64_t(__builtin_popcountll(bits_[r * words_ + w]));
        return s;
    }

    std::vector<std::uint64_t> column_sums() const {
        std::vector<std::uint64_t> s(cols_, 0);
        for (std::uint64_t r = 0; r < rows_; ++r)
            for (std::uint64_t c = 0; c < cols_; ++c) s[c] += get(r, c);
        return s;
    }

    /// Number of columns where rows r1 and r2 both have a one.
    std::uint64_t row_overlap(std::uint64_t r1, std::uint64_t r2) const {
        std::uint64_t s = 0;
        for (std::uint64_t w = 0; w < words_; ++w)
            s += std::uint64_t(__builtin_popcountll(bits_[r1 * words_ + w] & bits_[r2 * words_ + w]));
        return s;
    }

    /// "rows cols" then one line of 0/1 digits per row.
    void dump(std::ostream& os) const {
        os << rows_ << ' ' << cols_ << '\n';
        for (std::uint64_t r = 0; r < rows_; ++r) {
            for (std::uint64_t c = 0; c < cols_; ++c) os << (get(r, c) ? '1' : '0');
            os << '\n';
        }
    }

private:
    std::uint64_t rows_, cols_, words_;
    std::vector<std::uint64_t> bits_;
};

struct Guards {
    std::uint64_t max_matrix_bits = std::uint64_t(1) << 26;
    std::uint64_t max_gram_order = 2048;
    std::uint64_t max_flats = 1000000;
};

/// Builds T row by row from the variety point lists, then checks both degree invariants:
/// row sums q^n, column sums q^{dn}.
inline IncidenceMatrix build_T(const VarietyFamily& fam, const Guards& g = {}) {
    const std::uint64_t rows = fam.num_varieties(), cols = fam.num_points();
    require(rows <= g.max_matrix_bits / cols, ErrorKind::TooLarge,
            "incidence matrix " + std::to_string(rows) + "x" + std::to_string(cols) + " exceeds the bit guard");
    IncidenceMatrix t(rows, cols);
    for (std::uint64_t v = 0; v < rows; ++v)
        for (auto pt : fam.variety_point_indices(v)) t.set(v, pt);
    const std::uint64_t col_degree = checked_pow(fam.ctx().q(), unsigned(fam.d() * fam.n()));
    for (std::uint64_t v = 0; v < rows; ++v)
        require(t.row_sum(v) == fam.num_base(), ErrorKind::FormulaMismatch, "row sum differs from q^n");
    for (auto s : t.column_sums())
        require(s == col_degree, ErrorKind::FormulaMismatch, "column sum differs from q^{dn}");
    return t;
}

/// I(P, V) by direct membership tests.
inline std::uint64_t count_incidences(const VarietyFamily& fam, const PointSet& P, const VarietySet& V) {
    std::uint64_t count = 0;
    if (P.empty() || V.empty()) return 0;
    for (auto v : V) {
        // each variety has exactly q^n points; intersect with P
        for (auto pt : fam.variety_point_indices(v))
            if (P.contains(pt)) ++count;
    }
    return count;
}

/// I(P, V) = 1_V T 1_P' on a materialized matrix.
inline std::uint64_t count_incidences(const IncidenceMatrix& t, const PointSet& P, const VarietySet& V) {
    std::uint64_t count = 0;
    for (auto v : V)
        for (auto pt : P) count += t.get(v, pt);
    return count;
}

enum class GramSide { Points, Varieties };

inline std::string to_string(GramSide s) { return s == GramSide::Points ? "points" : "varieties"; }

struct GramMatrix {
    GramSide side;
    IntMatrix entries;
    std::size_t order() const { return entries.rows(); }
};

/// A_{u,v} = q^{dn} if u = v; q^{d(n-1)} if u|[n] != v|[n]; 0 otherwise.
inline BigInt gram_points_entry(const VarietyFamily& fam, std::uint64_t u, std::uint64_t v) {
    const std::uint64_t q = fam.ctx().q();
    const unsigned dn = unsigned(fam.d() * fam.n());
    if (u == v) return big_pow(BigInt(q), dn);
    if (u % fam.num_base() != v % fam.num_base()) return big_pow(BigInt(q), dn - unsigned(fam.d()));
    return 0;
}

/// B_{a,a~} = #{x in F_q^n : f_{a_i}(x) = f_{a~_i}(x) for all i}, counted directly.
inline BigInt gram_varieties_entry(const VarietyFamily& fam, std::uint64_t va, std::uint64_t vb) {
    const VarietyId a = fam.variety_at(va), b = fam.variety_at(vb);
    std::uint64_t count = 0;
    for (std::uint64_t u = 0; u < fam.num_base(); ++u) {
        const auto x = index_to_coords(fam.ctx(), fam.n(), u);
        bool all = true;
        for (std::size_t i = 1; i <= fam.d() && all; ++i) all = fam.f_eval(i, a.a[i - 1], x) == fam.f_eval(i, b.a[i - 1], x);
        count += all;
    }
    return count;
}

/// A = T'T, from the matrix product and cross-checked entrywise against the closed form.
inline GramMatrix gram_points(const VarietyFamily& fam, const IncidenceMatrix& t, const Guards& g = {}) {
    const std::uint64_t order = fam.num_points();
    require(order <= g.max_gram_order, ErrorKind::TooLarge, "points-side Gram order exceeds guard");
    // column lists of T
    std::vector<std::vector<std::uint64_t>> rows_of(order);
    for (std::uint64_t v = 0; v < t.rows(); ++v)
        for (std::uint64_t c = 0; c < order; ++c)
            if (t.get(v, c)) rows_of[c].push_back(v);
    IntMatrix a(order, order);
    for (std::uint64_t u = 0; u < order; ++u) {
        for (std::uint64_t w = u; w < order; ++w) {
            std::uint64_t s = 0;
            std::size_t i = 0, j = 0;
            const auto &ru = rows_of[u], &rw = rows_of[w];
            while (i < ru.size() && j < rw.size()) {
                if (ru[i] == rw[j]) ++s, ++i, ++j;
                else if (ru[i] < rw[j]) ++i;
                else ++j;
            }
            a(u, w) = s;
            a(w, u) = s;
            require(a(u, w) == gram_points_entry(fam, u, w), ErrorKind::FormulaMismatch,
                    "T'T entry disagrees with the closed form at (" + std::to_string(u) + "," + std::to_string(w) + ")");
        }
    }
    return {GramSide::Points, std::move(a)};
}

inline GramMatrix gram_points(const VarietyFamily& fam, const Guards& g = {}) { return gram_points(fam, build_T(fam, g), g); }

/// B = TT', from row overlaps and cross-checked entrywise against direct root counting.
inline GramMatrix gram_varieties(const VarietyFamily& fam, const IncidenceMatrix& t, const Guards& g = {}) {
    const std::uint64_t order = fam.num_varieties();
    require(order <= g.max_gram_order, ErrorKind::TooLarge, "varieties-side Gram order exceeds guard");
    IntMatrix b(order, order);
    for (std::uint64_t u = 0; u < order; ++u) {
        for (std::uint64_t w = u; w < order; ++w) {
            b(u, w) = t.row_overlap(u, w);
            b(w, u) = b(u, w);
            require(b(u, w) == gram_varieties_entry(fam, u, w), ErrorKind::FormulaMismatch,
                    "TT' entry disagrees with root counting at (" + std::to_string(u) + "," + std::to_string(w) + ")");
        }
    }
    return {GramSide::Varieties, std::move(b)};
}

inline GramMatrix gram_varieties(const VarietyFamily& fam, const Guards& g = {}) {
    return gram_varieties(fam, build_T(fam, g), g);
}

/// "rows cols" then whitespace-separated decimal rows.
inline void dump_matrix(std::ostream& os, const IntMatrix& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
        os << '\n';
    }
}

}  // namespace fqinc
