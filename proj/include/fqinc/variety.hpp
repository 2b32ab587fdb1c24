#pragma once

// Varieties V_{a_1..a_d} in F_q^{n+d}: graphs of x -> (h_i + f_{a_i})(x), i = 1..d, over x in F_q^n,
// with f_{a_i}(x) = sum_j a_{i,j} x_j^{b_{i,j}} + a_{i,n+1}.
//
// Varieties are handled by id; point lists are materialized only on request.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fqinc/error.hpp"
#include "fqinc/gf.hpp"

namespace fqinc {

/// Sparse polynomial over F_q in n variables.
class Poly {
public:
    struct Term {
        FieldElem coeff;
        std::vector<std::uint32_t> exps;  // length = arity
    };

    Poly() = default;
    explicit Poly(std::size_t arity) : arity_(arity) {}
    Poly(std::size_t arity, std::vector<Term> terms) : arity_(arity), terms_(std::move(terms)) {
        for (const auto& t : terms_)
            require(t.exps.size() == arity_, ErrorKind::DimensionMismatch, "monomial arity mismatch");
    }

    /// Sum of squares x_1^2 + ... + x_n^2.
    static Poly sum_of_squares(const FieldCtx& ctx, std::size_t arity) {
        std::vector<Term> ts;
        for (std::size_t j = 0; j < arity; ++j) {
            Term t{ctx.one(), std::vector<std::uint32_t>(arity, 0)};
            t.exps[j] = 2;
            ts.push_back(std::move(t));
        }
        return Poly(arity, std::move(ts));
    }

    /// Parses terms like "2*x1^2*x2 + x2 + 1" or "-x1^2". A numeric factor is the canonical index of a
    /// field element; "-" negates the term; "0" or "" is the zero polynomial.
    static Poly parse(const FieldCtx& ctx, std::size_t arity, const std::string& text) {
        std::string s;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        Poly out(arity);
        if (s.empty()) return out;
        std::vector<std::pair<bool, std::string>> raw;  // (negated, body)
        std::size_t start = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            start = 1;
        }
        for (std::size_t i = start; i <= s.size(); ++i) {
            if (i == s.size() || s[i] == '+' || s[i] == '-') {
                require(i > start, ErrorKind::ParseError, "empty term in '" + text + "'");
                raw.emplace_back(neg, s.substr(start, i - start));
                if (i < s.size()) neg = s[i] == '-';
                start = i + 1;
            }
        }
        for (const auto& [negated, body] : raw) {
            Term t{ctx.one(), std::vector<std::uint32_t>(arity, 0)};
            std::size_t pos = 0;
            while (pos <= body.size()) {
                auto star = body.find('*', pos);
                if (star == std::string::npos) star = body.size();
                const std::string f = body.substr(pos, star - pos);
                require(!f.empty(), ErrorKind::ParseError, "empty factor in '" + text + "'");
                if (f[0] == 'x') {
                    auto caret = f.find('^');
                    const std::string var = f.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
                    require(!var.empty() && var.find_first_not_of("0123456789") == std::string::npos,
                            ErrorKind::ParseError, "bad variable '" + f + "'");
                    const std::size_t j = std::stoul(var);
                    require(j >= 1 && j <= arity, ErrorKind::ParseError, "variable index out of range in '" + f + "'");
                    std::uint32_t e = 1;
                    if (caret != std::string::npos) {
                        const std::string es = f.substr(caret + 1);
                        require(!es.empty() && es.find_first_not_of("0123456789") == std::string::npos,
                                ErrorKind::ParseError, "bad exponent in '" + f + "'");
                        e = static_cast<std::uint32_t>(std::stoul(es));
                    }
                    t.exps[j - 1] += e;
                } else {
                    require(f.find_first_not_of("0123456789") == std::string::npos, ErrorKind::ParseError,
                            "bad coefficient '" + f + "'");
                    t.coeff = ctx.mul(t.coeff, index_to_elem(ctx, std::stoull(f)));
                }
                pos = star + 1;
            }
            if (negated) t.coeff = ctx.neg(t.coeff);
            if (t.coeff != ctx.zero()) out.terms_.push_back(std::move(t));
        }
        return out;
    }

    std::size_t arity() const { return arity_; }
    const std::vector<Term>& terms() const { return terms_; }

    std::uint32_t total_degree() const {
        std::uint32_t deg = 0;
        for (const auto& t : terms_) deg = std::max(deg, std::accumulate(t.exps.begin(), t.exps.end(), 0u));
        return deg;
    }

    FieldElem eval(const FieldCtx& ctx, std::span<const FieldElem> x) const {
        require(x.size() == arity_, ErrorKind::DimensionMismatch, "polynomial evaluated at wrong arity");
        FieldElem s = ctx.zero();
        for (const auto& t : terms_) {
            FieldElem m = t.coeff;
            for (std::size_t j = 0; j < arity_; ++j)
                if (t.exps[j]) m = ctx.mul(m, ctx.pow(x[j], t.exps[j]));
            s = ctx.add(s, m);
        }
        return s;
    }

private:
    std::size_t arity_ = 0;
    std::vector<Term> terms_;
};

/// Parameters a = (a_1, ..., a_d), each a_i in F_q^{n+1}.
struct VarietyId {
    std::vector<Coords> a;
    bool operator==(const VarietyId&) const = default;
};

/// A point of F_q^{n+d}.
struct Point {
    Coords x;
    bool operator==(const Point&) const = default;
};

class VarietyFamily {
public:
    static constexpr std::uint64_t kTableLimit = 1u << 16;

    /// Validates n, d >= 1, gcd(b_{i,j}, q-1) = 1 and deg h_i <= q-1, then tabulates h_i and x^{b_{i,j}}.
    static VarietyFamily make(FieldCtx ctx, std::size_t n, std::size_t d, std::vector<Poly> h,
                              std::vector<std::vector<std::uint64_t>> b) {
        require(n >= 1 && d >= 1, ErrorKind::InvalidFamily, "n and d must both be >= 1");
        require(h.size() == d, ErrorKind::InvalidFamily, "need exactly d polynomials h_i");
        require(b.size() == d, ErrorKind::InvalidFamily, "need exactly d exponent vectors b_i");
        for (std::size_t i = 0; i < d; ++i) {
            require(h[i].arity() == n, ErrorKind::InvalidFamily, "h_i must be a polynomial in n variables");
            require(h[i].total_degree() <= ctx.q() - 1, ErrorKind::InvalidFamily,
                    "h_" + std::to_string(i + 1) + " has total degree > q-1");
            require(b[i].size() == n, ErrorKind::InvalidFamily, "b_i must have length n");
            for (auto bij : b[i])
                require(is_power_permutation(ctx, bij), ErrorKind::InvalidFamily,
                        "exponent " + std::to_string(bij) + " is not coprime to q-1 = " + std::to_string(ctx.q() - 1));
        }
        VarietyFamily f;
        f.ctx_ = std::move(ctx);
        f.n_ = n;
        f.d_ = d;
        f.h_ = std::move(h);
        f.b_ = std::move(b);
        f.num_base_ = checked_count(f.ctx_.q(), n);
        f.num_points_ = checked_count(f.ctx_.q(), n + d);
        f.num_varieties_ = checked_count(f.ctx_.q(), d * (n + 1));
        f.powers_.resize(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < n; ++j) f.powers_[i].push_back(pow_map(f.ctx_, f.b_[i][j]));
        if (f.num_base_ <= kTableLimit) {
            f.h_table_.assign(d, std::vector<FieldElem>(f.num_base_));
            for (std::uint64_t u = 0; u < f.num_base_; ++u) {
                const auto x = index_to_coords(f.ctx_, n, u);
                for (std::size_t i = 0; i < d; ++i) f.h_table_[i][u] = f.h_[i].eval(f.ctx_, x);
            }
        }
        return f;
    }

    /// b_i = (1,...,1), h_i = 0: the varieties are the n-flats x_{n+i} = sum_j a_{i,j} x_j + a_{i,n+1}.
    static VarietyFamily flat_family(const FieldCtx& ctx, std::size_t n, std::size_t d) {
        return make(ctx, n, d, std::vector<Poly>(d, Poly(n)),
                    std::vector<std::vector<std::uint64_t>>(d, std::vector<std::uint64_t>(n, 1)));
    }

    /// d = 1, b = (1,...,1), h = sum x_i^2. Its varieties include the paraboloids x_{n+1} = sum (x_i - p_i)^2.
    static VarietyFamily paraboloid_family(const FieldCtx& ctx, std::size_t n) {
        return make(ctx, n, 1, {Poly::sum_of_squares(ctx, n)}, {std::vector<std::uint64_t>(n, 1)});
    }

    const FieldCtx& ctx() const { return ctx_; }
    std::size_t n() const { return n_; }
    std::size_t d() const { return d_; }
    const std::vector<Poly>& h() const { return h_; }
    const std::vector<std::vector<std::uint64_t>>& b() const { return b_; }

    std::uint64_t num_base() const { return num_base_; }          // q^n
    std::uint64_t num_points() const { return num_points_; }      // q^{n+d}
    std::uint64_t num_varieties() const { return num_varieties_; }  // q^{d(n+1)}

    // Canonical encodings. VarietyId: a_1 occupies the least significant n+1 digits.
    std::uint64_t point_index(const Point& pt) const {
        require(pt.x.size() == n_ + d_, ErrorKind::DimensionMismatch, "point must lie in F_q^{n+d}");
        return coords_to_index(ctx_, pt.x);
    }
    Point point_at(std::uint64_t idx) const {
        require(idx < num_points_, ErrorKind::IndexOutOfRange, "point index out of range");
        return {index_to_coords(ctx_, n_ + d_, idx)};
    }
    std::uint64_t variety_index(const VarietyId& id) const {
        require(id.a.size() == d_, ErrorKind::DimensionMismatch, "variety id needs d parameter vectors");
        Coords flat;
        for (const auto& ai : id.a) {
            require(ai.size() == n_ + 1, ErrorKind::DimensionMismatch, "each a_i must lie in F_q^{n+1}");
            flat.insert(flat.end(), ai.begin(), ai.end());
        }
        return coords_to_index(ctx_, flat);
    }
    VarietyId variety_at(std::uint64_t idx) const {
        require(idx < num_varieties_, ErrorKind::IndexOutOfRange, "variety index out of range");
        const Coords flat = index_to_coords(ctx_, d_ * (n_ + 1), idx);
        VarietyId id;
        for (std::size_t i = 0; i < d_; ++i)
            id.a.emplace_back(flat.begin() + i * (n_ + 1), flat.begin() + (i + 1) * (n_ + 1));
        return id;
    }

    /// f_{a_i}(x) for i in [1, d].
    FieldElem f_eval(std::size_t i, std::span<const FieldElem> ai, std::span<const FieldElem> x) const {
        require(i >= 1 && i <= d_, ErrorKind::IndexOutOfRange, "f index must be in [1,d]");
        require(ai.size() == n_ + 1 && x.size() == n_, ErrorKind::DimensionMismatch, "f_eval dimensions");
        FieldElem s = ai[n_];
        for (std::size_t j = 0; j < n_; ++j) s = ctx_.add(s, ctx_.mul(ai[j], powers_[i - 1][j][x[j].idx]));
        return s;
    }

    FieldElem h_eval(std::size_t i, std::span<const FieldElem> x) const {
        if (!h_table_.empty()) return h_table_[i - 1][coords_to_index(ctx_, x)];
        return h_[i - 1].eval(ctx_, x);
    }

    /// The q^n points (x, (h_1+f_{a_1})(x), ..., (h_d+f_{a_d})(x)), sorted by point index.
    std::vector<std::uint64_t> variety_point_indices(const VarietyId& id) const {
        variety_index(id);  // validates shape
        std::vector<std::uint64_t> out;
        out.reserve(num_base_);
        for (std::uint64_t u = 0; u < num_base_; ++u) {
            Coords x = index_to_coords(ctx_, n_, u);
            Coords full = x;
            for (std::size_t i = 1; i <= d_; ++i) full.push_back(ctx_.add(h_eval(i, x), f_eval(i, id.a[i - 1], x)));
            out.push_back(coords_to_index(ctx_, full));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::uint64_t> variety_point_indices(std::uint64_t var) const {
        return variety_point_indices(variety_at(var));
    }

    std::vector<Point> variety_points(const VarietyId& id) const {
        std::vector<Point> pts;
        for (auto idx : variety_point_indices(id)) pts.push_back(point_at(idx));
        return pts;
    }

    /// x_{n+i} = (h_i + f_{a_i})(x_1..x_n) for every i.
    bool contains(const VarietyId& id, const Point& pt) const {
        require(pt.x.size() == n_ + d_, ErrorKind::DimensionMismatch, "point must lie in F_q^{n+d}");
        require(id.a.size() == d_, ErrorKind::DimensionMismatch, "variety id needs d parameter vectors");
        const std::span<const FieldElem> x(pt.x.data(), n_);
        for (std::size_t i = 1; i <= d_; ++i)
            if (pt.x[n_ + i - 1] != ctx_.add(h_eval(i, x), f_eval(i, id.a[i - 1], x))) return false;
        return true;
    }

    bool contains(std::uint64_t var, std::uint64_t pt) const { return contains(variety_at(var), point_at(pt)); }

private:
    static std::uint64_t checked_count(std::uint64_t q, std::size_t e) {
        std::uint64_t r = 1;
        for (std::size_t i = 0; i < e; ++i) {
            require(r <= (std::uint64_t(1) << 40) / q, ErrorKind::TooLarge, "family too large to index");
            r *= q;
        }
        return r;
    }

    FieldCtx ctx_ = FieldCtx::make(2, 1);
    std::size_t n_ = 0, d_ = 0;
    std::vector<Poly> h_;
    std::vector<std::vector<std::uint64_t>> b_;
    std::uint64_t num_base_ = 0, num_points_ = 0, num_varieties_ = 0;
    std::vector<std::vector<std::vector<FieldElem>>> powers_;  // [i][j][x] = x^{b_{i,j}}
    std::vector<std::vector<FieldElem>> h_table_;              // [i][u], when q^n is small
};

/// a = (-2p_1, ..., -2p_n, sum p_i^2): the paraboloid x_{n+1} = sum (x_i - p_i)^2 with vertex (p, 0).
inline VarietyId paraboloid_id(const VarietyFamily& fam, std::span<const FieldElem> p) {
    const FieldCtx& ctx = fam.ctx();
    require(ctx.p() != 2, ErrorKind::EvenCharacteristic, "paraboloids need odd q");
    require(fam.d() == 1, ErrorKind::InvalidFamily, "paraboloid family has d = 1");
    require(p.size() == fam.n(), ErrorKind::DimensionMismatch, "vertex must lie in F_q^n");
    for (auto bj : fam.b()[0]) require(bj == 1, ErrorKind::InvalidFamily, "paraboloid family has b = (1,...,1)");
    const Poly sq = Poly::sum_of_squares(ctx, fam.n());
    for (std::uint64_t u = 0; u < fam.num_base(); ++u) {
        const auto x = index_to_coords(ctx, fam.n(), u);
        require(fam.h()[0].eval(ctx, x) == sq.eval(ctx, x), ErrorKind::InvalidFamily,
                "paraboloid family needs h = sum x_i^2");
    }
    Coords a;
    FieldElem c = ctx.zero();
    const FieldElem minus_two = ctx.from_int(-2);
    for (auto pi : p) {
        a.push_back(ctx.mul(minus_two, pi));
        c = ctx.add(c, ctx.mul(pi, pi));
    }
    a.push_back(c);
    return VarietyId{{a}};
}

/// All q^{d(n+1)} varieties have pairwise distinct point sets.
inline bool distinctness_check(const VarietyFamily& fam, std::uint64_t guard = std::uint64_t(1) << 20) {
    require(fam.num_varieties() <= guard, ErrorKind::TooLarge, "too many varieties to enumerate");
    std::set<std::vector<std::uint64_t>> seen;
    for (std::uint64_t v = 0; v < fam.num_varieties(); ++v)
        if (!seen.insert(fam.variety_point_indices(v)).second) return false;
    return true;
}

}  // namespace fqinc
