#pragma once

// Pinned distance sets over F_q^n (q odd), the two-part pinned-distance guarantee, and the incidence
// identity behind it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "fqinc/bounds.hpp"
#include "fqinc/error.hpp"
#include "fqinc/gf.hpp"
#include "fqinc/incidence.hpp"
#include "fqinc/numeric.hpp"
#include "fqinc/variety.hpp"

namespace fqinc {

inline FieldElem squared_distance(const FieldCtx& ctx, std::span<const FieldElem> x, std::span<const FieldElem> y) {
    FieldElem s = ctx.zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const FieldElem t = ctx.sub(x[i], y[i]);
        s = ctx.add(s, ctx.mul(t, t));
    }
    return s;
}

/// Delta(P, y) = { sum (x_i - y_i)^2 : x in P }, sorted by element index. P holds indices into F_q^n.
inline std::vector<FieldElem> pinned_distance_set(const FieldCtx& ctx, std::size_t n, const std::vector<std::uint64_t>& P,
                                                  std::span<const FieldElem> y) {
    require(ctx.p() != 2, ErrorKind::EvenCharacteristic, "pinned distances need odd q");
    require(y.size() == n, ErrorKind::DimensionMismatch, "pin must lie in F_q^n");
    std::vector<bool> seen(ctx.q(), false);
    for (auto p : P) seen[squared_distance(ctx, index_to_coords(ctx, n, p), y).idx] = true;
    std::vector<FieldElem> out;
    for (std::uint32_t i = 0; i < ctx.q(); ++i)
        if (seen[i]) out.push_back({i});
    return out;
}

/// (1/eps) sqrt((1 - eps) q^{n-1} (q-1)^2), the size threshold in squared-comparison form.
inline bool meets_pinned_precondition(std::uint64_t q, std::size_t n, const BigRational& eps, std::uint64_t size) {
    require(eps > 0 && eps < 1, ErrorKind::InvalidRange, "epsilon must lie in (0,1)");
    const BigRational t = (1 - eps) * BigRational(big_pow(BigInt(q), unsigned(n - 1)) * BigInt(q - 1) * BigInt(q - 1));
    return geq_scaled_sqrt(BigRational(BigInt(size)), 1 / eps, t);
}

/// Least |P| meeting the precondition; may exceed q^n, in which case no point set qualifies.
inline std::uint64_t min_pinned_size(std::uint64_t q, std::size_t n, const BigRational& eps) {
    std::uint64_t lo = 0, hi = 1;
    while (!meets_pinned_precondition(q, n, eps, hi)) hi *= 2;
    while (lo + 1 < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        (meets_pinned_precondition(q, n, eps, mid) ? hi : lo) = mid;
    }
    return hi;
}

/// |Delta| >= (1 - sqrt(eps)) q.
inline bool is_rich_pin(std::uint64_t q, const BigRational& eps, std::uint64_t delta_size) {
    const BigInt gap = BigInt(q) - BigInt(delta_size);
    return gap <= 0 || eps * BigRational(BigInt(q) * BigInt(q)) >= BigRational(gap * gap);
}

struct PinnedConfig {
    FieldCtx ctx;
    std::size_t n = 2;
    BigRational epsilon{1, 2};
    std::vector<std::uint64_t> P;  // indices into F_q^n
};

struct PinnedReport {
    std::uint64_t q = 0;
    std::size_t n = 0;
    BigRational epsilon;
    std::uint64_t sizeP = 0;
    bool precondition = false;
    BigInt sum_pinned = 0;
    BigRational average_pinned;
    std::uint64_t threshold = 0;   // least integer m with m >= (1 - sqrt(eps)) q
    std::uint64_t countQ = 0;
    bool average_holds = false;    // average >= (1 - eps) q
    bool rich_holds = false;       // |Q| >= (1 - sqrt(eps)) |P|
    std::map<std::uint64_t, std::uint64_t> histogram;  // |Delta(P,y)| -> number of pins
    bool pass() const { return average_holds && rich_holds; }
};

/// Brute force over all pins y in P. Throws PreconditionFailed on an undersized P unless report_only.
inline PinnedReport verify_pinned_corollary(const PinnedConfig& cfg, bool report_only = false) {
    const FieldCtx& ctx = cfg.ctx;
    require(ctx.p() != 2, ErrorKind::EvenCharacteristic, "pinned distances need odd q");
    require(!cfg.P.empty(), ErrorKind::InvalidRange, "pin set must be nonempty");
    PinnedReport r;
    r.q = ctx.q();
    r.n = cfg.n;
    r.epsilon = cfg.epsilon;
    r.sizeP = cfg.P.size();
    r.precondition = meets_pinned_precondition(r.q, cfg.n, cfg.epsilon, r.sizeP);
    require(r.precondition || report_only, ErrorKind::PreconditionFailed,
            "|P| = " + std::to_string(r.sizeP) + " is below the size threshold " +
                std::to_string(min_pinned_size(r.q, cfg.n, cfg.epsilon)));
    while (!is_rich_pin(r.q, cfg.epsilon, r.threshold)) ++r.threshold;
    for (auto y : cfg.P) {
        const std::uint64_t sz = pinned_distance_set(ctx, cfg.n, cfg.P, index_to_coords(ctx, cfg.n, y)).size();
        r.sum_pinned += sz;
        r.histogram[sz] += 1;
        r.countQ += is_rich_pin(r.q, cfg.epsilon, sz);
    }
    const BigRational P(BigInt(r.sizeP));
    r.average_pinned = BigRational(r.sum_pinned) / P;
    r.average_holds = r.average_pinned >= (1 - cfg.epsilon) * BigRational(BigInt(r.q));
    const BigRational gap = P - BigRational(BigInt(r.countQ));
    r.rich_holds = gap <= 0 || cfg.epsilon * P * P >= gap * gap;
    return r;
}

struct PinnedChain {
    std::uint64_t sizePtilde = 0;
    std::uint64_t incidences = 0;
    bool identity_holds = false;   // I(P~, V) = |P|^2
    bool bijective = false;        // p -> V(p) injective, so |V| = |P|
    std::uint64_t shared_vertices = 0;  // pins p with (p,0) on some V(p~), p~ != p
    ExactComparison bound;         // d = 1 bound for (P~, V)
};

/// V = {V(p)} through paraboloid_id, P~ = {(p,t) : t in Delta(P,p)} in F_q^{n+1}.
inline PinnedChain pinned_incidence_chain(const FieldCtx& ctx, std::size_t n, const std::vector<std::uint64_t>& P) {
    require(ctx.p() != 2, ErrorKind::EvenCharacteristic, "pinned distances need odd q");
    const VarietyFamily fam = VarietyFamily::paraboloid_family(ctx, n);
    PinnedChain c;
    std::vector<std::uint64_t> vs, pt;
    std::vector<Coords> pins;
    for (auto p : P) {
        pins.push_back(index_to_coords(ctx, n, p));
        vs.push_back(fam.variety_index(paraboloid_id(fam, pins.back())));
    }
    c.bijective = std::set<std::uint64_t>(vs.begin(), vs.end()).size() == P.size();
    for (std::size_t i = 0; i < pins.size(); ++i) {
        Coords x = pins[i];
        for (auto t : pinned_distance_set(ctx, n, P, pins[i])) {
            x.push_back(t);
            pt.push_back(coords_to_index(ctx, x));
            x.pop_back();
        }
        for (std::size_t j = 0; j < pins.size(); ++j)
            if (j != i && squared_distance(ctx, pins[i], pins[j]) == ctx.zero()) {
                ++c.shared_vertices;
                break;
            }
    }
    const PointSet Pt(pt, fam.num_points());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    const VarietySet V(vs, fam.num_varieties());
    c.sizePtilde = Pt.size();
    c.incidences = count_incidences(fam, Pt, V);
    c.identity_holds = c.incidences == std::uint64_t(P.size()) * P.size();
    c.bound = check_incidence_bound(fam, Pt, V, BoundName::MainD1);
    return c;
}

}  // namespace fqinc
