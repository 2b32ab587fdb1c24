#pragma once

// Experiment drivers shared by the command-line tool and the acceptance suite. Every driver is a pure
// function of its configuration and seed and returns an ordered JSON report; nothing time-dependent goes in.

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "fqinc/bounds.hpp"
#include "fqinc/flats.hpp"
#include "fqinc/incidence.hpp"
#include "fqinc/pinned.hpp"
#include "fqinc/rng.hpp"
#include "fqinc/spectral.hpp"
#include "fqinc/variety.hpp"

namespace fqinc::experiments {

using Json = nlohmann::ordered_json;

// Random streams. The stream id is (kind << 32) | configuration index.
enum Stream : std::uint64_t {
    kProjectionPoints = 1,
    kProjectionVarieties = 2,
    kIncidence = 3,
    kAffineInvariance = 4,
    kFlatsTheorem = 5,
    kTransitivity = 6,
    kPinned = 7,
    kFlatsFamily = 8,
};

inline std::uint64_t stream_id(Stream s, std::uint64_t config) { return (std::uint64_t(s) << 32) | config; }

/// Integers that fit in 64 bits are JSON numbers; anything larger is a decimal string.
inline Json exact(const BigInt& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

/// Rationals are always "num/den" or "num" strings.
inline Json exact(const BigRational& x) { return to_string(x); }

struct FamilySpec {
    std::string field;
    std::size_t n = 1, d = 1;
    std::vector<std::string> h;                 // one polynomial per i, in x1..xn
    std::vector<std::vector<std::uint64_t>> b;  // d rows of n exponents
};

/// h = 0, b = 1.
inline FamilySpec plain_family(const std::string& field, std::size_t n, std::size_t d) {
    return {field, n, d, std::vector<std::string>(d, "0"), std::vector<std::vector<std::uint64_t>>(d, std::vector<std::uint64_t>(n, 1))};
}

/// Least b > 1 coprime to q - 1 in every exponent; quadratic h when q >= 3, affine h when q = 2 (degree cap q - 1 = 1).
inline FamilySpec twisted_family(const std::string& field, std::size_t n, std::size_t d) {
    const FieldCtx ctx = FieldCtx::parse(field);
    std::uint64_t b = 2;
    while (!is_power_permutation(ctx, b)) ++b;
    FamilySpec s{field, n, d, {}, std::vector<std::vector<std::uint64_t>>(d, std::vector<std::uint64_t>(n, b))};
    for (std::size_t i = 0; i < d; ++i) {
        std::string hi;
        if (ctx.q() == 2) hi = i == 0 ? "x1+1" : "x" + std::to_string(n);
        else if (i == 0) hi = n >= 2 ? "x1^2+x1*x2" : "x1^2";
        else hi = "2*x" + std::to_string(n) + "^2+1";
        s.h.push_back(hi);
    }
    return s;
}

inline VarietyFamily build_family(const FamilySpec& s) {
    const FieldCtx ctx = FieldCtx::parse(s.field);
    std::vector<Poly> h;
    for (const auto& t : s.h) h.push_back(Poly::parse(ctx, s.n, t));
    return VarietyFamily::make(ctx, s.n, s.d, std::move(h), s.b);
}

inline Json to_json(const FamilySpec& s) {
    return Json{{"field", s.field}, {"n", s.n}, {"d", s.d}, {"h", s.h}, {"b", s.b}};
}

inline Json to_json(const ExactComparison& c) {
    const auto r = c.ratio();
    return Json{{"bound", to_string(c.bound)},
                {"incidences", exact(c.incidences)},
                {"delta", exact(c.delta)},
                {"delta_sq", exact(c.lhs_squared)},
                {"bound_sq", exact(c.rhs_squared)},
                {"ratio", r ? Json(to_string(*r)) : Json(nullptr)},
                {"verdict", c.holds ? "holds" : "violated"},
                {"informational", c.informational}};
}

// ---------------------------------------------------------------- spectrum

inline Json spectrum_side(const VarietyFamily& fam, const IncidenceMatrix& t, GramSide side, const Guards& guards,
                          bool characters, bool with_projectors) {
    const GramMatrix g = side == GramSide::Points ? gram_points(fam, t, guards) : gram_varieties(fam, t, guards);
    const SpectrumSpec s = SpectrumSpec::for_family(fam, side);
    const auto ann = annihilation_check(g, s);
    const auto mul = multiplicity_check(g, s);
    Json j{{"side", to_string(side)},
           {"order", g.order()},
           {"eigenvalues", {exact(s.lam0), exact(s.lam1), 0}},
           {"annihilation", {{"pass", ann.pass}, {"max_gram_entry", exact(ann.max_gram_entry)},
                             {"max_intermediate_entry", exact(ann.max_intermediate_entry)}}},
           {"rank", mul.rank},
           {"traces", {{"trace", exact(mul.trace)}, {"trace_sq", exact(mul.trace_sq)}}},
           {"multiplicities", {{"expected", {exact(s.mult0), exact(s.mult1), exact(s.mult2)}},
                               {"certified", {exact(mul.mult0), exact(mul.mult1), exact(mul.mult2)}},
                               {"pass", mul.pass}}}};
    bool pass = ann.pass && mul.pass;
    if (characters) {
        const auto ch = character_eigenvector_check(g, fam, guards);
        j["table_row_counts"] = {ch.row_counts[0], ch.row_counts[1], ch.row_counts[2]};
        j["character_checks"] = {{"n_checked", ch.n_checked}, {"n_passed", ch.n_passed}, {"pass", ch.pass}};
        pass = pass && ch.pass;
    }
    if (with_projectors && ann.pass) {
        const auto ps = projectors(g, s);
        j["projectors"] = {{"verified", ps.verified},
                           {"traces", {exact(ps.top.trace()), exact(ps.middle.trace()), exact(ps.zero.trace())}}};
        pass = pass && ps.verified && ps.top.trace() == BigRational(s.mult0) && ps.middle.trace() == BigRational(s.mult1) &&
               ps.zero.trace() == BigRational(s.mult2);
    }
    j["pass"] = pass;
    return j;
}

inline Json run_spectrum(const FamilySpec& spec, const Guards& guards, bool characters, bool with_projectors) {
    const VarietyFamily fam = build_family(spec);
    const IncidenceMatrix t = build_T(fam, guards);
    Json sides = Json::array();
    bool pass = true;
    for (auto side : {GramSide::Points, GramSide::Varieties}) {
        sides.push_back(spectrum_side(fam, t, side, guards, characters, with_projectors));
        pass = pass && sides.back()["pass"].get<bool>();
    }
    return Json{{"family", to_json(spec)}, {"sides", sides}, {"pass", pass}};
}

// ---------------------------------------------------------------- projection norms

/// Random indicator vectors on both sides: components nonnegative and summing to |S|, the top component
/// equal to |S|^2/order, the middle component under its bound.
inline Json run_projection(const FamilySpec& spec, std::uint64_t config, std::uint64_t seed, std::uint64_t trials,
                           const Guards& guards) {
    const VarietyFamily fam = build_family(spec);
    const IncidenceMatrix t = build_T(fam, guards);
    Json sides = Json::array();
    bool pass = true;
    for (auto side : {GramSide::Points, GramSide::Varieties}) {
        const GramMatrix g = side == GramSide::Points ? gram_points(fam, t, guards) : gram_varieties(fam, t, guards);
        const SpectrumSpec s = SpectrumSpec::for_family(fam, side);
        const ProjectorSet ps = projectors(g, s);
        const Stream stream = side == GramSide::Points ? kProjectionPoints : kProjectionVarieties;
        std::uint64_t top_ok = 0, middle_ok = 0, sum_ok = 0;
        BigRational worst = 0;  // largest middle / bound
        for (std::uint64_t k = 0; k < trials; ++k) {
            Rng rng = trial_rng(seed, stream_id(stream, config), k);
            const std::uint64_t size = 1 + uniform_below(rng, g.order());
            const auto S = random_subset(rng, g.order(), size);
            const auto pn = projection_norm(ps, S);
            const BigRational bound = middle_projection_bound(fam, side, size);
            top_ok += pn.top == top_projection_value(s, size);
            middle_ok += pn.middle <= bound;
            sum_ok += pn.top >= 0 && pn.middle >= 0 && pn.zero >= 0 && pn.top + pn.middle + pn.zero == BigRational(BigInt(size));
            if (bound > 0 && pn.middle / bound > worst) worst = pn.middle / bound;
        }
        const bool ok = ps.verified && top_ok == trials && middle_ok == trials && sum_ok == trials;
        pass = pass && ok;
        sides.push_back(Json{{"side", to_string(side)},
                             {"trials", trials},
                             {"projectors_verified", ps.verified},
                             {"top_equal", top_ok},
                             {"middle_within_bound", middle_ok},
                             {"components_consistent", sum_ok},
                             {"max_middle_over_bound", exact(worst)},
                             {"pass", ok}});
    }
    return Json{{"family", to_json(spec)}, {"sides", sides}, {"pass", pass}};
}

// ---------------------------------------------------------------- incidence bounds

struct IncidenceConfig {
    std::uint64_t seed = 1;
    std::uint64_t trials = 1008;
    std::vector<std::uint64_t> sizesP;  // empty: {1, q, q^2, all}
    std::vector<std::uint64_t> sizesV;
    std::vector<BoundName> bounds;      // empty: stated, intermediate, phuong
    bool rows = false;
    bool spectral_chain = true;         // also delta^2 <= q^{dn} |proj_1 1_P|^2 |proj_1 1_V|^2
};

inline std::vector<std::uint64_t> default_sizes(std::uint64_t q, std::uint64_t universe) {
    return {1, std::min(q, universe), std::min(q * q, universe), universe};
}

inline BoundName stated_bound(std::size_t d) { return d == 1 ? BoundName::MainD1 : BoundName::MainDge2; }

/// Trials cycle through the size grid; trial k uses combination k mod |sizesP||sizesV|.
inline Json run_incidence(const FamilySpec& spec, std::uint64_t config, const IncidenceConfig& cfg, const Guards& guards) {
    const VarietyFamily fam = build_family(spec);
    const IncidenceMatrix t = build_T(fam, guards);
    const std::uint64_t q = fam.ctx().q();
    const auto sizesP = cfg.sizesP.empty() ? default_sizes(q, fam.num_points()) : cfg.sizesP;
    const auto sizesV = cfg.sizesV.empty() ? default_sizes(q, fam.num_varieties()) : cfg.sizesV;
    for (auto s : sizesP) require(s >= 1 && s <= fam.num_points(), ErrorKind::InvalidRange, "point set size out of range");
    for (auto s : sizesV) require(s >= 1 && s <= fam.num_varieties(), ErrorKind::InvalidRange, "variety set size out of range");
    std::vector<BoundName> bounds = cfg.bounds;
    if (bounds.empty()) bounds = {stated_bound(fam.d()), BoundName::MainIntermediate, BoundName::Phuong};

    std::optional<ProjectorSet> pp, pv;
    if (cfg.spectral_chain) {
        pp = projectors(gram_points(fam, t, guards), SpectrumSpec::for_family(fam, GramSide::Points));
        pv = projectors(gram_varieties(fam, t, guards), SpectrumSpec::for_family(fam, GramSide::Varieties));
    }
    const BigRational qdn(big_pow(BigInt(q), unsigned(fam.d() * fam.n())));

    std::vector<std::uint64_t> holds(bounds.size(), 0);
    std::vector<BigRational> worst(bounds.size(), 0);
    std::uint64_t chain_ok = 0, order_ok = 0, factor_ok = 0;
    Json rows = Json::array();
    for (std::uint64_t k = 0; k < cfg.trials; ++k) {
        Rng rng = trial_rng(cfg.seed, stream_id(kIncidence, config), k);
        const std::uint64_t combo = k % (sizesP.size() * sizesV.size());
        const std::uint64_t sp = sizesP[combo / sizesV.size()], sv = sizesV[combo % sizesV.size()];
        const PointSet P(random_subset(rng, fam.num_points(), sp), fam.num_points());
        const VarietySet V(random_subset(rng, fam.num_varieties(), sv), fam.num_varieties());
        const BigInt I = count_incidences(t, P, V);
        for (std::size_t b = 0; b < bounds.size(); ++b) {
            const auto c = compare_discrepancy(I, BoundSpec::for_family(bounds[b], fam, sp, sv));
            holds[b] += c.holds;
            if (auto r = c.ratio(); r && *r > worst[b]) worst[b] = *r;
            if (cfg.rows) {
                Json row = to_json(c);
                row["trial"] = k;
                row["sizeP"] = sp;
                row["sizeV"] = sv;
                rows.push_back(row);
            }
        }
        const BigRational inter = eval_bound_squared(BoundSpec::for_family(BoundName::MainIntermediate, fam, sp, sv));
        const BigRational stated = eval_bound_squared(BoundSpec::for_family(stated_bound(fam.d()), fam, sp, sv));
        const BigRational phuong = eval_bound_squared(BoundSpec::for_family(BoundName::Phuong, fam, sp, sv));
        order_ok += fam.d() == 1 ? inter == stated : inter <= stated;
        if (fam.d() == 1) {
            const BigRational f = 1 - BigRational(1, q);
            factor_ok += stated == f * f * phuong;
        } else {
            factor_ok += !dge2_improves_phuong(q, unsigned(fam.n()), unsigned(fam.d()), sv) || stated < phuong;
        }
        if (cfg.spectral_chain) {
            const BigRational delta = BigRational(I) - BigRational(BigInt(sp) * BigInt(sv), big_pow(BigInt(q), unsigned(fam.d())));
            const auto np = projection_norm(*pp, P.indices()), nv = projection_norm(*pv, V.indices());
            chain_ok += delta * delta <= qdn * np.middle * nv.middle;
        }
    }
    Json summary = Json::array();
    bool pass = order_ok == cfg.trials && factor_ok == cfg.trials && (!cfg.spectral_chain || chain_ok == cfg.trials);
    for (std::size_t b = 0; b < bounds.size(); ++b) {
        const bool falsifiable = bounds[b] != BoundName::LundLeading;
        if (falsifiable) pass = pass && holds[b] == cfg.trials;
        summary.push_back(Json{{"bound", to_string(bounds[b])},
                               {"holds", holds[b]},
                               {"violated", cfg.trials - holds[b]},
                               {"max_ratio", exact(worst[b])},
                               {"informational", !falsifiable}});
    }
    Json j{{"family", to_json(spec)},
           {"seed", cfg.seed},
           {"trials", cfg.trials},
           {"sizesP", sizesP},
           {"sizesV", sizesV},
           {"bounds", summary},
           {"intermediate_vs_stated_ok", order_ok},
           {fam.d() == 1 ? "d1_factor_exact" : "dge2_regime_ok", factor_ok}};
    if (cfg.spectral_chain) j["spectral_chain_ok"] = chain_ok;
    if (cfg.rows) j["rows"] = rows;
    j["pass"] = pass;
    return j;
}

// ---------------------------------------------------------------- flats

inline Json run_flats_census(const std::string& field, std::size_t n, std::size_t d, const Guards& guards) {
    const FieldCtx ctx = FieldCtx::parse(field);
    const FlatCensus c = flat_family_census(ctx, n, d, guards.max_flats);
    const std::uint64_t f1 = expected_flat_count(ctx, n, d);
    const std::uint64_t f0 = checked_pow(ctx.q(), unsigned(d * (n + 1)));
    std::uint64_t in_family = 0;
    for (bool b : c.in_family) in_family += b;
    std::set<Flat> distinct(c.all.begin(), c.all.end());
    const bool pass = c.all.size() == f1 && distinct.size() == f1 && c.family_count == f0 && in_family == f0 &&
                      c.family_subset && c.structural_agrees;
    return Json{{"field", field},          {"n", n},
                {"d", d},                  {"flats", c.all.size()},
                {"expected_flats", f1},    {"distinct", distinct.size()},
                {"family_flats", c.family_count}, {"expected_family_flats", f0},
                {"family_in_census", in_family}, {"family_subset", c.family_subset},
                {"pivot_criterion_agrees", c.structural_agrees}, {"pass", pass}};
}

struct FlatsConfig {
    std::uint64_t seed = 1;
    std::uint64_t invariance_trials = 167;
    std::uint64_t theorem_trials = 500;
    std::uint64_t family_trials = 100;
    std::uint64_t transitivity_trials = 50;
};

/// Affine invariance of I(P, F), transitivity by constructed maps, and the point-flat bound on random draws.
inline Json run_flats_trials(const std::string& field, std::size_t n, std::size_t d, std::uint64_t config,
                             const FlatsConfig& cfg, const Guards& guards) {
    const FieldCtx ctx = FieldCtx::parse(field);
    const FlatCensus c = flat_family_census(ctx, n, d, guards.max_flats);
    const std::size_t k = n + d;
    const std::uint64_t npts = checked_pow(ctx.q(), unsigned(k));
    std::vector<Flat> family_members;
    for (std::size_t i = 0; i < c.all.size(); ++i)
        if (c.in_family[i]) family_members.push_back(c.all[i]);

    auto pick = [](Rng& rng, const std::vector<Flat>& pool) {
        const auto idx = random_subset(rng, pool.size(), 1 + uniform_below(rng, pool.size()));
        std::vector<Flat> out;
        for (auto i : idx) out.push_back(pool[i]);
        return out;
    };

    std::uint64_t inv_ok = 0;
    for (std::uint64_t t = 0; t < cfg.invariance_trials; ++t) {
        Rng rng = trial_rng(cfg.seed, stream_id(kAffineInvariance, config), t);
        const AffineMap g = AffineMap::random(ctx, k, rng);
        const auto P = random_subset(rng, npts, 1 + uniform_below(rng, npts));
        const auto F = pick(rng, c.all);
        std::vector<std::uint64_t> Pg;
        for (auto p : P) Pg.push_back(apply_affine_index(ctx, g, p));
        std::vector<Flat> Fg;
        for (const auto& f : F) Fg.push_back(apply_affine_flat(ctx, g, f));
        inv_ok += count_flat_incidences(ctx, k, P, F) == count_flat_incidences(ctx, k, Pg, Fg);
    }

    std::uint64_t trans_ok = 0;
    for (std::uint64_t t = 0; t < cfg.transitivity_trials; ++t) {
        Rng rng = trial_rng(cfg.seed, stream_id(kTransitivity, config), t);
        const Flat& a = c.all[uniform_below(rng, c.all.size())];
        const Flat& b = c.all[uniform_below(rng, c.all.size())];
        trans_ok += apply_affine_flat(ctx, map_between(ctx, a, b), a) == b;
    }

    std::uint64_t thm_ok = 0, lead_ok = 0;
    BigRational worst = 0;
    for (std::uint64_t t = 0; t < cfg.theorem_trials; ++t) {
        Rng rng = trial_rng(cfg.seed, stream_id(kFlatsTheorem, config), t);
        const auto P = random_subset(rng, npts, 1 + uniform_below(rng, npts));
        const auto chk = check_flats_theorem(ctx, n, d, P, pick(rng, c.all));
        thm_ok += chk.theorem.holds;
        lead_ok += chk.leading.holds;
        if (auto r = chk.theorem.ratio(); r && *r > worst) worst = *r;
    }

    std::uint64_t fam_thm_ok = 0, fam_cor_ok = 0;
    for (std::uint64_t t = 0; t < cfg.family_trials; ++t) {
        Rng rng = trial_rng(cfg.seed, stream_id(kFlatsFamily, config), t);
        const auto P = random_subset(rng, npts, 1 + uniform_below(rng, npts));
        const auto chk = check_flats_theorem(ctx, n, d, P, pick(rng, family_members));
        fam_thm_ok += chk.theorem.holds;
        fam_cor_ok += chk.family_bound && chk.family_bound->holds;
    }

    const bool pass = inv_ok == cfg.invariance_trials && trans_ok == cfg.transitivity_trials &&
                      thm_ok == cfg.theorem_trials && fam_thm_ok == cfg.family_trials && fam_cor_ok == cfg.family_trials;
    return Json{{"field", field},
                {"n", n},
                {"d", d},
                {"seed", cfg.seed},
                {"affine_invariance", {{"trials", cfg.invariance_trials}, {"equal", inv_ok}}},
                {"transitivity", {{"trials", cfg.transitivity_trials}, {"mapped", trans_ok}}},
                {"theorem", {{"bound", to_string(d == 1 ? BoundName::FlatsThmD1 : BoundName::FlatsThmDge2)},
                             {"trials", cfg.theorem_trials},
                             {"holds", thm_ok},
                             {"max_ratio", exact(worst)}}},
                {"leading_term", {{"trials", cfg.theorem_trials}, {"holds", lead_ok}, {"informational", true}}},
                {"family_draws", {{"trials", cfg.family_trials}, {"theorem_holds", fam_thm_ok}, {"family_bound_holds", fam_cor_ok}}},
                {"pass", pass}};
}

// ---------------------------------------------------------------- pinned distances

inline Json to_json(const PinnedReport& r) {
    Json hist = Json::object();
    for (const auto& [sz, cnt] : r.histogram) hist[std::to_string(sz)] = cnt;
    return Json{{"q", r.q},
                {"n", r.n},
                {"epsilon", exact(r.epsilon)},
                {"sizeP", r.sizeP},
                {"precondition", r.precondition},
                {"average_pinned", exact(r.average_pinned)},
                {"threshold", r.threshold},
                {"countQ", r.countQ},
                {"average_holds", r.average_holds},
                {"rich_holds", r.rich_holds},
                {"histogram", hist}};
}

struct PinnedRunConfig {
    std::uint64_t seed = 1;
    std::uint64_t trials = 100;
    bool rows = false;
    std::optional<std::uint64_t> size;  // fixed |P| instead of the default size rule
    bool report_only = false;           // undersized P: report statistics instead of failing
};

/// Random P of admissible size: even trials use the least admissible size, odd trials a uniform size in
/// [least, q^n]. When no admissible size exists the combination is reported vacuous and only the full
/// space is examined, in report-only mode.
inline Json run_pinned(const std::string& field, std::size_t n, const BigRational& eps, std::uint64_t config,
                       const PinnedRunConfig& cfg) {
    const FieldCtx ctx = FieldCtx::parse(field);
    require(ctx.p() != 2, ErrorKind::EvenCharacteristic, "pinned distances need odd q");
    const std::uint64_t universe = checked_pow(ctx.q(), unsigned(n));
    const std::uint64_t least = min_pinned_size(ctx.q(), n, eps);
    Json j{{"field", field}, {"n", n}, {"epsilon", exact(eps)}, {"min_size", least}, {"universe", universe}};
    require(!cfg.size || (*cfg.size >= 1 && *cfg.size <= universe), ErrorKind::InvalidRange, "|P| must lie in [1, q^n]");
    if (least > universe && !cfg.size) {
        std::vector<std::uint64_t> all(universe);
        for (std::uint64_t i = 0; i < universe; ++i) all[i] = i;
        const auto r = verify_pinned_corollary({ctx, n, eps, all}, true);
        const auto chain = pinned_incidence_chain(ctx, n, all);
        j["vacuous"] = true;
        j["full_space"] = to_json(r);
        j["full_space_identity"] = chain.identity_holds;
        j["full_space_chain_bound"] = chain.bound.holds;
        j["pass"] = chain.identity_holds && chain.bijective && chain.bound.holds;
        return j;
    }
    std::uint64_t avg_ok = 0, rich_ok = 0, ident_ok = 0, bij_ok = 0, bound_ok = 0, shared = 0;
    Json rows = Json::array();
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        Rng rng = trial_rng(cfg.seed, stream_id(kPinned, config), t);
        const std::uint64_t size =
            cfg.size ? *cfg.size : t % 2 == 0 ? least : least + uniform_below(rng, universe - least + 1);
        const PinnedConfig pc{ctx, n, eps, random_subset(rng, universe, size)};
        const auto r = verify_pinned_corollary(pc, cfg.report_only);
        const auto chain = pinned_incidence_chain(ctx, n, pc.P);
        avg_ok += r.average_holds;
        rich_ok += r.rich_holds;
        ident_ok += chain.identity_holds;
        bij_ok += chain.bijective;
        bound_ok += chain.bound.holds;
        shared += chain.shared_vertices > 0;
        if (cfg.rows) rows.push_back(to_json(r));
    }
    j["vacuous"] = false;
    j["trials"] = cfg.trials;
    j["average_holds"] = avg_ok;
    j["rich_holds"] = rich_ok;
    j["identity_holds"] = ident_ok;
    j["bijective"] = bij_ok;
    j["chain_bound_holds"] = bound_ok;
    j["draws_with_shared_vertex"] = shared;
    if (cfg.rows) j["rows"] = rows;
    // undersized P (report-only): the two conclusions are statistics, the incidence facts stay falsifiable
    const bool pre = meets_pinned_precondition(ctx.q(), n, eps, cfg.size ? *cfg.size : least);
    j["precondition"] = pre;
    j["pass"] = (!pre || (avg_ok == cfg.trials && rich_ok == cfg.trials)) && ident_ok == cfg.trials &&
                bij_ok == cfg.trials && bound_ok == cfg.trials;
    return j;
}

// ---------------------------------------------------------------- acceptance grid

struct Criterion {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string summary;
    Json detail;
};

inline Json to_json(const Criterion& c) {
    return Json{{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"summary", c.summary}, {"detail", c.detail}};
}

struct Triple {
    std::string field;
    std::size_t n, d;
};

inline std::vector<FamilySpec> both_variants(const Triple& t) {
    return {plain_family(t.field, t.n, t.d), twisted_family(t.field, t.n, t.d)};
}

inline Criterion criterion_spectral_grid(const Guards& guards) {
    const std::vector<Triple> grid = {{"2", 1, 1}, {"2", 1, 2}, {"2", 2, 1}, {"3", 1, 1}, {"3", 1, 2},
                                      {"3", 2, 1}, {"2^2", 1, 1}, {"5", 1, 1}, {"3^2", 1, 1}};
    Criterion c{1, "spectral certificate grid", true, "", Json::array()};
    std::size_t count = 0, ok = 0;
    for (const auto& t : grid)
        for (const auto& spec : both_variants(t)) {
            Json r = run_spectrum(spec, guards, false, false);
            ++count;
            ok += r["pass"].get<bool>();
            c.detail.push_back(std::move(r));
        }
    c.pass = ok == count;
    c.summary = std::to_string(ok) + "/" + std::to_string(count) + " families certified on both sides";
    return c;
}

inline Criterion criterion_characters(const Guards& guards) {
    const std::vector<Triple> grid = {{"3", 1, 1}, {"3", 1, 2}, {"2", 2, 1}};
    Criterion c{2, "character eigenvectors", true, "", Json::array()};
    std::size_t count = 0, ok = 0;
    for (const auto& t : grid)
        for (const auto& spec : both_variants(t)) {
            Json r = run_spectrum(spec, guards, true, false);
            ++count;
            ok += r["pass"].get<bool>();
            c.detail.push_back(std::move(r));
        }
    c.pass = ok == count;
    c.summary = std::to_string(ok) + "/" + std::to_string(count) + " families, every character on both sides";
    return c;
}

inline Criterion criterion_projection(std::uint64_t seed, const Guards& guards) {
    const std::vector<Triple> grid = {{"3", 1, 1}, {"3", 1, 2}};
    Criterion c{3, "projection norms", true, "", Json::array()};
    std::uint64_t config = 0;
    std::size_t count = 0, ok = 0;
    for (const auto& t : grid)
        for (const auto& spec : both_variants(t)) {
            Json r = run_projection(spec, config++, seed, 500, guards);
            ++count;
            ok += r["pass"].get<bool>();
            c.detail.push_back(std::move(r));
        }
    c.pass = ok == count;
    c.summary = std::to_string(ok) + "/" + std::to_string(count) + " families, 500 point sets and 500 variety sets each";
    return c;
}

inline Criterion criterion_main_theorem(std::uint64_t seed, const Guards& guards) {
    const std::vector<Triple> grid = {{"3", 1, 1}, {"3", 1, 2}, {"5", 1, 1}};
    Criterion c{4, "main incidence inequality", true, "", Json::array()};
    std::uint64_t config = 0;
    std::size_t count = 0, ok = 0;
    IncidenceConfig cfg;
    cfg.seed = seed;
    cfg.trials = 1008;  // 63 per size combination
    for (const auto& t : grid)
        for (const auto& spec : both_variants(t)) {
            Json r = run_incidence(spec, config++, cfg, guards);
            ++count;
            ok += r["pass"].get<bool>();
            c.detail.push_back(std::move(r));
        }
    c.pass = ok == count;
    c.summary = std::to_string(ok) + "/" + std::to_string(count) + " families, 1008 (P,V) pairs each";
    return c;
}

inline Criterion criterion_flats(std::uint64_t seed, const Guards& guards) {
    const std::vector<Triple> grid = {{"2", 1, 1}, {"2", 1, 2}, {"2", 2, 1}, {"3", 1, 1}, {"3", 1, 2}, {"3", 2, 1}};
    Criterion c{5, "flat census and point-flat bound", true, "", Json::array()};
    std::uint64_t config = 0, inv_total = 0;
    std::size_t count = 0, ok = 0;
    FlatsConfig cfg;
    cfg.seed = seed;
    for (const auto& t : grid) {
        Json census = run_flats_census(t.field, t.n, t.d, guards);
        Json trials = run_flats_trials(t.field, t.n, t.d, config++, cfg, guards);
        inv_total += trials["affine_invariance"]["trials"].get<std::uint64_t>();
        ++count;
        const bool both = census["pass"].get<bool>() && trials["pass"].get<bool>();
        ok += both;
        c.detail.push_back(Json{{"census", census}, {"trials", trials}, {"pass", both}});
    }
    c.pass = ok == count;
    c.summary = std::to_string(ok) + "/" + std::to_string(count) + " configurations, " + std::to_string(inv_total) +
                " affine invariance draws, 500 bound draws each";
    return c;
}

inline Criterion criterion_pinned(std::uint64_t seed) {
    Criterion c{6, "pinned distances", true, "", Json::array()};
    std::uint64_t config = 0;
    std::size_t count = 0, ok = 0;
    std::string vacuous;
    PinnedRunConfig cfg;
    cfg.seed = seed;
    for (std::uint64_t q : {5, 7, 11})
        for (const BigRational& eps : {BigRational(1, 4), BigRational(1, 2)}) {
            Json r = run_pinned(std::to_string(q), 2, eps, config++, cfg);
            ++count;
            ok += r["pass"].get<bool>();
            if (r["vacuous"].get<bool>())
                vacuous += (vacuous.empty() ? "" : ", ") + std::string("q=") + std::to_string(q) + " eps=" + to_string(eps);
            c.detail.push_back(std::move(r));
        }
    c.pass = ok == count;
    c.summary = std::to_string(ok) + "/" + std::to_string(count) + " (q, eps) combinations";
    if (!vacuous.empty()) c.summary += "; no admissible P exists for " + vacuous;
    return c;
}

inline std::vector<Criterion> run_grid_criteria(std::uint64_t seed, const Guards& guards = {}) {
    return {criterion_spectral_grid(guards), criterion_characters(guards), criterion_projection(seed, guards),
            criterion_main_theorem(seed, guards), criterion_flats(seed, guards), criterion_pinned(seed)};
}

inline Json grid_report(std::uint64_t seed, const std::vector<Criterion>& cs) {
    Json j{{"seed", seed}, {"criteria", Json::array()}};
    std::size_t passed = 0;
    for (const auto& c : cs) {
        j["criteria"].push_back(to_json(c));
        passed += c.pass;
    }
    j["verdict"] = {{"pass", passed}, {"fail", cs.size() - passed}};
    return j;
}

inline Json run_grid(std::uint64_t seed, const Guards& guards = {}) { return grid_report(seed, run_grid_criteria(seed, guards)); }

}  // namespace fqinc::experiments
