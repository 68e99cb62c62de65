#pragma once

// Classification of extremal P-resolutions of a cyclic quotient singularity:
// extraction from the lowerable index pairs of the continued fraction of
// Delta/(Delta-Omega), plus the survey over all singularities up to a bound.

#include "zerocf.hpp"

namespace cqs {

// one extremal P-resolution of the singularity `target`
struct PResolution {
    CQS target;
    std::pair<int, int> ww;  // 1-based lowered indices (alpha, beta)
    WahlData sing1;          // from the chain tail  [c_s,...,c_{beta+1}]
    WahlData sing2;          // from the chain head  [c_1,...,c_{alpha-1}]
    Int c;                   // middle entry of the resolved chain
    Int delta;

    Rat k_dot_cplus() const { return Rat(delta, sing1.m * sing2.m); }
    Rat cplus_sq() const {
        return -Rat(target.Delta, sing1.m * sing1.m * sing2.m * sing2.m);
    }
};

namespace detail {

// slice cf[lo..hi] (1-based, inclusive) evaluated as Wahl data m/a;
// empty slice is a smooth point (1,1)
inline WahlData wahl_from_slice(CFrac cf, int lo, int hi) {
    if (lo > hi) return WahlData{1, 1};
    CFrac part(cf.begin() + (lo - 1), cf.begin() + hi);
    Fraction f = cf_evaluate(part);
    ensure(f.den > 0 && f.num > f.den, "wahl_from_slice: slice not a fraction > 1");
    return wahl_new(f.num, f.den);
}

}  // namespace detail

// all extremal P-resolutions of 1/Delta(1, Omega), one per lowerable pair
// of hj_expand(Delta, Delta - Omega); every result is cross-checked against
// the resolved chain [reversed chain of sing2, c, chain of sing1]
inline std::vector<PResolution> extremal_presolutions(const CQS& s) {
    require(s.Delta >= 2, "extremal_presolutions: need Delta >= 2");
    CFrac chain = hj_expand(s.Delta, s.Delta - s.Omega);
    int len = static_cast<int>(chain.size());
    WWReport rep = ww_pairs(chain);
    ensure(!rep.falsifies_at_most_two,
           "extremal_presolutions: more than two lowerable pairs");
    std::vector<PResolution> out;
    for (auto [alpha, beta] : rep.pairs) {
        PResolution p;
        p.target = s;
        p.ww = {alpha, beta};
        p.sing2 = detail::wahl_from_slice(chain, 1, alpha - 1);
        {
            CFrac tail(chain.begin() + beta, chain.end());
            std::reverse(tail.begin(), tail.end());
            if (tail.empty()) {
                p.sing1 = WahlData{1, 1};
            } else {
                Fraction f = cf_evaluate(tail);
                p.sing1 = wahl_new(f.num, f.den);
            }
        }
        if (beta == alpha + 1) {
            p.delta = 1;
        } else {
            CFrac mid(chain.begin() + alpha, chain.begin() + (beta - 1));
            p.delta = cf_evaluate(mid).num;
        }
        ensure(p.delta >= 1, "extremal_presolutions: delta < 1");
        const Int &m1 = p.sing1.m, &a1 = p.sing1.a;
        const Int &m2 = p.sing2.m, &a2 = p.sing2.a;
        Int cnum = p.delta + m1 * a2 + m2 * a1;
        ensure(cnum % (m1 * m2) == 0, "extremal_presolutions: c not integral");
        p.c = cnum / (m1 * m2);
        ensure(p.c >= 1, "extremal_presolutions: c < 1");
        ensure(s.Delta == m1 * m1 + m2 * m2 + p.delta * m1 * m2,
               "extremal_presolutions: Delta invariant failed");
        // resolved chain must reproduce Delta/Omega
        CFrac full;
        if (!p.sing2.smooth()) full = reversed(wahl_chain(p.sing2));
        full.push_back(p.c);
        if (!p.sing1.smooth()) {
            CFrac e = wahl_chain(p.sing1);
            full.insert(full.end(), e.begin(), e.end());
        }
        Fraction v = cf_evaluate(full);
        ensure(v.num == s.Delta && v.den == s.Omega,
               "extremal_presolutions: resolved chain does not evaluate to Delta/Omega");
        out.push_back(std::move(p));
    }
    return out;
}

struct SurveyEntry {
    CQS sing;     // normalized: Omega <= Omega^{-1} mod Delta
    CFrac chain;  // hj_expand(Delta, Delta - Omega)
    std::vector<PResolution> resolutions;
    bool trivial_family = false;  // the 1/Delta(1,1) series
};

// all singularities with Delta <= max_delta admitting an extremal
// P-resolution, one entry per normalized (Delta, Omega), ordered by
// (Delta, Omega); the 1/Delta(1,1) series is skipped unless requested
inline std::vector<SurveyEntry> survey(const Int& max_delta, bool include_trivial = false) {
    require(max_delta >= 2, "survey: need bound >= 2");
    std::vector<SurveyEntry> out;
    for (Int d = 2; d <= max_delta; ++d) {
        for (Int o = 1; o < d; ++o) {
            if (gcd(d, o) != 1) continue;
            if (mod_inverse(o, d) < o) continue;  // keep the normalized orientation
            bool trivial = (o == 1);
            if (trivial && !include_trivial) continue;
            CQS s{d, o};
            auto res = extremal_presolutions(s);
            if (res.empty()) continue;
            SurveyEntry e;
            e.sing = s;
            e.chain = hj_expand(d, d - o);
            e.resolutions = std::move(res);
            e.trivial_family = trivial;
            out.push_back(std::move(e));
        }
    }
    return out;
}

}  // namespace cqs
