#pragma once

// Dual-graph surface model MMP: detect K-negative k1A/k2A configurations
// on a minimal-resolution model with marked Wahl chains, contract and flip
// (or divisorially contract) via the division algorithm, and iterate until
// no candidate remains.

#include <set>
#include <sstream>

#include "mori.hpp"

namespace cqs {

struct Curve {
    long id;
    Int self_int;
    Int genus{0};
    std::string label;
};

struct Edge {
    long a, b;
    Int mult{1};
};

struct DualGraphModel {
    std::vector<Curve> curves;
    std::vector<Edge> edges;
    std::vector<std::vector<long>> chains;  // ordered ids of contracted Wahl chains
    std::optional<long> flip_mark;
};

namespace detail {

inline std::pair<long, long> ekey(long a, long b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace detail

// recognize a chain of entries >= 2 as the Wahl chain of some (m, a)
inline std::optional<WahlData> chain_recognize(const CFrac& e) {
    if (e.empty()) return std::nullopt;
    for (const Int& v : e)
        if (v < 2) return std::nullopt;
    Fraction f = cf_evaluate(e);
    Int m = boost::multiprecision::sqrt(f.num);
    if (m * m != f.num || m < 2) return std::nullopt;
    if ((f.den + 1) % m != 0) return std::nullopt;
    Int a = (f.den + 1) / m;
    if (a < 1 || a >= m || gcd(m, a) != 1) return std::nullopt;
    return WahlData{m, a};
}

struct ValidationReport {
    bool ok{true};
    std::vector<std::string> errors;
    std::vector<WahlData> chain_sings;  // parallel to chains; (1,1) on failure

    void fail(std::string m) {
        ok = false;
        errors.push_back(std::move(m));
    }
};

inline ValidationReport graph_validate(const DualGraphModel& g) {
    ValidationReport rep;
    std::map<long, const Curve*> byid;
    for (const Curve& c : g.curves) {
        if (!byid.emplace(c.id, &c).second)
            rep.fail("duplicate curve id " + std::to_string(c.id));
        if (c.genus < 0) rep.fail("negative genus on curve " + std::to_string(c.id));
    }
    std::map<std::pair<long, long>, Int> adj;
    for (const Edge& e : g.edges) {
        if (e.a == e.b) {
            rep.fail("self-edge on curve " + std::to_string(e.a));
            continue;
        }
        if (!byid.count(e.a) || !byid.count(e.b)) {
            rep.fail("edge references unknown curve");
            continue;
        }
        if (e.mult < 1) {
            rep.fail("edge multiplicity < 1");
            continue;
        }
        if (!adj.emplace(detail::ekey(e.a, e.b), e.mult).second)
            rep.fail("duplicate edge between " + std::to_string(e.a) + " and " +
                     std::to_string(e.b));
    }
    auto mult = [&](long a, long b) {
        auto it = adj.find(detail::ekey(a, b));
        return it == adj.end() ? Int(0) : it->second;
    };
    std::set<long> in_chain;
    for (size_t k = 0; k < g.chains.size(); ++k) {
        const auto& ch = g.chains[k];
        bool usable = !ch.empty();
        if (ch.empty()) rep.fail("empty chain " + std::to_string(k));
        for (long id : ch) {
            if (!byid.count(id)) {
                rep.fail("chain " + std::to_string(k) + " references unknown curve");
                usable = false;
            } else if (!in_chain.insert(id).second) {
                rep.fail("curve " + std::to_string(id) + " appears in two chains");
                usable = false;
            }
        }
        WahlData w{1, 1};
        if (usable) {
            CFrac e;
            for (long id : ch) {
                const Curve* c = byid[id];
                if (c->self_int > -2 || c->genus != 0) {
                    rep.fail("chain " + std::to_string(k) +
                             " has a curve that is not rational with self-intersection <= -2");
                    usable = false;
                    break;
                }
                e.push_back(-c->self_int);
            }
            if (usable) {
                auto rec = chain_recognize(e);
                if (!rec)
                    rep.fail("chain " + std::to_string(k) + " is not a Wahl chain");
                else
                    w = *rec;
            }
        }
        if (usable)
            for (size_t i = 0; i < ch.size(); ++i)
                for (size_t j = i + 1; j < ch.size(); ++j) {
                    Int m = mult(ch[i], ch[j]);
                    Int want = (j == i + 1) ? 1 : 0;
                    if (m != want)
                        rep.fail("chain " + std::to_string(k) +
                                 " adjacencies are not the consecutive multiplicity-1 edges");
                }
        rep.chain_sings.push_back(w);
    }
    if (g.flip_mark) {
        long id = *g.flip_mark;
        if (!byid.count(id))
            rep.fail("flip mark references unknown curve");
        else {
            const Curve* c = byid[id];
            if (c->genus != 0 || c->self_int != -1)
                rep.fail("flip mark must be a rational (-1)-curve");
            if (in_chain.count(id)) rep.fail("flip mark lies inside a chain");
        }
    }
    return rep;
}

// K_X . curve on the singular model: adjunction on the resolution minus the
// discrepancy contributions of the contracted chains
inline Rat k_dot(const DualGraphModel& g, long id) {
    const Curve* cur = nullptr;
    for (const Curve& c : g.curves)
        if (c.id == id) cur = &c;
    require(cur != nullptr, "k_dot: unknown curve id");
    std::map<long, Rat> disc;
    for (const auto& ch : g.chains) {
        CFrac e;
        for (long cid : ch) {
            require(cid != id, "k_dot: curve lies inside a contracted chain");
            for (const Curve& c : g.curves)
                if (c.id == cid) e.push_back(-c.self_int);
        }
        Fraction f = cf_evaluate(e);
        ToricData t = toric_data(f.num, f.den);
        ensure(t.chain == e, "k_dot: chain is not its own minimal expansion");
        for (size_t i = 0; i < ch.size(); ++i) disc[ch[i]] = t.discrepancies[i];
    }
    Rat out = Rat(2 * cur->genus - 2 - cur->self_int);
    for (const Edge& e : g.edges) {
        long other = e.a == id ? e.b : (e.b == id ? e.a : -1);
        if (other < 0) continue;
        auto it = disc.find(other);
        if (it != disc.end()) out -= it->second * Rat(e.mult);
    }
    return out;
}

struct Candidate {
    long curve_id;
    bool is_k2a;
    NKind kind;
    Rat kc;
    std::optional<K1A> k1a;  // k1A data, chain read in stored list order
    long k1a_chain{-1};
    std::optional<K2A> k2a;
    long chain_a{-1}, chain_b{-1};
    bool a_front{true}, b_front{true};  // whether the touched end is the list front
};

struct Rejection {
    long curve_id;
    std::string reason;
};

struct CandidateReport {
    std::vector<Candidate> accepted;
    std::vector<Rejection> rejected;
};

inline CandidateReport candidates(const DualGraphModel& g) {
    ValidationReport val = graph_validate(g);
    require(val.ok, "candidates: model failed validation");
    std::map<long, std::pair<long, long>> chain_pos;  // id -> (chain idx, position)
    for (size_t k = 0; k < g.chains.size(); ++k)
        for (size_t i = 0; i < g.chains[k].size(); ++i)
            chain_pos[g.chains[k][i]] = {(long)k, (long)i};
    std::vector<Curve> sorted = g.curves;
    std::sort(sorted.begin(), sorted.end(),
              [](const Curve& a, const Curve& b) { return a.id < b.id; });
    CandidateReport rep;
    for (const Curve& c : sorted) {
        if (chain_pos.count(c.id)) continue;
        if (c.genus != 0 || c.self_int != -1) continue;
        // contacts per chain: (position, multiplicity)
        std::map<long, std::vector<std::pair<long, Int>>> contact;
        for (const Edge& e : g.edges) {
            long other = e.a == c.id ? e.b : (e.b == c.id ? e.a : -1);
            if (other < 0) continue;
            auto it = chain_pos.find(other);
            if (it != chain_pos.end())
                contact[it->second.first].push_back({it->second.second, e.mult});
        }
        if (contact.empty()) {
            rep.rejected.push_back(
                {c.id, "contraction target smooth; not an extremal neighborhood of the "
                       "implemented types"});
            continue;
        }
        if (contact.size() > 2) {
            rep.rejected.push_back({c.id, "meets more than two chains"});
            continue;
        }
        bool bad = false;
        for (auto& [k, v] : contact) {
            if (v.size() > 1) {
                rep.rejected.push_back({c.id, "meets two components of one chain"});
                bad = true;
                break;
            }
            if (v[0].second != 1) {
                rep.rejected.push_back({c.id, "tangential contact (multiplicity > 1)"});
                bad = true;
                break;
            }
        }
        if (bad) continue;
        Candidate cand;
        cand.curve_id = c.id;
        if (contact.size() == 1) {
            auto [k, v] = *contact.begin();
            cand.is_k2a = false;
            cand.k1a_chain = k;
            try {
                cand.k1a = k1a_from(val.chain_sings[k], v[0].first + 1);
            } catch (const domain_error& e) {
                rep.rejected.push_back({c.id, e.what()});
                continue;
            }
            FlipResult fr = flip_k1a(*cand.k1a);
            cand.kind = fr.kind;
            cand.kc = cand.k1a->k_dot_c();
        } else {
            auto it = contact.begin();
            auto [ka, va] = *it;
            auto [kb, vb] = *std::next(it);
            long la = (long)g.chains[ka].size(), lb = (long)g.chains[kb].size();
            if ((va[0].first != 0 && va[0].first != la - 1) ||
                (vb[0].first != 0 && vb[0].first != lb - 1)) {
                rep.rejected.push_back({c.id, "k2A contact is not at a chain end"});
                continue;
            }
            cand.is_k2a = true;
            cand.chain_a = ka;
            cand.chain_b = kb;
            cand.a_front = va[0].first == 0;
            cand.b_front = vb[0].first == 0;
            // read each side from the touched end: back contact conjugates
            auto side = [&](long k, bool front) {
                WahlData w = val.chain_sings[k];
                return front ? w : WahlData{w.m, w.m - w.a};
            };
            WahlData wa = side(ka, cand.a_front), wb = side(kb, cand.b_front);
            try {
                cand.k2a = k2a_new(wa.m, wa.a, wb.m, wb.a);
            } catch (const domain_error& e) {
                rep.rejected.push_back({c.id, e.what()});
                continue;
            }
            cand.kind = mori_division(*cand.k2a).kind;
            cand.kc = cand.k2a->k_dot_c();
        }
        ensure(k_dot(g, c.id) == cand.kc,
               "candidates: model K-product disagrees with the neighborhood");
        rep.accepted.push_back(std::move(cand));
    }
    return rep;
}

namespace detail {

// region string in phase-(a) order, flip curve excluded: k1A uses the chain
// in list order, k2A runs chain A from its far end into the touched end,
// then chain B from the touched end out
inline std::vector<long> region_string(const DualGraphModel& g, const Candidate& cand) {
    std::vector<long> out;
    if (!cand.is_k2a) {
        out = g.chains[cand.k1a_chain];
        return out;
    }
    std::vector<long> a = g.chains[cand.chain_a], b = g.chains[cand.chain_b];
    if (cand.a_front) std::reverse(a.begin(), a.end());
    if (!cand.b_front) std::reverse(b.begin(), b.end());
    out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace detail

// exact type of the contraction of the candidate region, by total evaluation
// of the curve string through the (-1)-curve; cross-checked against the
// division algorithm's invariants
inline CQS contract_cqs(const DualGraphModel& g, const Candidate& cand) {
    std::map<long, Int> self;
    for (const Curve& c : g.curves) self[c.id] = c.self_int;
    CFrac str;
    if (!cand.is_k2a) {
        for (long id : g.chains[cand.k1a_chain]) str.push_back(-self[id]);
        str[cand.k1a->i - 1] -= 1;
    } else {
        std::vector<long> a = g.chains[cand.chain_a], b = g.chains[cand.chain_b];
        if (cand.a_front) std::reverse(a.begin(), a.end());
        if (!cand.b_front) std::reverse(b.begin(), b.end());
        for (long id : a) str.push_back(-self[id]);
        str.push_back(1);
        for (long id : b) str.push_back(-self[id]);
    }
    Fraction v = cf_evaluate(str);
    Int Delta = v.num;
    if (!cand.is_k2a) {
        ensure(Delta == cand.k1a->target.Delta &&
                   mod_floor(v.den - cand.k1a->target.Omega, Delta) == 0,
               "contract_cqs: k1A string disagrees with the division invariants");
        return cand.k1a->target;
    }
    ensure(Delta == cand.k2a->Delta,
           "contract_cqs: k2A string order disagrees with the neighborhood Delta");
    if (Delta == 1) return CQS{1, 0};  // smooth germ (divisorial onto a smooth point)
    Int om = mod_floor(v.den, Delta);
    ensure(om > 0 && gcd(om, Delta) == 1, "contract_cqs: string value is not a CQS type");
    FlipResult fr = flip(*cand.k2a);
    CQS want = fr.kind == NKind::flipping
                   ? *fr.target
                   : cqs_normalize(CQS{fr.y_point->m * fr.y_point->m,
                                       fr.y_point->m * fr.y_point->a - 1});
    ensure(cqs_normalize(CQS{Delta, om}) == want,
           "contract_cqs: string type disagrees with the division algorithm");
    return CQS{Delta, om};
}

struct StepRecord {
    long curve_id;
    NKind kind;
    std::optional<K1A> nbhd_k1a;
    std::optional<K2A> nbhd_k2a;
    CQS target;  // contraction type in the region's string orientation
    DualGraphModel before, after;
    Rat kc_before;
    std::optional<Rat> kc_after;  // flip: K.C+ at the new curve; divisorial: none
    long blowdowns{0}, blowups{0};
};

namespace detail {

struct WorkGraph {
    std::map<long, Curve> curves;
    std::map<std::pair<long, long>, Int> adj;
    std::vector<std::set<long>> clusters;  // curves through each contracted point

    Int mult(long a, long b) const {
        auto it = adj.find(ekey(a, b));
        return it == adj.end() ? Int(0) : it->second;
    }
    void set_mult(long a, long b, const Int& m) {
        if (m == 0)
            adj.erase(ekey(a, b));
        else
            adj[ekey(a, b)] = m;
    }

    // contract a rational (-1)-curve: neighbors gain (D.E)^2 on their
    // self-intersection and (D1.E)(D2.E) pairwise; curves through E now
    // pass through the image point
    void blowdown(long e) {
        auto it = curves.find(e);
        require(it != curves.end(), "blowdown: unknown curve");
        require(it->second.genus == 0 && it->second.self_int == -1,
                "blowdown: curve is not a rational (-1)-curve");
        std::vector<std::pair<long, Int>> nb;
        for (auto& [k, m] : adj)
            if (k.first == e)
                nb.push_back({k.second, m});
            else if (k.second == e)
                nb.push_back({k.first, m});
        for (auto& [d, m] : nb) curves[d].self_int += m * m;
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j)
                set_mult(nb[i].first, nb[j].first,
                         mult(nb[i].first, nb[j].first) + nb[i].second * nb[j].second);
        std::set<long> cl;
        for (auto& [d, m] : nb) cl.insert(d);
        for (auto cit = clusters.begin(); cit != clusters.end();) {
            if (cit->count(e)) {
                for (long x : *cit)
                    if (x != e) cl.insert(x);
                cit = clusters.erase(cit);
            } else
                ++cit;
        }
        clusters.push_back(std::move(cl));
        for (auto& [d, m] : nb) adj.erase(ekey(e, d));
        curves.erase(e);
    }
};

inline WorkGraph work_from(const DualGraphModel& g) {
    WorkGraph wg;
    for (const Curve& c : g.curves) wg.curves[c.id] = c;
    for (const Edge& e : g.edges) wg.set_mult(e.a, e.b, e.mult);
    return wg;
}

inline DualGraphModel model_from(const WorkGraph& wg,
                                 std::vector<std::vector<long>> chains,
                                 std::optional<long> mark) {
    DualGraphModel g;
    for (auto& [id, c] : wg.curves) g.curves.push_back(c);
    for (auto& [k, m] : wg.adj) g.edges.push_back({k.first, k.second, m});
    g.chains = std::move(chains);
    g.flip_mark = mark;
    return g;
}

struct ReduceOp {
    long pos;
    bool has_left, has_right;
};

// remove leftmost 1-entries until none remain, decrementing neighbors;
// records the operations for inverse replay as blowups
inline std::vector<ReduceOp> reduce_string(CFrac& v) {
    std::vector<ReduceOp> ops;
    while (true) {
        long p = -1;
        for (long i = 0; i < (long)v.size(); ++i)
            if (v[i] == 1) {
                p = i;
                break;
            }
        if (p < 0) break;
        ReduceOp op{p, p > 0, p + 1 < (long)v.size()};
        if (op.has_left) v[p - 1] -= 1;
        if (op.has_right) v[p + 1] -= 1;
        v.erase(v.begin() + p);
        for (const Int& x : v) ensure(x >= 1, "reduce_string: entry dropped below 1");
        ops.push_back(op);
    }
    return ops;
}

}  // namespace detail

inline StepRecord mmp_step(const DualGraphModel& g, const Candidate& cand) {
    StepRecord rec;
    rec.curve_id = cand.curve_id;
    rec.kind = cand.kind;
    rec.nbhd_k1a = cand.k1a;
    rec.nbhd_k2a = cand.k2a;
    rec.before = g;
    rec.kc_before = cand.kc;
    ensure(rec.kc_before < 0, "mmp_step: candidate is not K-negative");
    rec.target = contract_cqs(g, cand);
    FlipResult fr = cand.is_k2a ? flip(*cand.k2a) : flip_k1a(*cand.k1a);
    ensure(fr.kind == cand.kind, "mmp_step: kind disagrees with the division algorithm");

    detail::WorkGraph wg = detail::work_from(g);
    std::vector<long> order = detail::region_string(g, cand);
    std::set<long> region(order.begin(), order.end());

    // phase (a): contract the flip curve, then every (-1)-curve arising in
    // the region, lowest id first
    wg.blowdown(cand.curve_id);
    ++rec.blowdowns;
    while (true) {
        long pick = -1;
        for (long id : order)
            if (wg.curves.count(id) && wg.curves[id].self_int == -1 &&
                (pick < 0 || id < pick))
                pick = id;
        if (pick < 0) break;
        wg.blowdown(pick);
        ++rec.blowdowns;
    }
    std::vector<long> surv;
    for (long id : order)
        if (wg.curves.count(id)) surv.push_back(id);
    CFrac M;
    for (long id : surv) {
        ensure(wg.curves[id].self_int <= -2, "mmp_step: region curve not contracted away");
        M.push_back(-wg.curves[id].self_int);
    }
    for (size_t i = 0; i < surv.size(); ++i)
        for (size_t j = i + 1; j < surv.size(); ++j)
            ensure(wg.mult(surv[i], surv[j]) == (j == i + 1 ? 1 : 0),
                   "mmp_step: contracted region is not a chain");

    std::set<long> consumed_chains;
    if (!cand.is_k2a)
        consumed_chains.insert(cand.k1a_chain);
    else {
        consumed_chains.insert(cand.chain_a);
        consumed_chains.insert(cand.chain_b);
    }
    std::vector<std::vector<long>> chains;
    for (size_t k = 0; k < g.chains.size(); ++k)
        if (!consumed_chains.count((long)k)) chains.push_back(g.chains[k]);

    if (cand.kind == NKind::divisorial) {
        const WahlData& y = *fr.y_point;
        if (y.smooth())
            ensure(surv.empty(), "mmp_step: divisorial region did not contract fully");
        else {
            CFrac wc = wahl_chain(y);
            ensure(M == wc || M == reversed(wc),
                   "mmp_step: divisorial remainder is not the Wahl chain of the new point");
            chains.push_back(surv);
        }
        rec.after = detail::model_from(wg, std::move(chains), std::nullopt);
        ensure(graph_validate(rec.after).ok, "mmp_step: result model failed validation");
        return rec;
    }

    // phase (b) data
    const PResolution& p = *fr.pres;
    Int Delta = p.target.Delta;
    ensure(Delta == rec.target.Delta, "mmp_step: Delta mismatch");
    {
        Fraction mv = cf_evaluate(M);
        ensure(mv.num == Delta && mod_floor(mv.den - rec.target.Omega, Delta) == 0,
               "mmp_step: contracted chain does not present the target");
    }

    // phase (c): the X+ resolution string [rev chain(sing2), c, chain(sing1)],
    // reversed if its orientation does not match the region string
    CFrac T;
    WahlData pre_sing = p.sing2, suf_sing = p.sing1;
    if (!p.sing2.smooth()) T = reversed(wahl_chain(p.sing2));
    T.push_back(p.c);
    if (!p.sing1.smooth()) {
        CFrac e = wahl_chain(p.sing1);
        T.insert(T.end(), e.begin(), e.end());
    }
    {
        Fraction tv = cf_evaluate(T);
        ensure(tv.num == Delta, "mmp_step: resolution string Delta mismatch");
        if (mod_floor(tv.den - rec.target.Omega, Delta) != 0) {
            T = reversed(T);
            std::swap(pre_sing, suf_sing);
            Fraction rv = cf_evaluate(T);
            ensure(rv.num == Delta && mod_floor(rv.den - rec.target.Omega, Delta) == 0,
                   "mmp_step: neither string orientation matches the target");
        }
    }
    long pre_len = pre_sing.smooth() ? 0 : (long)wahl_chain(pre_sing).size();

    CFrac red = T;
    auto ops = detail::reduce_string(red);
    ensure(red == M, "mmp_step: reduced resolution string disagrees with the region");

    long next_id = 0;
    for (const Curve& c : g.curves) next_id = std::max(next_id, c.id);
    ++next_id;
    std::vector<long> L = surv;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const auto& op = *it;
        long nid = next_id++;
        Curve nc;
        nc.id = nid;
        nc.self_int = -1;
        wg.curves[nid] = nc;
        if (op.has_left && op.has_right) {
            long x = L[op.pos - 1], y = L[op.pos];
            ensure(wg.mult(x, y) == 1, "mmp_step: blowup corner is not a simple crossing");
            for (const auto& cl : wg.clusters)
                if (cl.count(x) && cl.count(y))
                    for (long z : cl)
                        if (z != x && z != y && wg.curves.count(z))
                            throw domain_error(
                                "mmp_step: unsupported configuration: external curve "
                                "passes through a blowup center");
            wg.set_mult(x, y, 0);
            wg.set_mult(x, nid, 1);
            wg.set_mult(y, nid, 1);
            wg.curves[x].self_int -= 1;
            wg.curves[y].self_int -= 1;
        } else if (op.has_left || op.has_right) {
            long x = op.has_left ? L[op.pos - 1] : L[op.pos];
            wg.set_mult(x, nid, 1);
            wg.curves[x].self_int -= 1;
        } else
            ensure(false, "mmp_step: resolution string vanished entirely");
        L.insert(L.begin() + op.pos, nid);
        ++rec.blowups;
    }
    ensure((long)L.size() == (long)T.size(), "mmp_step: rebuilt region has wrong length");
    for (size_t i = 0; i < L.size(); ++i)
        ensure(wg.curves[L[i]].self_int == -T[i],
               "mmp_step: rebuilt region has wrong self-intersections");

    long plus_id = L[pre_len];
    wg.curves[plus_id].label = "plus";
    if (pre_len > 0)
        chains.push_back(std::vector<long>(L.begin(), L.begin() + pre_len));
    if (pre_len + 1 < (long)L.size())
        chains.push_back(std::vector<long>(L.begin() + pre_len + 1, L.end()));

    rec.after = detail::model_from(wg, std::move(chains), std::nullopt);
    ensure(graph_validate(rec.after).ok, "mmp_step: result model failed validation");
    rec.kc_after = k_dot(rec.after, plus_id);
    ensure(*rec.kc_after == p.k_dot_cplus(),
           "mmp_step: K.C+ on the result disagrees with the flip formula");
    return rec;
}

struct RunResult {
    std::vector<StepRecord> steps;
    DualGraphModel final_model;
    CandidateReport final_report;
};

inline RunResult mmp_run(const DualGraphModel& g, long ceiling = 64) {
    RunResult out;
    DualGraphModel cur = g;
    while (true) {
        CandidateReport rep = candidates(cur);
        if (rep.accepted.empty()) {
            out.final_model = cur;
            out.final_report = std::move(rep);
            return out;
        }
        ensure((long)out.steps.size() < ceiling,
               "mmp_run: step ceiling exceeded; termination theorem violated");
        StepRecord rec = mmp_step(cur, rep.accepted.front());
        cur = rec.after;
        out.steps.push_back(std::move(rec));
    }
}

inline std::string export_dot(const DualGraphModel& g) {
    std::ostringstream o;
    o << "graph model {\n";
    std::set<long> in_chain;
    for (const auto& ch : g.chains)
        for (long id : ch) in_chain.insert(id);
    std::vector<Curve> sorted = g.curves;
    std::sort(sorted.begin(), sorted.end(),
              [](const Curve& a, const Curve& b) { return a.id < b.id; });
    auto node = [&](const Curve& c, const std::string& indent) {
        o << indent << "c" << c.id << " [label=\"" << c.id << ": " << c.self_int;
        if (c.genus != 0) o << " g=" << c.genus;
        if (!c.label.empty()) o << " " << c.label;
        o << "\"";
        if (g.flip_mark && *g.flip_mark == c.id) o << ", shape=diamond";
        if (c.label == "plus") o << ", shape=doublecircle";
        o << "];\n";
    };
    for (size_t k = 0; k < g.chains.size(); ++k) {
        o << "  subgraph cluster_" << k << " {\n    label=\"chain " << k << "\";\n";
        for (long id : g.chains[k])
            for (const Curve& c : sorted)
                if (c.id == id) node(c, "    ");
        o << "  }\n";
    }
    for (const Curve& c : sorted)
        if (!in_chain.count(c.id)) node(c, "  ");
    std::vector<Edge> es = g.edges;
    for (Edge& e : es)
        if (e.a > e.b) std::swap(e.a, e.b);
    std::sort(es.begin(), es.end(), [](const Edge& x, const Edge& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    for (const Edge& e : es) {
        o << "  c" << e.a << " -- c" << e.b;
        if (e.mult > 1) o << " [label=\"" << e.mult << "\"]";
        o << ";\n";
    }
    o << "}\n";
    return o.str();
}

}  // namespace cqs
