// Acceptance gate: one line per criterion, nonzero exit if any fail.

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cqs/fanfam.hpp"
#include "cqs/mmp.hpp"

using namespace cqs;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& msg) {
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " - " << msg
              << "\n";
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// published survey of singularities with Delta <= 45, as normalized
// (Delta, Omega) with per-entry resolution counts; the list prints one
// singularity twice under its two orientations (39/4 appears as 39/35 and
// 39/29) and omits 1/39(1,16), which the classification below recovers
struct TableEntry {
    long Delta, Omega;
    int n_res;
};

const std::vector<TableEntry> kSurveyTable = {
    {7, 2, 1},   {11, 3, 1},  {13, 3, 1},  {15, 4, 2},  {16, 9, 2},  {19, 4, 1},
    {19, 7, 1},  {21, 4, 1},  {22, 5, 1},  {23, 4, 1},  {24, 7, 1},  {25, 9, 1},
    {27, 4, 1},  {29, 16, 1}, {31, 4, 1},  {31, 5, 1},  {31, 7, 1},  {34, 9, 1},
    {35, 4, 1},  {36, 13, 2}, {37, 7, 1},  {37, 10, 1}, {39, 4, 1},  {40, 9, 2},
    {40, 11, 1}, {41, 23, 1}, {43, 4, 1},  {43, 6, 1},  {43, 9, 1},  {43, 10, 1},
    {45, 16, 1}, {45, 26, 1},
};

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    auto s = survey(45);
    double dt = seconds_since(t0);
    std::map<std::pair<long, long>, int> got;
    for (const auto& e : s)
        got[{(long)e.sing.Delta, (long)e.sing.Omega}] = (int)e.resolutions.size();
    int table_res = 0, matched = 0, doubles = 0;
    bool ok = true;
    for (const auto& t : kSurveyTable) {
        table_res += t.n_res;
        if (t.n_res == 2) ++doubles;
        auto it = got.find({t.Delta, t.Omega});
        if (it == got.end() || it->second != t.n_res) {
            ok = false;
            continue;
        }
        ++matched;
    }
    // the classification finds exactly one singularity beyond the table
    ok = ok && doubles == 4 && got.size() == kSurveyTable.size() + 1 &&
         got.count({39, 16}) && got.at({39, 16}) == 1;
    ok = ok && dt < 1.0;
    std::ostringstream m;
    m << "survey(45): " << matched << "/" << kSurveyTable.size()
      << " published entries matched (" << table_res << " resolutions, " << doubles
      << " doubly resolved), one additional singularity 1/39(1,16), " << dt << "s";
    report(1, ok, m.str());
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    auto s = survey(500);
    double dt = seconds_since(t0);
    bool ok = !s.empty();
    for (const auto& e : s) {
        if (e.resolutions.size() > 2) ok = false;
        for (const auto& p : e.resolutions)
            if (p.delta != e.resolutions[0].delta) ok = false;
    }
    ok = ok && dt < 120.0;
    std::ostringstream m;
    m << "survey(500): " << s.size()
      << " singularities, each with at most 2 extremal P-resolutions of equal delta, "
      << dt << "s";
    report(2, ok, m.str());
}

void criterion3() {
    bool ok = true;
    std::string note = "P-resolution {(5,2),(3,1)}, delta 4, of 1/94(1,53): "
                       "both initial k2A neighborhoods flip back";
    try {
        auto res = extremal_presolutions(cqs_new(94, 53));
        ok = res.size() == 1 && res[0].delta == 4 &&
             detail::sings_key(res[0].sing1, res[0].sing2) ==
                 detail::sings_key(WahlData{5, 2}, WahlData{3, 1});
        auto [n1, n2] = initial_k2as(res[0]);
        std::set<std::pair<long, long>> heads = {{(long)n1.m1, (long)n1.a1},
                                                 {(long)n2.m1, (long)n2.a1}};
        ok = ok && heads == std::set<std::pair<long, long>>{{17, 7}, {23, 10}};
        for (const K2A* n : {&n1, &n2}) {
            FlipResult f = flip(*n);
            ok = ok && f.kind == NKind::flipping && *f.target == CQS{94, 53};
        }
    } catch (const std::exception& e) {
        ok = false;
        note = e.what();
    }
    report(3, ok, note);
}

void criterion4() {
    bool ok = true;
    std::string note = "divisorial neighborhood (4,3),(2,1): d(k) = 0, "
                       "m1' = delta = gcd = 2, c(k) = -1, Y acquires (2,1), target 1/4(1,1)";
    try {
        K2A n = k2a_new(4, 3, 2, 1);
        MoriData md = mori_division(n);
        ok = md.kind == NKind::divisorial && md.d(md.k) == 0 && md.m1p == 2 &&
             md.m1p == n.delta && md.m1p == gcd(n.m1, n.m2) && md.c(md.k) == -1 &&
             n.Delta == md.m1p * md.m1p;
        FlipResult f = flip(n);
        ok = ok && f.kind == NKind::divisorial && *f.y_point == WahlData{2, 1} &&
             *f.target == CQS{4, 1};
    } catch (const std::exception& e) {
        ok = false;
        note = e.what();
    }
    report(4, ok, note);
}

void criterion5() {
    bool ok = true;
    int neighborhoods = 0, shifts = 0;
    std::string note;
    try {
        std::vector<K2A> pool;
        for (long m1 = 2; m1 <= 14 && pool.size() < 140; ++m1)
            for (long a1 = 1; a1 < m1; ++a1)
                for (long m2 = 1; m2 <= m1; ++m2)
                    for (long a2 = 1; a2 <= (m2 == 1 ? 1 : m2 - 1); ++a2) {
                        if (gcd(Int(m1), Int(a1)) != 1 || gcd(Int(m2), Int(a2)) != 1)
                            continue;
                        Int d = Int(m1) * a2 + Int(m2) * a1 - Int(m1) * m2;
                        if (d <= 0) continue;
                        if (m1 * m1 + m2 * m2 - d * m1 * m2 <= 0) continue;
                        pool.push_back(k2a_new(m1, a1, m2, a2));
                    }
        std::mt19937_64 rng(8128);
        std::shuffle(pool.begin(), pool.end(), rng);
        for (const K2A& n : pool) {
            if (neighborhoods >= 100) break;
            ++neighborhoods;
            MoriData md = mori_division(n);
            FlipResult f = flip(n);
            for (long j = 2 - 6; j <= 2 + 6; ++j) {
                if (!(md.d(j) > 0 && md.d(j + 1) > 0)) continue;
                K2A s = k2a_shift(md, j);
                ++shifts;
                if (!(s.delta == n.delta && s.Delta == n.Delta)) ok = false;
                if (!flip_equal(flip(s), f)) ok = false;
            }
            exchange_data(n, 3);  // exchange identities verified internally
        }
        ok = ok && neighborhoods >= 100;
        std::ostringstream m;
        m << neighborhoods << " k2A neighborhoods, " << shifts
          << " admissible mutations to depth 6: delta/Delta and the flip are "
             "invariant, exchange identities hold";
        note = m.str();
    } catch (const std::exception& e) {
        ok = false;
        note = e.what();
    }
    report(5, ok, note);
}

void criterion6() {
    bool ok = true;
    long valid = 0, refused = 0;
    std::string note;
    try {
        for (long m = 2; m <= 30; ++m)
            for (long a = 1; a < m; ++a) {
                if (gcd(Int(m), Int(a)) != 1) continue;
                WahlData w = wahl_new(m, a);
                CFrac ch = wahl_chain(w);
                for (long i = 1; i <= (long)ch.size(); ++i) {
                    K1A k;
                    try {
                        k = k1a_from(w, i);
                    } catch (const domain_error&) {
                        ++refused;
                        continue;
                    }
                    ++valid;
                    // degenerations flip equal (checked inside flip_k1a); the
                    // flip lies among the P-resolutions of the target with
                    // matching delta (checked inside flip)
                    FlipResult f = flip_k1a(k);
                    if (f.kind == NKind::flipping && f.pres->delta != k.delta)
                        ok = false;
                }
            }
        ok = ok && valid == 1315 && refused == 1306;
        std::ostringstream m;
        m << "k1A over all Wahl singularities with m <= 30: " << valid
          << " neighborhoods flip consistently, " << refused
          << " positions cleanly refused (no CQS target)";
        note = m.str();
    } catch (const std::exception& e) {
        ok = false;
        note = e.what();
    }
    report(6, ok, note);
}

void criterion7() {
    bool ok = true;
    std::string note;
    try {
        // zero CF <-> unique triangulation, exhaustive for r <= 5, entries <= 5
        for (int r = 2; r <= 5 && ok; ++r) {
            std::vector<Int> v(r, 1);
            while (true) {
                auto tris = triangulations_by_degrees(v);
                if (is_zero_cf(CFrac(v.begin(), v.end())) != (tris.size() == 1) ||
                    tris.size() > 1)
                    ok = false;
                int i = 0;
                while (i < r && v[i] == 5) v[i++] = 1;
                if (i == r) break;
                v[i] += 1;
            }
        }
        // K^2 against the adjunction linear system, n <= 200
        std::mt19937_64 rng(6174);
        int done = 0;
        while (done < 250) {
            Int n = 2 + (long)(rng() % 199);
            Int a = 1 + (long)(rng() % 198);
            if (a >= n || gcd(n, a) != 1) continue;
            ++done;
            ToricData t = toric_data(n, a);
            size_t r = t.chain.size();
            std::vector<Rat> diag(r), rhs(r);
            for (size_t i = 0; i < r; ++i) {
                diag[i] = -Rat(t.chain[i]);
                rhs[i] = Rat(t.chain[i] - 2);
            }
            for (size_t i = 1; i < r; ++i) {
                Rat f = Rat(1) / diag[i - 1];
                diag[i] -= f;
                rhs[i] -= f * rhs[i - 1];
            }
            std::vector<Rat> c(r);
            Rat ksq = 0;
            for (size_t i = r; i-- > 0;) {
                Rat x = rhs[i];
                if (i + 1 < r) x -= c[i + 1];
                c[i] = x / diag[i];
            }
            for (size_t i = 0; i < r; ++i) {
                if (c[i] != t.discrepancies[i]) ok = false;
                ksq += c[i] * Rat(t.chain[i] - 2);
            }
            if (ksq != ksq_minres(n, a)) ok = false;
        }
        // expansion round trips and the transfer determinant
        int trips = 0;
        while (trips < 10000) {
            Int n = 2 + (long)(rng() % 3000);
            Int a = 1 + (long)(rng() % 2999);
            if (a >= n || gcd(n, a) != 1) continue;
            ++trips;
            CFrac b = hj_expand(n, a);
            Fraction v = cf_evaluate(b);
            if (!(v.num == n && v.den == a)) ok = false;
            Int n2 = 0, n1 = 1, d2 = -1, d1 = 0;
            for (const Int& e : b) {
                Int nn = e * n1 - n2, dd = e * d1 - d2;
                n2 = n1; n1 = nn;
                d2 = d1; d1 = dd;
                if (n2 * d1 - n1 * d2 != 1) ok = false;
            }
        }
        note = "oracles: zero-CF/triangulation bijection, discrepancies and K^2 vs "
               "adjunction solve (n <= 200), 10000 expansion round trips with unit "
               "transfer determinant";
    } catch (const std::exception& e) {
        ok = false;
        note = e.what();
    }
    report(7, ok, note);
}

DualGraphModel chain_with_flip(const WahlData& w, long i) {
    DualGraphModel g;
    CFrac ch = wahl_chain(w);
    std::vector<long> chain;
    for (size_t j = 0; j < ch.size(); ++j) {
        g.curves.push_back({(long)j + 1, -ch[j], 0, ""});
        chain.push_back((long)j + 1);
        if (j > 0) g.edges.push_back({(long)j, (long)j + 1, 1});
    }
    long e = (long)ch.size() + 1;
    g.curves.push_back({e, -1, 0, ""});
    g.edges.push_back({i, e, 1});
    g.chains.push_back(chain);
    g.flip_mark = e;
    return g;
}

DualGraphModel two_chains_with_flip(const WahlData& wa, const WahlData& wb) {
    DualGraphModel g;
    long id = 0;
    auto add = [&](const WahlData& w) {
        std::vector<long> chain;
        for (const Int& e : wahl_chain(w)) {
            ++id;
            g.curves.push_back({id, -e, 0, ""});
            chain.push_back(id);
            if (chain.size() > 1) g.edges.push_back({id - 1, id, 1});
        }
        g.chains.push_back(chain);
        return chain.front();
    };
    long fa = add(wa), fb = add(wb);
    ++id;
    g.curves.push_back({id, -1, 0, ""});
    g.edges.push_back({fa, id, 1});
    g.edges.push_back({id, fb, 1});
    g.flip_mark = id;
    return g;
}

void criterion8() {
    bool ok = true;
    std::string note;
    try {
        struct Expect {
            DualGraphModel model;
            NKind kind;
            CQS target;
            Rat kc_before;
            std::optional<Rat> kc_after;
            long bd, bu;
        };
        std::vector<Expect> cases;
        cases.push_back({chain_with_flip(wahl_new(3, 1), 1), NKind::flipping,
                         CQS{7, 2}, Rat(-1, 3), Rat(1, 2), 1, 0});
        cases.push_back({chain_with_flip(wahl_new(2, 1), 1), NKind::flipping,
                         CQS{3, 1}, Rat(-1, 2), Rat(1), 1, 0});
        cases.push_back({two_chains_with_flip(wahl_new(5, 3), wahl_new(2, 1)),
                         NKind::flipping, CQS{19, 7}, Rat(-1, 10), Rat(1, 6), 2, 1});
        cases.push_back({two_chains_with_flip(wahl_new(4, 3), wahl_new(2, 1)),
                         NKind::divisorial, CQS{4, 1}, Rat(-1, 4), std::nullopt, 4, 0});
        int steps = 0;
        for (const Expect& e : cases) {
            RunResult r = mmp_run(e.model);
            if (r.steps.size() != 1 || !r.final_report.accepted.empty()) {
                ok = false;
                continue;
            }
            const StepRecord& s = r.steps[0];
            ++steps;
            if (s.kind != e.kind || !(s.target == e.target) ||
                s.kc_before != e.kc_before || s.blowdowns != e.bd || s.blowups != e.bu)
                ok = false;
            if (s.kc_after.has_value() != e.kc_after.has_value() ||
                (s.kc_after && *s.kc_after != *e.kc_after))
                ok = false;
        }
        // randomized termination: every small one-chain model runs to a
        // candidate-free model within the step ceiling
        int runs = 0;
        for (long m = 2; m <= 8; ++m)
            for (long a = 1; a < m; ++a) {
                if (gcd(Int(m), Int(a)) != 1) continue;
                WahlData w = wahl_new(m, a);
                CFrac ch = wahl_chain(w);
                if (ch.size() > 6) continue;
                for (long i = 1; i <= (long)ch.size(); ++i) {
                    try {
                        RunResult r = mmp_run(chain_with_flip(w, i), 64);
                        ++runs;
                        if (!r.final_report.accepted.empty()) ok = false;
                        for (const StepRecord& s : r.steps)
                            if (!(s.kc_before < 0) || (s.kc_after && !(*s.kc_after > 0)))
                                ok = false;
                    } catch (const domain_error&) {
                        // no neighborhood at this position
                    }
                }
            }
        ok = ok && steps == 4 && runs > 0;
        std::ostringstream m;
        m << "MMP: 4 worked runs match their step records (kind, target, K.C sign "
             "flip, blowdown/blowup counts); "
          << runs << " randomized one-chain models terminate candidate-free";
        note = m.str();
    } catch (const std::exception& e) {
        ok = false;
        note = e.what();
    }
    report(8, ok, note);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
