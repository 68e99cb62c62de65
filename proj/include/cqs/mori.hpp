#pragma once

// Mori's division algorithm: numerical data of k1A/k2A extremal
// neighborhoods, flips and divisorial contractions, k1A <-> k2A
// degeneration, initial k2A reconstruction, mutations, and the cluster
// exchange bookkeeping of the universal family.

#include <array>
#include <map>

#include "presolve.hpp"

namespace cqs {

enum class NKind { flipping, divisorial };

// k2A extremal neighborhood: two Wahl singularities (m1,a1), (m2,a2)
// through the flipping curve, canonical orientation m1 >= m2
struct K2A {
    Int m1, a1, m2, a2;
    Int delta;  // m1 a2 + m2 a1 - m1 m2 > 0
    Int Delta;  // m1^2 + m2^2 - delta m1 m2 > 0

    Rat k_dot_c() const { return -Rat(delta, m1 * m2); }
    friend bool operator==(const K2A& x, const K2A& y) {
        return x.m1 == y.m1 && x.a1 == y.a1 && x.m2 == y.m2 && x.a2 == y.a2;
    }
};

inline K2A k2a_new(Int m1, Int a1, Int m2, Int a2) {
    require(m1 >= 1 && a1 >= 1 && m2 >= 1 && a2 >= 1, "K2A: entries must be >= 1");
    require(a1 < m1 || m1 == 1, "K2A: need a1 < m1 (or m1 = a1 = 1)");
    require(a2 < m2 || m2 == 1, "K2A: need a2 < m2 (or m2 = a2 = 1)");
    require(gcd(m1, a1) == 1, "K2A: m1, a1 not coprime");
    require(gcd(m2, a2) == 1, "K2A: m2, a2 not coprime");
    if (m1 < m2) {
        std::swap(m1, m2);
        std::swap(a1, a2);
    }
    K2A n{std::move(m1), std::move(a1), std::move(m2), std::move(a2), 0, 0};
    n.delta = n.m1 * n.a2 + n.m2 * n.a1 - n.m1 * n.m2;
    require(n.delta > 0, "K2A: delta = m1 a2 + m2 a1 - m1 m2 must be positive");
    n.Delta = n.m1 * n.m1 + n.m2 * n.m2 - n.delta * n.m1 * n.m2;
    require(n.Delta > 0, "K2A: Delta = m1^2 + m2^2 - delta m1 m2 must be positive");
    return n;
}

inline WahlData side1(const K2A& n) { return WahlData{n.m1, n.a1}; }
inline WahlData side2(const K2A& n) { return WahlData{n.m2, n.a2}; }

namespace detail {

// value at index i of s(1) = x1, s(2) = x2, s(i+1) = delta s(i) - s(i-1)
inline Int lin2(const Int& delta, const Int& x1, const Int& x2, long i) {
    Int a = x1, b = x2;  // values at (j, j+1)
    if (i >= 1) {
        for (long j = 1; j < i; ++j) {
            Int nb = delta * b - a;
            a = b; b = nb;
        }
        return a;
    }
    for (long j = 1; j > i; --j) {
        Int na = delta * a - b;
        b = a; a = na;
    }
    return a;
}

}  // namespace detail

// Mori's division data: d and c sequences, the division length k, and the
// flip-side invariants m1', m2', a1', a2'
struct MoriData {
    K2A n;
    long k;  // d(k-1) > 0 >= d(k)
    NKind kind;
    Int m1p;                 // d(k-1)
    Int m2p;                 // -d(k); 0 in the divisorial case
    Int a1p;                 // = c(k-1) mod m1p, in [1, m1p]
    std::optional<Int> a2p;  // = c(k) mod m2p, in [1, m2p]; only if m2p > 0

    // d(1) = m1, d(2) = m2, recursion d(i+1) = delta d(i) - d(i-1) except
    // d(k+1) = -d(k-1), d(k+2) = -d(k); delta = 1 is 5-periodic
    Int d(long i) const { return seq(i, n.m1, n.m2); }
    // c(1) = a1, c(2) = m2 - a2, same recursion and extension
    Int c(long i) const { return seq(i, n.a1, n.m2 - n.a2); }

  private:
    Int seq(long i, const Int& x1, const Int& x2) const {
        if (n.delta == 1) {
            // (x1, x2, x2-x1, -x2, x1-x2) repeating
            switch (((i - 1) % 5 + 5) % 5) {
                case 0: return x1;
                case 1: return x2;
                case 2: return x2 - x1;
                case 3: return -x2;
                default: return x1 - x2;
            }
        }
        if (i <= k) return detail::lin2(n.delta, x1, x2, i);
        Int a = -detail::lin2(n.delta, x1, x2, k - 1);  // value at k+1
        Int b = -detail::lin2(n.delta, x1, x2, k);      // value at k+2
        for (long j = k + 1; j < i; ++j) {
            Int nb = n.delta * b - a;
            a = b; b = nb;
        }
        return a;
    }
};

inline MoriData mori_division(const K2A& n) {
    MoriData md;
    md.n = n;
    Int a = n.m1, b = n.m2;
    long k = 2;
    while (b > 0) {
        Int nb = n.delta * b - a;
        a = b; b = nb;
        ++k;
    }
    md.k = k;
    ensure(k >= 3, "mori_division: k < 3");
    md.kind = b < 0 ? NKind::flipping : NKind::divisorial;
    md.m1p = a;
    md.m2p = -b;
    ensure(md.m1p > 0, "mori_division: d(k-1) not positive");
    ensure(md.m1p == md.d(k - 1) && -md.m2p == md.d(k),
           "mori_division: sequence accessor disagrees with the division loop");
    md.a1p = mod_1_to_n(md.c(k - 1), md.m1p);
    if (md.m2p > 0) md.a2p = mod_1_to_n(md.c(k), md.m2p);
    // quadratic invariance d(i)^2 + d(i+1)^2 - delta d(i)d(i+1) = Delta on
    // every consecutive pair not straddling the sign change at k
    for (long i = -3; i <= k + 4; ++i) {
        if (n.delta == 1 ? ((i - 3) % 5 + 5) % 5 == 0 : i == k) continue;
        Int x = md.d(i), y = md.d(i + 1);
        ensure(x * x + y * y - n.delta * x * y == n.Delta,
               "mori_division: quadratic d-invariant violated");
    }
    if (md.kind == NKind::divisorial) {
        ensure(md.m1p == n.delta && md.m1p == gcd(n.m1, n.m2),
               "mori_division: divisorial case expects m1' = delta = gcd(m1, m2)");
        ensure(md.c(k) == -1, "mori_division: divisorial case expects c(k) = -1");
    }
    return md;
}

// outcome of contracting the flipping curve and flipping (or of the
// divisorial contraction when d(k) = 0)
struct FlipResult {
    NKind kind;
    std::optional<PResolution> pres;    // flipping: the extremal P-resolution
    std::optional<WahlData> y_point;    // divisorial: singularity acquired by Y
    std::optional<CQS> target;          // normalized contraction target (absent
                                        // for a divisorial contraction to a
                                        // smooth point)
    std::optional<CQS> target_raw;      // orientation given by the Omega
                                        // congruence, before normalization
};

// the two orientations (m, a), (m, m-a) name the same singularity
inline WahlData wahl_unoriented(const WahlData& w) {
    return w.smooth() ? w : WahlData{w.m, std::min(w.a, Int(w.m - w.a))};
}

namespace detail {

inline std::pair<WahlData, WahlData> sings_key(const WahlData& x, const WahlData& y) {
    WahlData a = wahl_unoriented(x), b = wahl_unoriented(y);
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace detail

inline FlipResult flip(const K2A& n) {
    MoriData md = mori_division(n);
    FlipResult res;
    res.kind = md.kind;
    if (md.kind == NKind::divisorial) {
        res.y_point = WahlData{md.m1p, md.a1p};
        if (md.m1p > 1) {
            res.target_raw = cqs_new(md.m1p * md.m1p, md.m1p * md.a1p - 1);
            res.target = cqs_normalize(*res.target_raw);
        }
        return res;
    }
    Int omega = mod_1_to_n(
        (n.m2 - n.delta * n.m1) * (n.m2 - n.a2) + n.m1 * n.a1 - 1, n.Delta);
    ensure(omega < n.Delta, "flip: Omega congruence produced Omega = Delta");
    CQS raw = cqs_new(n.Delta, omega);
    WahlData s1 = wahl_new(md.m1p, md.a1p);
    WahlData s2 = wahl_new(md.m2p, *md.a2p);
    ensure(n.Delta == md.m1p * md.m1p + md.m2p * md.m2p + n.delta * md.m1p * md.m2p,
           "flip: Delta != m1'^2 + m2'^2 + delta m1' m2'");
    // the flip data must reappear among the classified extremal P-resolutions
    // of the contraction target
    const PResolution* found = nullptr;
    auto all = extremal_presolutions(raw);
    for (const auto& p : all) {
        if (p.delta != n.delta) continue;
        if (detail::sings_key(p.sing1, p.sing2) != detail::sings_key(s1, s2)) continue;
        if ((p.sing1 == s1 && p.sing2 == s2) || (p.sing1 == s2 && p.sing2 == s1)) {
            found = &p;
            break;
        }
    }
    ensure(found != nullptr,
           "flip: flip data not found among the P-resolutions of the target");
    res.pres = *found;
    res.target_raw = raw;
    res.target = cqs_normalize(raw);
    return res;
}

// equality of flip outcomes up to orientation of the contraction target
inline bool flip_equal(const FlipResult& x, const FlipResult& y) {
    if (x.kind != y.kind) return false;
    if (x.target.has_value() != y.target.has_value()) return false;
    if (x.target && !(*x.target == *y.target)) return false;
    if (x.kind == NKind::divisorial)
        return wahl_unoriented(*x.y_point) == wahl_unoriented(*y.y_point);
    return x.pres->delta == y.pres->delta &&
           detail::sings_key(x.pres->sing1, x.pres->sing2) ==
               detail::sings_key(y.pres->sing1, y.pres->sing2);
}

// mutation: the neighborhood seen from the chart pair (j, j+1) of the
// universal family; admissible iff d(j) > 0 and d(j+1) > 0
inline K2A k2a_shift(const MoriData& md, long j) {
    Int m1 = md.d(j), m2 = md.d(j + 1);
    require(m1 > 0 && m2 > 0, "k2a_shift: inadmissible index (nonpositive d)");
    Int a1 = mod_1_to_n(md.c(j), m1);
    Int a2 = mod_1_to_n(m2 - md.c(j + 1), m2);
    K2A out = k2a_new(m1, a1, m2, a2);
    ensure(out.delta == md.n.delta && out.Delta == md.n.Delta,
           "k2a_shift: mutation changed delta or Delta");
    return out;
}

// k1A extremal neighborhood: one Wahl singularity (m1, a1), flipping curve
// meeting the chain curve at position i
struct K1A {
    WahlData w;   // (m1, a1)
    long i;       // 1-based chain position
    CFrac chain;  // wahl_chain(w)
    Int m0, a0;   // [e_r,...,e_{i+1}] = m0/(m0-a0); m0 = a0 = 1 if i = r
    Int m2, a2;   // [e_1,...,e_{i-1}] = m2/(m2-a2); m2 = a2 = 1 if i = 1
    Int delta;    // (m0 + m2)/m1
    CQS target;   // (Delta, Omega) of the contraction

    Rat k_dot_c() const { return -Rat(delta, w.m); }
    // ray direction (m2, m0)/m1^2 extracted from the degeneration fan
    std::pair<Int, Int> ray_numerator() const { return {m2, m0}; }
};

inline K1A k1a_from(const WahlData& w, long i) {
    require(w.m > 1, "k1a_from: smooth point admits no k1A");
    K1A k;
    k.w = w;
    k.chain = wahl_chain(w);
    long r = static_cast<long>(k.chain.size());
    require(1 <= i && i <= r, "k1a_from: chain position out of range");
    k.i = i;
    if (i == 1) {
        k.m2 = 1; k.a2 = 1;
    } else {
        CFrac head(k.chain.begin(), k.chain.begin() + (i - 1));
        Fraction f = cf_evaluate(head);
        k.m2 = f.num;
        k.a2 = f.num - f.den;
    }
    if (i == r) {
        k.m0 = 1; k.a0 = 1;
    } else {
        CFrac tail(k.chain.begin() + i, k.chain.end());
        std::reverse(tail.begin(), tail.end());
        Fraction f = cf_evaluate(tail);
        k.m0 = f.num;
        k.a0 = f.num - f.den;
    }
    const Int &m1 = w.m, &a1 = w.a;
    ensure(k.m0 == k.m2 * (m1 * a1 - 1) - (k.m2 - k.a2) * m1 * m1,
           "k1a_from: closed form for m0 failed");
    ensure(k.a0 == a1 * a1 * k.m2 - (m1 * a1 + 1) * (k.m2 - k.a2),
           "k1a_from: closed form for a0 failed");
    ensure(mod_floor(k.m0 - k.m2 * (m1 * a1 - 1), m1 * m1) == 0,
           "k1a_from: congruence m0 = m2(m1 a1 - 1) mod m1^2 failed");
    // existence: the contraction target must be a cyclic quotient
    // singularity, i.e. the lowered chain must stay negative definite
    Int Delta = m1 * m1 - k.m0 * k.m2;
    require(Delta > 0,
            "k1a_from: no neighborhood at this position (m1^2 - m0 m2 <= 0)");
    // raw value can exceed Delta (the lowered chain need not be minimal);
    // the type only depends on it mod Delta
    Int Omega_raw = m1 * a1 - k.m0 * (k.m2 - k.a2) - 1;
    ensure((k.m0 + k.m2) % m1 == 0, "k1a_from: delta = (m0 + m2)/m1 not integral");
    k.delta = (k.m0 + k.m2) / m1;
    ensure(k.delta > 0, "k1a_from: delta not positive");
    ensure(k.a0 + (k.m2 - k.a2) == k.delta * a1,
           "k1a_from: a0 + (m2 - a2) = delta a1 failed");
    require(Delta > 1, "k1a_from: contraction target is smooth");
    k.target = cqs_new(Delta, mod_floor(Omega_raw, Delta));
    // the 1-lowered chain presents the contraction target
    CFrac low = k.chain;
    low[i - 1] -= 1;
    Fraction v = cf_evaluate(low);
    ensure(v.num == Delta && v.den == Omega_raw,
           "k1a_from: lowered chain does not evaluate to Delta/Omega");
    return k;
}

namespace detail {

// build the canonical K2A on sides (wa, wb), conjugating a -> m - a on at
// most one side; exactly one orientation must reproduce the neighborhood's
// delta and Delta
inline K2A k2a_from_sides(const WahlData& wa, const WahlData& wb,
                          const Int& want_delta, const Int& want_Delta) {
    auto fits = [&](const WahlData& x, const WahlData& y) {
        Int d = x.m * y.a + y.m * x.a - x.m * y.m;
        if (d != want_delta) return false;
        return x.m * x.m + y.m * y.m - d * x.m * y.m == want_Delta;
    };
    WahlData a_conj = wa.smooth() ? wa : WahlData{wa.m, wa.m - wa.a};
    WahlData b_conj = wb.smooth() ? wb : WahlData{wb.m, wb.m - wb.a};
    std::vector<std::pair<WahlData, WahlData>> options = {{wa, wb}};
    if (!(a_conj == wa)) options.push_back({a_conj, wb});
    if (!(b_conj == wb)) options.push_back({wa, b_conj});
    const std::pair<WahlData, WahlData>* hit = nullptr;
    int n_hits = 0;
    for (const auto& o : options)
        if (fits(o.first, o.second)) {
            hit = &o;
            ++n_hits;
        }
    ensure(n_hits == 1, "k2a_from_sides: orientation repair is not unique");
    return k2a_new(hit->first.m, hit->first.a, hit->second.m, hit->second.a);
}

}  // namespace detail

// the two k2A degenerations: X0 with sides (m0,a0),(m1,a1) and X1 with
// sides (m1,a1),(m2,a2); K.C^i = -delta/(m_i m_{i+1})
inline std::pair<K2A, K2A> k1a_degenerations(const K1A& k) {
    Int Delta = k.target.Delta;
    K2A x0 = detail::k2a_from_sides(WahlData{k.m0, k.a0}, k.w, k.delta, Delta);
    K2A x1 = detail::k2a_from_sides(k.w, WahlData{k.m2, k.a2}, k.delta, Delta);
    ensure(flip_equal(flip(x0), flip(x1)),
           "k1a_degenerations: the two degenerations flip differently");
    return {x0, x1};
}

inline FlipResult flip_k1a(const K1A& k) {
    auto [x0, x1] = k1a_degenerations(k);
    FlipResult f0 = flip(x0);
    FlipResult f1 = flip(x1);
    ensure(flip_equal(f0, f1), "flip_k1a: degenerations disagree");
    if (f0.target)
        ensure(*f0.target == cqs_normalize(k.target),
               "flip_k1a: flip target differs from the k1A contraction target");
    return f0;
}

// the two initial k2A neighborhoods of an extremal P-resolution, i.e. the
// members over the cones adjacent to the axes of the universal family base
inline std::pair<K2A, K2A> initial_k2as(const PResolution& p) {
    const Int &m1p = p.sing1.m, &a1p = p.sing1.a;
    const Int &m2p = p.sing2.m, &a2p = p.sing2.a;
    auto build = [&p](const Int& mp, const Int& ap, const Int& other_mp) {
        Int m1 = mp;
        Int a1 = mp == 1 ? Int(1) : mp - ap;
        Int m2 = p.delta * mp + other_mp;
        Int num = p.delta + m1 * m2 - a1 * m2;
        ensure(num % m1 == 0, "initial_k2as: a2 formula not integral");
        Int a2 = num / m1;
        ensure(a2 > 0 && a2 < m2, "initial_k2as: a2 out of range");
        ensure(gcd(m2, a2) == 1, "initial_k2as: m2, a2 not coprime");
        return k2a_new(m1, a1, m2, a2);
    };
    K2A first = build(m1p, a1p, m2p);
    K2A second = build(m2p, a2p, m1p);
    for (const K2A* n : {&first, &second}) {
        FlipResult f = flip(*n);
        ensure(f.kind == NKind::flipping, "initial_k2as: flip not flipping");
        ensure(f.pres->delta == p.delta &&
                   detail::sings_key(f.pres->sing1, f.pres->sing2) ==
                       detail::sings_key(p.sing1, p.sing2) &&
                   *f.target == cqs_normalize(p.target),
               "initial_k2as: flip does not return the generating P-resolution");
    }
    return {first, second};
}

// Laurent monomial in (z, u1, u2), as its exponent vector
struct Monomial {
    Int z, u1, u2;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.z == b.z && a.u1 == b.u1 && a.u2 == b.u2;
    }
    friend Monomial operator+(const Monomial& a, const Monomial& b) {
        return {a.z + b.z, a.u1 + b.u1, a.u2 + b.u2};
    }
    friend Monomial operator*(const Int& s, const Monomial& a) {
        return {s * a.z, s * a.u1, s * a.u2};
    }
};

// coefficients over (l1, l2, C) of a divisor restricted to the central fiber
struct DivisorRestriction {
    Int l1, l2, C;
};

// cluster-exchange bookkeeping of the universal family over one division
struct ExchangeData {
    MoriData md;
    long lo, hi;  // materialized index range for f, q, r
    std::map<long, std::array<Int, 2>> f;
    std::map<long, Int> g;        // on [1, k+1]
    std::map<long, Monomial> q;
    std::map<long, Monomial> r;
    std::map<long, Int> weights;  // wt(F_i) on [0, k+2]
    DivisorRestriction z_row;     // (z = 0)|_X
    std::vector<DivisorRestriction> divisor_restrictions;  // F_0 .. F_{k+2}
};

inline ExchangeData exchange_data(const K2A& n, long depth) {
    require(depth >= 1, "exchange_data: depth must be >= 1");
    ExchangeData ex;
    ex.md = mori_division(n);
    const MoriData& md = ex.md;
    long k = md.k;
    ex.lo = 1 - depth;
    ex.hi = k + 2 + depth;
    const Int& delta = n.delta;

    // f: (0,1), -(1,0), -(0,1), (1,0) at 0..3; recursion f(i-1)+f(i+1)=delta f(i)
    // away from centers 1, 2; 5-periodic when delta = 1
    auto f_at = [&](long i) -> std::array<Int, 2> {
        static const int base[4][2] = {{0, 1}, {-1, 0}, {0, -1}, {1, 0}};
        auto from_base = [&](long j) {
            return std::array<Int, 2>{Int(base[j][0]), Int(base[j][1])};
        };
        if (delta == 1) {
            long j = ((i % 5) + 5) % 5;
            if (j == 4) return {Int(1), Int(1)};
            return from_base(j);
        }
        if (0 <= i && i <= 3) return from_base(i);
        if (i > 3) {
            std::array<Int, 2> a = from_base(2), b = from_base(3);
            for (long j = 3; j < i; ++j) {
                std::array<Int, 2> nb{delta * b[0] - a[0], delta * b[1] - a[1]};
                a = b; b = nb;
            }
            return b;
        }
        std::array<Int, 2> a = from_base(0), b = from_base(1);
        for (long j = 0; j > i; --j) {
            std::array<Int, 2> na{delta * a[0] - b[0], delta * a[1] - b[1]};
            b = a; a = na;
        }
        return a;
    };
    for (long i = ex.lo - 1; i <= ex.hi + 1; ++i) ex.f[i] = f_at(i);

    // g(1) = 0, g(2) = 1, g(i+1) + g(i-1) = delta g(i), on [1, k+1]
    ex.g[1] = 0;
    ex.g[2] = 1;
    for (long i = 3; i <= k + 1; ++i) ex.g[i] = delta * ex.g[i - 1] - ex.g[i - 2];

    // q_i, r_i coefficient monomials of the exchange relations
    auto q_at = [&](long i) -> Monomial {
        if (delta == 1) {
            switch (((i - 1) % 5 + 5) % 5) {
                case 0: return {0, 1, 0};                  // u1
                case 1: return {0, 0, 1};                  // u2
                case 2: return {n.m1 - n.m2, 0, 0};        // z^(m1-m2)
                case 3: return {n.m2, 0, 0};               // z^(m2)
                default: return {0, 0, 0};                 // 1
            }
        }
        if (i == 1) return {0, 1, 0};
        if (i == 2) return {0, 0, 1};
        if (i == k) return {md.m2p, 0, 0};
        if (i == k + 1) return {md.m1p, 0, 0};
        return {0, 0, 0};
    };
    auto r_at = [&](long i) -> Monomial {
        if (delta == 1) {
            switch (((i - 1) % 5 + 5) % 5) {
                case 0: return {n.m1, 0, 0};               // z^(m1)
                case 1: return {n.m2, 0, 0};               // z^(m2)
                case 2: return {0, 1, 0};                  // u1
                case 3: return {0, 1, 1};                  // u1 u2
                default: return {n.m1 - n.m2, 0, 1};       // z^(m1-m2) u2
            }
        }
        if (i == 1) return {n.m1, 0, 0};
        if (i == 2) return {n.m2, 0, 0};
        if (i == k || i == k + 1) {
            auto fv = ex.f.at(i);
            return {0, fv[0], fv[1]};
        }
        auto fv = ex.f.at(i);
        return {md.d(i), fv[0], fv[1]};
    };
    for (long i = ex.lo - 1; i <= ex.hi + 1; ++i) {
        ex.q[i] = q_at(i);
        ex.r[i] = r_at(i);
    }
    // multiplicative exchange identity, as exponent vectors
    for (long i = ex.lo; i <= ex.hi; ++i)
        ensure(ex.q.at(i - 1) + ex.q.at(i + 1) + delta * ex.r.at(i) ==
                   ex.r.at(i - 1) + ex.r.at(i + 1),
               "exchange_data: q(i-1) q(i+1) r(i)^delta = r(i-1) r(i+1) failed");

    // torus weights: wt(z) = 1, wt(u1) = m1, wt(u2) = m2; F_0 = y1, F_1 = x2
    auto wt = [&](const Monomial& m) { return m.z + m.u1 * n.m1 + m.u2 * n.m2; };
    ex.weights[0] = n.m1;
    ex.weights[1] = 0;
    for (long i = 1; i <= k + 1; ++i) {
        ensure(wt(ex.q.at(i)) + delta * ex.weights.at(i) == wt(ex.r.at(i)),
               "exchange_data: exchange relation not weight-homogeneous");
        ex.weights[i + 1] = wt(ex.r.at(i)) - ex.weights.at(i - 1);
    }
    for (long i = 2; i <= k; ++i)
        ensure(ex.weights.at(i) == ex.g.at(i - 1) * n.m2,
               "exchange_data: wt(F_i) = g(i-1) m2 failed");
    ensure(ex.weights.at(k + 1) == n.m2 * ex.g.at(k) + md.m2p,
           "exchange_data: wt(F_{k+1}) failed");
    ensure(ex.weights.at(k + 2) == n.m2 * ex.g.at(k + 1) + md.m1p + delta * md.m2p,
           "exchange_data: wt(F_{k+2}) failed");

    // restrictions to the central fiber X, over (l1, l2, C)
    ex.z_row = {1, 1, 1};
    ex.divisor_restrictions.resize(static_cast<size_t>(k + 3));
    ex.divisor_restrictions[0] = {0, n.m1, n.m1};
    ex.divisor_restrictions[1] = {0, n.m2, 0};
    for (long i = 2; i <= k; ++i)
        ex.divisor_restrictions[static_cast<size_t>(i)] = {
            md.d(i - 1), 0, n.m2 * ex.g.at(i - 1)};
    ex.divisor_restrictions[static_cast<size_t>(k + 1)] = {
        0, md.m2p, n.m2 * ex.g.at(k) + md.m2p};
    ex.divisor_restrictions[static_cast<size_t>(k + 2)] = {
        0, md.m1p + delta * md.m2p,
        n.m2 * ex.g.at(k + 1) + md.m1p + delta * md.m2p};
    for (long i = 3; i <= k - 1; ++i) {
        const auto& dm = ex.divisor_restrictions[static_cast<size_t>(i - 1)];
        const auto& dz = ex.divisor_restrictions[static_cast<size_t>(i)];
        const auto& dp = ex.divisor_restrictions[static_cast<size_t>(i + 1)];
        ensure(dm.l1 + dp.l1 == delta * dz.l1 && dm.l2 + dp.l2 == delta * dz.l2 &&
                   dm.C + dp.C == delta * dz.C,
               "exchange_data: divisor restriction recursion failed");
    }

    // anticanonical class: -K = c(i) L_{i+1} - c(i+1) L_i, i.e. coordinates
    // (-c(i+1), c(i)) in the basis (L_i, L_{i+1}) of Z^2 / Z(-d(i+1), d(i));
    // consecutive basis changes must map the class consistently
    for (long i = 1; i <= k; ++i) {
        Int x = -md.c(i + 1), y = md.c(i);
        Int x2, y2;
        if (i <= k - 2) {
            x2 = delta * x + y;  // L_i = delta L_{i+1} - L_{i+2}
            y2 = -x;
        } else {
            x2 = y;              // L_{k-1} = -L_{k+1}, L_k = -L_{k+2}
            y2 = -x;
        }
        Int ex1 = -md.c(i + 2), ey = md.c(i + 1);
        Int rx = x2 - ex1, ry = y2 - ey;
        Int lx = -md.d(i + 2), ly = md.d(i + 1);
        bool multiple = (rx == 0 && ry == 0);
        if (!multiple && !(lx == 0 && ly == 0)) {
            if (lx != 0 && rx % lx == 0)
                multiple = (ry == (rx / lx) * ly);
            else if (ly != 0 && ry % ly == 0)
                multiple = (rx == (ry / ly) * lx);
        }
        ensure(multiple, "exchange_data: anticanonical class not preserved");
    }
    return ex;
}

}  // namespace cqs
