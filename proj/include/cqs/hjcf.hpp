#pragma once

// Hirzebruch-Jung continued fractions, cyclic quotient singularity data,
// Wahl chains and the toric discrepancy/K^2 formulas.

#include <algorithm>
#include <optional>

#include "base.hpp"

namespace cqs {

// chain entries b_1,...,b_r; canonical form has every entry >= 2,
// generalized form (zero-CF tests, lowered chains) allows entries >= 1
using CFrac = std::vector<Int>;

// value of a continued fraction as num/den; den = 0 encodes infinity,
// num = 0 encodes the symbolic value 0
struct Fraction {
    Int num;
    Int den;

    bool is_infinity() const { return den == 0; }
    bool is_zero() const { return num == 0; }
    Rat value() const {
        if (den == 0) throw domain_error("Fraction: value of infinity");
        return Rat(num, den);
    }
    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num * b.den == b.num * a.den &&
               (a.num != 0 || b.num == 0) && (a.den != 0 || b.den == 0);
    }
};

struct Mat2 {
    Int a, b, c, d;  // row major

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    Int det() const { return a * d - b * c; }
};

// the factor (0 1; -1 b) of a single chain entry
inline Mat2 entry_matrix(const Int& b) { return Mat2{0, 1, -1, b}; }

struct CQS {
    Int Delta;
    Int Omega;

    friend bool operator==(const CQS& x, const CQS& y) {
        return x.Delta == y.Delta && x.Omega == y.Omega;
    }
    friend bool operator<(const CQS& x, const CQS& y) {
        return x.Delta != y.Delta ? x.Delta < y.Delta : x.Omega < y.Omega;
    }
};

inline CQS cqs_new(Int Delta, Int Omega) {
    require(Delta > 0 && Omega > 0 && Omega < Delta, "CQS: need 0 < Omega < Delta");
    require(gcd(Delta, Omega) == 1, "CQS: Delta, Omega not coprime");
    return CQS{std::move(Delta), std::move(Omega)};
}

// smooth points are encoded as (1,1)
struct WahlData {
    Int m;
    Int a;

    bool smooth() const { return m == 1; }
    friend bool operator==(const WahlData& x, const WahlData& y) {
        return x.m == y.m && x.a == y.a;
    }
    friend bool operator<(const WahlData& x, const WahlData& y) {
        return x.m != y.m ? x.m < y.m : x.a < y.a;
    }
};

inline WahlData wahl_new(Int m, Int a) {
    require(m > 0 && a > 0, "WahlData: need positive m, a");
    require(a < m || m == 1, "WahlData: need a < m (or m = a = 1)");
    require(gcd(m, a) == 1, "WahlData: m, a not coprime");
    return WahlData{std::move(m), std::move(a)};
}

inline CFrac hj_expand(Int n, Int a) {
    require(0 < a && a < n, "hj_expand: need 0 < a < n");
    require(gcd(n, a) == 1, "hj_expand: n, a not coprime");
    CFrac out;
    while (a > 0) {
        Int b = (n + a - 1) / a;  // ceil(n/a)
        out.push_back(b);
        Int a2 = b * a - n;
        n = a;
        a = a2;
    }
    return out;
}

// total evaluation via the numerator/denominator linear recursions; no division
inline Fraction cf_evaluate(const CFrac& cf) {
    Int n2 = 0, n1 = 1;   // N_{-1}, N_0
    Int d2 = -1, d1 = 0;  // seeds so that D_1 = 1 and D_i = v_i D_{i-1} - D_{i-2}
    for (const Int& v : cf) {
        Int n = v * n1 - n2;
        Int d = v * d1 - d2;
        n2 = n1; n1 = n;
        d2 = d1; d1 = d;
    }
    return Fraction{n1, d1};
}

inline CFrac reversed(CFrac cf) {
    std::reverse(cf.begin(), cf.end());
    return cf;
}

namespace detail {

// [4] -> [e_1+1,...,e_r,2] for (m,a) -> (m+a,a), and
// [4] -> [2,e_1,...,e_r+1] for (m,a) -> (2m-a,m); run backwards from (m,a)
inline CFrac wahl_chain_by_recursion(const Int& m, const Int& a) {
    if (m == 2) return {Int(4)};
    if (2 * a < m) {
        CFrac c = wahl_chain_by_recursion(m - a, a);
        c.front() += 1;
        c.push_back(2);
        return c;
    }
    CFrac c = wahl_chain_by_recursion(a, 2 * a - m);
    c.back() += 1;
    c.insert(c.begin(), Int(2));
    return c;
}

}  // namespace detail

inline CFrac wahl_chain(const WahlData& w) {
    require(w.m > 1, "wahl_chain: smooth point has no chain");
    CFrac direct = hj_expand(w.m * w.m, w.m * w.a - 1);
    CFrac rec = detail::wahl_chain_by_recursion(w.m, w.a);
    ensure(direct == rec, "wahl_chain: direct expansion and recursion disagree");
    return direct;
}

inline std::optional<WahlData> wahl_recognize(const CQS& s) {
    Int m = boost::multiprecision::sqrt(s.Delta);
    if (m * m != s.Delta) return std::nullopt;
    if ((s.Omega + 1) % m != 0) return std::nullopt;
    Int a = (s.Omega + 1) / m;
    if (a < 1 || a >= m || gcd(m, a) != 1) return std::nullopt;
    return WahlData{m, a};
}

inline CQS cqs_normalize(const CQS& s) {
    if (s.Delta == 1) return s;
    Int inv = mod_inverse(s.Omega, s.Delta);
    return CQS{s.Delta, std::min(s.Omega, inv)};
}

struct ToricData {
    CFrac chain;                // [b_1,...,b_r] of n/a
    std::vector<Int> alphas;    // alpha_1 = 1, alpha_i/alpha_{i-1} = [b_{i-1},...,b_1]
    std::vector<Int> betas;     // beta_r = 1, beta_i/beta_{i+1} = [b_{i+1},...,b_r]
    std::vector<Rat> discrepancies;  // c_i = -1 + (alpha_i + beta_i)/n
};

inline ToricData toric_data(const Int& n, const Int& a) {
    ToricData t;
    t.chain = hj_expand(n, a);
    size_t r = t.chain.size();
    t.alphas.assign(r, 1);
    for (size_t i = 1; i < r; ++i)
        t.alphas[i] = t.chain[i - 1] * t.alphas[i - 1] - (i >= 2 ? t.alphas[i - 2] : Int(0));
    t.betas.assign(r, 1);
    for (size_t i = r - 1; i-- > 0;)
        t.betas[i] = t.chain[i + 1] * t.betas[i + 1] - (i + 2 < r ? t.betas[i + 2] : Int(0));
    t.discrepancies.reserve(r);
    for (size_t i = 0; i < r; ++i) {
        Rat c = Rat(t.alphas[i] + t.betas[i], n) - 1;
        ensure(c > -1 && c <= 0, "toric_data: discrepancy outside (-1, 0]");
        t.discrepancies.push_back(c);
    }
    return t;
}

// K^2 of the minimal resolution germ: 2r + 2 - sum b_i - (2 + a + a')/n
inline Rat ksq_minres(const Int& n, const Int& a) {
    CFrac b = hj_expand(n, a);
    Int sum = 0;
    for (const Int& e : b) sum += e;
    Int ap = mod_inverse(a, n);
    return Rat(2 * Int(b.size()) + 2 - sum) - Rat(2 + a + ap, n);
}

// (K + D')^2 of the pair: 2r - sum b_i - a/n
inline Rat ksq_pair(const Int& n, const Int& a) {
    CFrac b = hj_expand(n, a);
    Int sum = 0;
    for (const Int& e : b) sum += e;
    return Rat(2 * Int(b.size()) - sum) - Rat(a, n);
}

}  // namespace cqs
