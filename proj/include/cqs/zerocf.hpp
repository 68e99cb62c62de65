#pragma once

// Continued fractions representing zero, triangulations of polygons with
// prescribed vertex degrees, and the pairs of entries whose lowering
// produces a zero continued fraction.

#include <array>
#include <set>

#include "hjcf.hpp"

namespace cqs {

// A zero continued fraction is a well-defined nested fraction equal to 0:
// every proper tail [v_j,...,v_r] is positive and the full value is 0.
// (Positivity of the tails is required for the triangulation bijection;
// a bare numerator test accepts chains whose evaluation divides by zero.)
inline bool is_zero_cf(const CFrac& cf) {
    if (cf.empty()) return false;
    for (const Int& v : cf) require(v >= 1, "is_zero_cf: entries must be >= 1");
    Int t2 = 0, t1 = 1;  // numerators of the tails, built right to left
    for (size_t j = cf.size(); j-- > 0;) {
        Int t = cf[j] * t1 - t2;
        if (j > 0 && t <= 0) return false;
        t2 = t1; t1 = t;
    }
    return t1 == 0;
}

// triangulation of a convex (r+1)-gon with vertices 0..r
struct Triangulation {
    int n_vertices;
    std::set<std::array<int, 3>> triangles;
};

namespace detail {

// all triangulations of the polygon on consecutive vertices lo..hi
inline std::vector<std::vector<std::array<int, 3>>> all_triangulations(int lo, int hi) {
    std::vector<std::vector<std::array<int, 3>>> out;
    if (hi - lo < 2) return {{}};
    for (int k = lo + 1; k < hi; ++k) {
        auto left = all_triangulations(lo, k);
        auto right = all_triangulations(k, hi);
        for (const auto& l : left)
            for (const auto& r : right) {
                std::vector<std::array<int, 3>> t;
                t.reserve(l.size() + r.size() + 1);
                t.insert(t.end(), l.begin(), l.end());
                t.insert(t.end(), r.begin(), r.end());
                t.push_back({lo, k, hi});
                out.push_back(std::move(t));
            }
    }
    return out;
}

}  // namespace detail

// all triangulations of the (r+1)-gon whose degree at vertex i (1 <= i <= r)
// equals v[i-1]; the degree at vertex 0 is then forced to 3r - 3 - sum v_i
inline std::vector<Triangulation> triangulations_by_degrees(const std::vector<Int>& v) {
    int r = static_cast<int>(v.size());
    require(r >= 1, "triangulations_by_degrees: empty degree list");
    require(r + 1 <= 14, "triangulations_by_degrees: polygon capacity exceeded (r+1 > 14)");
    std::vector<Triangulation> out;
    Int sum = 0;
    for (const Int& x : v) {
        require(x >= 0, "triangulations_by_degrees: negative degree");
        sum += x;
    }
    Int v0 = 3 * Int(r) - 3 - sum;
    if (r == 1) {
        // degenerate 2-gon: no triangles, accept only the empty degree pattern
        return out;
    }
    if (v0 < 1) return out;
    for (auto& tri : detail::all_triangulations(0, r)) {
        std::vector<Int> deg(r + 1, 0);
        for (auto& t : tri)
            for (int x : t) deg[x] += 1;
        bool ok = deg[0] == v0;
        for (int i = 1; ok && i <= r; ++i) ok = deg[i] == v[i - 1];
        if (ok) {
            Triangulation T;
            T.n_vertices = r + 1;
            T.triangles.insert(tri.begin(), tri.end());
            ensure(3 * T.triangles.size() ==
                       static_cast<size_t>(3 * (r - 1)),
                   "triangulations_by_degrees: degree bookkeeping failed");
            out.push_back(std::move(T));
        }
    }
    return out;
}

struct WWReport {
    CFrac entries;
    std::vector<std::pair<int, int>> pairs;  // 1-based (alpha, beta), alpha < beta
    bool falsifies_at_most_two = false;      // more than two pairs found
};

// all index pairs alpha < beta whose lowering by 1 yields a zero CF; the
// numerator of the lowered chain is computed per pair as a dot product of
// precomputed prefix/suffix transfer vectors, and only numerator-zero
// candidates get the full tail-positivity scan
inline WWReport ww_pairs(const CFrac& cf) {
    for (const Int& v : cf) require(v >= 2, "ww_pairs: entries must be >= 2");
    WWReport rep;
    rep.entries = cf;
    int s = static_cast<int>(cf.size());
    // transfer matrix of one entry: (N_i, N_{i-1}) = (N_{i-1}, N_{i-2}) B(v_i);
    // with P(i) = B(v_1)...B(v_i), the lowered-chain numerator factors as
    //   [ (1,0) P(a-1) B(v_a - 1) P(a)^{-1} ] . [ P(b-1) B(v_b - 1) S(b+1) e1 ]
    // since P(a)^{-1} P(b-1) is exactly the untouched middle block
    auto B = [](const Int& v) { return Mat2{v, 1, -1, 0}; };
    std::vector<Mat2> pref(s + 1);
    pref[0] = Mat2{1, 0, 0, 1};
    for (int i = 1; i <= s; ++i) pref[i] = pref[i - 1] * B(cf[i - 1]);
    auto inv = [](const Mat2& m) { return Mat2{m.d, -m.b, -m.c, m.a}; };  // det = 1
    std::vector<std::array<Int, 2>> left(s + 1), right(s + 2);
    for (int a = 1; a <= s; ++a) {
        Mat2 t = pref[a - 1] * B(cf[a - 1] - 1) * inv(pref[a]);
        left[a] = {t.a, t.b};  // first row = (1,0) t
    }
    {
        std::array<Int, 2> col{1, 0};
        for (int b = s; b >= 1; --b) {
            Mat2 t = pref[b - 1] * B(cf[b - 1] - 1);
            right[b] = {t.a * col[0] + t.b * col[1], t.c * col[0] + t.d * col[1]};
            Mat2 m = B(cf[b - 1]);
            col = {m.a * col[0] + m.b * col[1], m.c * col[0] + m.d * col[1]};
        }
    }
    for (int a = 1; a <= s; ++a)
        for (int b = a + 1; b <= s; ++b) {
            if (left[a][0] * right[b][0] + left[a][1] * right[b][1] != 0) continue;
            CFrac low = cf;
            low[a - 1] -= 1;
            low[b - 1] -= 1;
            if (is_zero_cf(low)) rep.pairs.emplace_back(a, b);
        }
    rep.falsifies_at_most_two = rep.pairs.size() > 2;
    return rep;
}

}  // namespace cqs
