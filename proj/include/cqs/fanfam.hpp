#pragma once

// Toric fan of the universal family base for each delta, exact point
// location, terminal-antiflip existence, and enumeration of the k1A/k2A
// members of an antiflip family.

#include "mori.hpp"

namespace cqs {

using Vec2 = std::array<Int, 2>;

inline Int wedge(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

// fan of the base M: delta = 1 is the blowup fan with rays indexed 1..3;
// delta >= 2 has rays indexed +-1..+-depth with v1 = (1,0), v2 = (delta,1),
// v_{i+1} = delta v_i - v_{i-1} and v_{-i} the coordinate swap of v_i
struct Fan {
    Int delta;
    std::map<long, Vec2> rays;
};

inline Fan fan_build(const Int& delta, long depth) {
    require(delta >= 1, "fan_build: delta must be >= 1");
    require(depth >= 1, "fan_build: depth must be >= 1");
    Fan fan;
    fan.delta = delta;
    if (delta == 1) {
        fan.rays[1] = {1, 0};
        fan.rays[2] = {1, 1};
        fan.rays[3] = {0, 1};
        return fan;
    }
    Vec2 a{1, 0}, b{delta, 1};
    fan.rays[1] = a;
    if (depth >= 2) fan.rays[2] = b;
    for (long i = 3; i <= depth; ++i) {
        Vec2 c{delta * b[0] - a[0], delta * b[1] - a[1]};
        fan.rays[i] = c;
        a = b; b = c;
    }
    for (long i = 1; i <= depth; ++i)
        fan.rays[-i] = {fan.rays[i][1], fan.rays[i][0]};
    for (auto& [i, v] : fan.rays) {
        ensure(gcd(v[0], v[1]) == 1, "fan_build: ray not primitive");
        // every ray lies on the level-1 set of the form x^2 - delta xy + y^2
        ensure(v[0] * v[0] - delta * v[0] * v[1] + v[1] * v[1] == 1,
               "fan_build: ray off the level-1 quadric");
    }
    for (long i = 1; i < depth; ++i) {
        Int w = wedge(fan.rays[i], fan.rays[i + 1]);
        ensure(w == 1 || w == -1, "fan_build: consecutive rays not unimodular");
        w = wedge(fan.rays[-(i + 1)], fan.rays[-i]);
        ensure(w == 1 || w == -1, "fan_build: consecutive rays not unimodular");
    }
    return fan;
}

// support of the fan: x1, x2 > 0 with x1^2 - delta x1 x2 + x2^2 > 0
inline bool support_contains(const Int& delta, const Int& a1, const Int& a2) {
    require(delta >= 1, "support_contains: delta must be >= 1");
    require(a1 >= 1 && a2 >= 1, "support_contains: multiplicities must be >= 1");
    return a1 * a1 - delta * a1 * a2 + a2 * a2 > 0;
}

struct ConeRef {
    enum class Kind { ray, cone, origin, outside };
    Kind kind;
    long i = 0, j = 0;  // ray index, or consecutive cone pair (i, j)

    friend bool operator==(const ConeRef& a, const ConeRef& b) {
        return a.kind == b.kind && a.i == b.i && a.j == b.j;
    }
};

inline ConeRef cone_ref_ray(long i) { return {ConeRef::Kind::ray, i, 0}; }
inline ConeRef cone_ref_cone(long i, long j) { return {ConeRef::Kind::cone, i, j}; }

// smallest cone of the fan containing (a1, a2); exact sign tests only
inline ConeRef locate_cone(const Int& delta, const Int& a1, const Int& a2) {
    if (!support_contains(delta, a1, a2)) return {ConeRef::Kind::outside};
    if (delta == 1) {
        if (a1 == a2) return cone_ref_ray(2);
        return a1 > a2 ? cone_ref_cone(1, 2) : cone_ref_cone(2, 3);
    }
    // positive branch iff a1 > xi a2, as an integer test via xi^2 = delta xi - 1
    Int t = 2 * a1 - delta * a2;
    bool positive = t > 0 && t * t > a2 * a2 * (delta * delta - 4);
    Int x = positive ? a1 : a2;
    Int y = positive ? a2 : a1;
    Vec2 prev{1, 0}, cur{delta, 1};
    long i = 1;
    while (true) {
        Int w = wedge(cur, Vec2{x, y});
        if (w == 0) {
            long idx = i + 1;
            return cone_ref_ray(positive ? idx : -idx);
        }
        if (w < 0)
            return positive ? cone_ref_cone(i, i + 1) : cone_ref_cone(-(i + 1), -i);
        Vec2 next{delta * cur[0] - prev[0], delta * cur[1] - prev[1]};
        prev = cur; cur = next;
        ++i;
    }
}

enum class AntiflipClass { Terminal, CanonicalOnly, NoBoundaryData };

// existence of a terminal antiflip with axial multiplicities (a1, a2);
// has_boundary_divisor encodes the geometric boundary condition, which the
// numerical data cannot decide
inline AntiflipClass antiflip_classify(const PResolution& p, const Int& a1,
                                       const Int& a2, bool has_boundary_divisor) {
    bool quad = support_contains(p.delta, a1, a2);
    if (!has_boundary_divisor) return AntiflipClass::NoBoundaryData;
    return quad ? AntiflipClass::Terminal : AntiflipClass::CanonicalOnly;
}

struct FamilyMember {
    ConeRef location;
    std::optional<K2A> k2a;        // cones
    std::optional<WahlData> sing;  // rays: the k1A singularity persisting there
};

// all members of the antiflip family of p over cones/rays up to index depth;
// cones carry k2A neighborhoods obtained by mutating the two initial k2A
// outward, rays carry the shared singularity of the adjacent cones
inline std::vector<FamilyMember> family_enumerate(const PResolution& p, long depth) {
    require(depth >= 1, "family_enumerate: depth must be >= 1");
    auto [k2a_i, k2a_ii] = initial_k2as(p);
    MoriData md_i = mori_division(k2a_i);
    MoriData md_ii = mori_division(k2a_ii);
    std::vector<FamilyMember> out;
    Int Delta = k2a_i.Delta;
    auto check_member = [&](const K2A& n) {
        ensure(n.delta == p.delta && n.Delta == Delta,
               "family_enumerate: member has wrong delta or Delta");
        FlipResult f = flip(n);
        ensure(f.kind == NKind::flipping &&
                   detail::sings_key(f.pres->sing1, f.pres->sing2) ==
                       detail::sings_key(p.sing1, p.sing2) &&
                   *f.target == cqs_normalize(p.target),
               "family_enumerate: member does not flip to the generating P-resolution");
    };
    auto ray_sing = [](const MoriData& md, long i) {
        // decoration of ray v_i read from the inner adjacent cone: shift j = 3 - i
        Int m = md.d(3 - i);
        ensure(m > 0, "family_enumerate: ray decoration not positive");
        if (m == 1) return WahlData{1, 1};
        return wahl_new(m, mod_1_to_n(md.c(3 - i), m));
    };
    if (p.delta == 1) {
        // finite family: cones (1,2) and (2,3), rays 1, 2, 3
        FamilyMember r1{cone_ref_ray(1), std::nullopt, ray_sing(md_i, 1)};
        FamilyMember c12{cone_ref_cone(1, 2), k2a_i, std::nullopt};
        FamilyMember r2{cone_ref_ray(2), std::nullopt, ray_sing(md_i, 2)};
        FamilyMember c23{cone_ref_cone(2, 3), k2a_ii, std::nullopt};
        FamilyMember r3{cone_ref_ray(3), std::nullopt, ray_sing(md_ii, 1)};
        check_member(k2a_i);
        check_member(k2a_ii);
        out = {r1, c12, r2, c23, r3};
        return out;
    }
    // negative branch, outermost first, then the positive branch
    for (long i = depth; i >= 1; --i) {
        if (i < depth) {
            K2A n = k2a_shift(md_ii, 2 - i);
            check_member(n);
            out.push_back({cone_ref_cone(-(i + 1), -i), n, std::nullopt});
        }
        out.push_back({cone_ref_ray(-i), std::nullopt, ray_sing(md_ii, i)});
    }
    for (long i = 1; i <= depth; ++i) {
        out.push_back({cone_ref_ray(i), std::nullopt, ray_sing(md_i, i)});
        if (i < depth) {
            K2A n = k2a_shift(md_i, 2 - i);
            check_member(n);
            out.push_back({cone_ref_cone(i, i + 1), n, std::nullopt});
        }
    }
    return out;
}

// exponent matrix of the monomial chart transition
// (u1, u2) -> (u2^{-1}, u1 u2^{delta}); determinant +-1
inline Mat2 chart_transition(const Int& delta) {
    require(delta >= 1, "chart_transition: delta must be >= 1");
    Mat2 t{0, -1, 1, delta};
    ensure(t.det() == 1 || t.det() == -1, "chart_transition: not unimodular");
    return t;
}

}  // namespace cqs
