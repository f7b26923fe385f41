#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "sde.hpp"

namespace streamrelay {

// Exact rational, normalized with positive denominator. All rate and
// capacity comparisons go through this type; optimality is an equality of
// rationals and must never be float-compared.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long num, long long den);
    long long floor() const;

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num == y.num && x.den == y.den;
    }
    friend bool operator<(const Rational& x, const Rational& y) {
        return x.num * y.den < y.num * x.den;
    }
    friend bool operator<=(const Rational& x, const Rational& y) { return x == y || x < y; }
};

// (T-a+1) / (T-a+1+b), the point-to-point limit for one hop
Rational capacity_p2p(int a, int b, int T);

// floor(x/z - y/z) via the quotient/remainder case split; z > 0
long long floor_diff(long long x, long long y, long long z);

struct RegimeFlags {
    bool divisibility = false;  // max(b'1,b'2) divides alpha
    bool symmetry = false;      // a1 == a2 or b1 == b2
    bool optimal() const { return divisibility && symmetry; }
};

// The relay tuple plus everything derived from it. Constructor checks the
// per-hop ordering 0 < a_u <= b_u only; whether the hops fit under T is a
// property (degenerate / constructible) rather than a constructor failure,
// so planning can still report on infeasible tuples.
struct RelayParams {
    int a1, b1, a2, b2, T;

    RelayParams(int a1_, int b1_, int a2_, int b2_, int T_);

    int a() const { return a1 > a2 ? a1 : a2; }
    int bp1() const { return b1 > a() ? b1 : a(); }
    int bp2() const { return b2 > a() ? b2 : a(); }
    int alpha() const { return T + 1 - bp1() - bp2() - a(); }
    int hop1_delay() const { return T - bp2(); }  // T1
    int hop2_delay() const { return T - bp1(); }  // T2

    // No positive-rate code exists and the upper bound is not computable.
    bool degenerate() const { return b1 + b2 > T; }
    // Both hop codes fit their reduced delay budgets.
    bool hops_feasible() const { return bp1() + bp2() <= T; }

    Rational k_exact() const;  // a * (T - min(b') - a + 1) / max(b')
    int k() const;             // floor of k_exact
    int n1() const { return k() + a(); }
    int n2() const { return k() + a(); }
};

Rational upper_bound(const RelayParams& p);  // throws kDegenerateParams when degenerate
RegimeFlags regime_check(const RelayParams& p);

// ((t_0,tau_0),...,(t_{k-1},tau_{k-1})) plus the largest per-symbol sum.
struct DelayProfile {
    std::vector<std::pair<int, int>> entries;
    int max_sum = 0;
    bool feasible = false;  // max_sum <= T
};

// Closed-form hop delays for a given k; requires hops_feasible and k >= 1.
DelayProfile delay_profile(const RelayParams& p, int k);

// Everything the plan surface reports for one tuple.
struct RateReport {
    explicit RateReport(const RelayParams& p) : params(p) {}

    RelayParams params;
    std::optional<Rational> cap1;   // hop capacities at reduced delays, when defined
    std::optional<Rational> cap2;
    std::optional<Rational> bound;  // min of the two
    Rational k_exact{0, 1};
    int k = 0;
    int k_max1 = 0;                 // per-hop dispersion-span bounds on k
    int k_max2 = 0;
    RegimeFlags regime;
    bool degenerate = false;
    bool constructible = false;     // hops feasible, k >= 1, k within both bounds
    std::optional<Rational> rate;   // k/(k+a) when constructible
    bool optimal = false;           // rate == bound exactly
    std::optional<DelayProfile> profile;
};

RateReport plan(const RelayParams& p);

}  // namespace streamrelay
