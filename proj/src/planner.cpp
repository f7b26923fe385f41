#include "planner.hpp"

#include <numeric>
#include <string>

namespace streamrelay {

Rational Rational::of(long long num, long long den) {
    if (den == 0) fail(ErrorCode::kInvalidArgument, "rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

long long Rational::floor() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

Rational capacity_p2p(int a, int b, int T) {
    if (a < 1 || a > b || b > T)
        fail(ErrorCode::kInvalidArgument, "capacity: need 0 < a <= b <= T");
    const long long eff = static_cast<long long>(T) - a + 1;
    return Rational::of(eff, eff + b);
}

long long floor_diff(long long x, long long y, long long z) {
    if (z <= 0) fail(ErrorCode::kInvalidArgument, "floor_diff: z must be positive");
    auto fdiv = [](long long v, long long d) {
        long long q = v / d;
        if (v % d != 0 && ((v < 0) != (d < 0))) --q;
        return q;
    };
    const long long q1 = fdiv(x, z), r1 = x - q1 * z;
    const long long q2 = fdiv(y, z), r2 = y - q2 * z;
    return r1 >= r2 ? q1 - q2 : q1 - q2 - 1;
}

RelayParams::RelayParams(int a1_, int b1_, int a2_, int b2_, int T_)
    : a1(a1_), b1(b1_), a2(a2_), b2(b2_), T(T_) {
    if (a1 < 1 || a1 > b1 || a2 < 1 || a2 > b2)
        fail(ErrorCode::kInvalidArgument, "relay params: need 0 < a_u <= b_u on both hops");
    if (T < 1) fail(ErrorCode::kInvalidArgument, "relay params: need T >= 1");
}

Rational RelayParams::k_exact() const {
    const int bmax = bp1() > bp2() ? bp1() : bp2();
    const int bmin = bp1() < bp2() ? bp1() : bp2();
    return Rational::of(static_cast<long long>(a()) * (T - bmin - a() + 1), bmax);
}

int RelayParams::k() const { return static_cast<int>(k_exact().floor()); }

Rational upper_bound(const RelayParams& p) {
    if (p.degenerate())
        fail(ErrorCode::kDegenerateParams,
             "upper bound: hop bursts exceed T (b1 + b2 > T), no positive-rate code");
    const Rational c1 = capacity_p2p(p.a1, p.b1, p.T - p.b2);
    const Rational c2 = capacity_p2p(p.a2, p.b2, p.T - p.b1);
    return c1 < c2 ? c1 : c2;
}

RegimeFlags regime_check(const RelayParams& p) {
    RegimeFlags flags;
    const int bmax = p.bp1() > p.bp2() ? p.bp1() : p.bp2();
    const int alpha = p.alpha();
    flags.divisibility = alpha % bmax == 0;
    flags.symmetry = p.a1 == p.a2 || p.b1 == p.b2;
    return flags;
}

DelayProfile delay_profile(const RelayParams& p, int k) {
    if (k < 1) fail(ErrorCode::kInvalidArgument, "delay profile: k must be >= 1");
    if (!p.hops_feasible())
        fail(ErrorCode::kDegenerateParams, "delay profile: hops do not fit under T");
    const SdeLayout hop1 = SdeLayout::make(p.a(), p.bp1(), p.hop1_delay(), k);
    const SdeLayout hop2 = SdeLayout::make(p.a(), p.bp2(), p.hop2_delay(), k);
    DelayProfile d;
    d.entries.resize(k);
    d.max_sum = 0;
    for (int j = 0; j < k; ++j) {
        const int t = hop1.delays[j];
        const int tau = hop2.delays[k - 1 - j];  // relay flips the symbol order
        d.entries[j] = {t, tau};
        if (t + tau > d.max_sum) d.max_sum = t + tau;
    }
    d.feasible = d.max_sum <= p.T;
    return d;
}

RateReport plan(const RelayParams& p) {
    RateReport r(p);
    r.degenerate = p.degenerate();
    if (!r.degenerate) {
        r.cap1 = capacity_p2p(p.a1, p.b1, p.T - p.b2);
        r.cap2 = capacity_p2p(p.a2, p.b2, p.T - p.b1);
        r.bound = upper_bound(p);
    }
    r.k_exact = p.k_exact();
    r.k = p.k();
    r.regime = regime_check(p);
    r.constructible = p.hops_feasible() && r.k >= 1;
    if (r.constructible) {
        // outside the regime floor(k) can overshoot a hop's dispersion bound
        r.k_max1 = SdeLayout::max_message_len(p.a(), p.bp1(), p.hop1_delay());
        r.k_max2 = SdeLayout::max_message_len(p.a(), p.bp2(), p.hop2_delay());
        r.constructible = r.k <= r.k_max1 && r.k <= r.k_max2;
    }
    if (r.constructible) {
        r.rate = Rational::of(r.k, r.k + p.a());
        r.optimal = r.bound.has_value() && *r.rate == *r.bound;
        r.profile = delay_profile(p, r.k);
    }
    return r;
}

}  // namespace streamrelay
