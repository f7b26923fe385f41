#include "channel.hpp"

#include <algorithm>
#include <random>

namespace streamrelay {

DcswChannel::DcswChannel(int a_, int b_, int T_) : a(a_), b(b_), T(T_) {
    if (a < 1 || a > b || b > T)
        fail(ErrorCode::kInvalidArgument, "channel: need 0 < a <= b <= T");
}

ErasurePattern ErasurePattern::from_mask(uint32_t mask, int horizon) {
    ErasurePattern p;
    p.horizon = horizon;
    for (int t = 0; t < horizon; ++t)
        if (mask >> t & 1) p.erased.push_back(t);
    return p;
}

ErasurePattern ErasurePattern::burst(int start, int length, int horizon) {
    ErasurePattern p;
    p.horizon = horizon;
    for (int t = start; t < start + length; ++t)
        if (t >= 0 && t < horizon) p.erased.push_back(t);
    return p;
}

uint64_t ErasurePattern::to_mask() const {
    if (horizon > 63) fail(ErrorCode::kOutOfRange, "pattern: horizon too large for mask");
    uint64_t m = 0;
    for (int t : erased) m |= 1ull << t;
    return m;
}

bool ErasurePattern::erases(int t) const {
    return std::binary_search(erased.begin(), erased.end(), t);
}

void validate_pattern(const ErasurePattern& pat) {
    if (pat.horizon < 0) fail(ErrorCode::kInvalidArgument, "pattern: negative horizon");
    int prev = -1;
    for (int t : pat.erased) {
        if (t <= prev) fail(ErrorCode::kInvalidArgument, "pattern: erasures must be strictly increasing");
        if (t < 0 || t >= pat.horizon)
            fail(ErrorCode::kInvalidArgument, "pattern: erasure outside horizon");
        prev = t;
    }
}

bool is_permissible(const DcswChannel& ch, const ErasurePattern& pat) {
    validate_pattern(pat);
    const int w = ch.window();
    const int H = pat.horizon;
    const auto& e = pat.erased;
    const int last_start = H > w ? H - w : 0;
    size_t lo = 0, hi = 0;
    for (int s = 0; s <= last_start; ++s) {
        while (lo < e.size() && e[lo] < s) ++lo;
        if (hi < lo) hi = lo;
        while (hi < e.size() && e[hi] < s + w) ++hi;
        const int count = static_cast<int>(hi - lo);
        if (count <= ch.a) continue;
        if (e[hi - 1] - e[lo] + 1 > ch.b) return false;
    }
    return true;
}

std::vector<uint32_t> enumerate_pattern_masks(const DcswChannel& ch, int horizon, int cap) {
    std::vector<uint32_t> masks;
    enumerate_patterns(ch, horizon, [&](uint32_t m) { masks.push_back(m); }, cap);
    return masks;
}

namespace {

double next_unit(std::mt19937_64& rng) {
    // 53-bit mantissa; identical on every platform, unlike the std distributions
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ErasurePattern sample_ge(const GilbertElliott& ge, int horizon) {
    if (horizon < 0) fail(ErrorCode::kInvalidArgument, "ge: negative horizon");
    for (double p : {ge.good_to_bad, ge.bad_to_good, ge.erase_good, ge.erase_bad}) {
        if (p < 0.0 || p > 1.0) fail(ErrorCode::kInvalidArgument, "ge: probability outside [0,1]");
    }
    std::mt19937_64 rng(ge.seed);
    ErasurePattern pat;
    pat.horizon = horizon;
    bool bad = false;  // starts in the good state
    for (int t = 0; t < horizon; ++t) {
        const double erase_p = bad ? ge.erase_bad : ge.erase_good;
        if (next_unit(rng) < erase_p) pat.erased.push_back(t);
        const double flip_p = bad ? ge.bad_to_good : ge.good_to_bad;
        if (next_unit(rng) < flip_p) bad = !bad;
    }
    return pat;
}

}  // namespace streamrelay
