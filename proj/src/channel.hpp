#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace streamrelay {

inline constexpr int kDefaultEnumerationCap = 24;
inline constexpr int kMaxEnumerationHorizon = 30;

// Sliding-window erasure channel: within any window of w = T+1 consecutive
// slots the erasures either number at most a, or all fall inside a span of at
// most b consecutive slots.
struct DcswChannel {
    int a;
    int b;
    int T;

    DcswChannel(int a_, int b_, int T_);
    int window() const { return T + 1; }
};

struct ErasurePattern {
    int horizon = 0;
    std::vector<int> erased;  // strictly increasing, within [0, horizon)

    static ErasurePattern from_mask(uint32_t mask, int horizon);
    static ErasurePattern burst(int start, int length, int horizon);
    uint64_t to_mask() const;  // horizon must be <= 63
    bool erases(int t) const;
};

void validate_pattern(const ErasurePattern& pat);

bool is_permissible(const DcswChannel& ch, const ErasurePattern& pat);

namespace detail {

inline bool window_ok(uint64_t window_bits, int a, int b) {
    const int count = __builtin_popcountll(window_bits);
    if (count <= a) return true;
    if (window_bits == 0) return true;
    const int lo = __builtin_ctzll(window_bits);
    const int hi = 63 - __builtin_clzll(window_bits);
    return hi - lo + 1 <= b;
}

}  // namespace detail

// Depth-first enumeration of every permissible pattern over [0, horizon),
// in lexicographic order of the erase/receive bit string (slot 0 first).
// fn receives the erasure bitmask (bit t = slot t erased). Returns the count.
template <class Fn>
uint64_t enumerate_patterns(const DcswChannel& ch, int horizon, Fn&& fn,
                            int cap = kDefaultEnumerationCap) {
    if (horizon < 0) fail(ErrorCode::kInvalidArgument, "channel: negative horizon");
    if (cap > kMaxEnumerationHorizon) cap = kMaxEnumerationHorizon;
    if (horizon > cap) fail(ErrorCode::kCapExceeded, "channel: enumeration horizon exceeds cap");
    const int w = ch.window();
    const int last_start = horizon > w ? horizon - w : 0;
    uint64_t count = 0;

    // Violations are monotone under adding erasures, so a prefix whose
    // completed windows already fail can be pruned outright.
    auto step = [&](auto&& self, int t, uint32_t mask) -> void {
        if (t == horizon) {
            fn(static_cast<uint32_t>(mask));
            ++count;
            return;
        }
        self(self, t + 1, mask);
        const uint32_t with = mask | (1u << t);
        // the mask has at most `horizon` bits, so windows wider than that clip
        const uint64_t wmask = w >= 64 ? ~0ull : (1ull << w) - 1;
        bool ok = true;
        const int s_lo = t - w + 1 > 0 ? t - w + 1 : 0;
        const int s_hi = t < last_start ? t : last_start;
        for (int s = s_lo; s <= s_hi; ++s) {
            const uint64_t bits = (static_cast<uint64_t>(with) >> s) & wmask;
            if (!detail::window_ok(bits, ch.a, ch.b)) {
                ok = false;
                break;
            }
        }
        if (ok) self(self, t + 1, with);
    };
    step(step, 0, 0);
    return count;
}

std::vector<uint32_t> enumerate_pattern_masks(const DcswChannel& ch, int horizon,
                                              int cap = kDefaultEnumerationCap);

// Two-state Markov erasure process, the usual desk-scale stand-in for
// correlated losses. Deterministic for a fixed seed: per slot one uniform
// draw decides erasure in the current state, a second decides the transition.
struct GilbertElliott {
    double good_to_bad = 0.05;
    double bad_to_good = 0.5;
    double erase_good = 0.01;
    double erase_bad = 1.0;
    uint64_t seed = 0;
};

ErasurePattern sample_ge(const GilbertElliott& ge, int horizon);

}  // namespace streamrelay
