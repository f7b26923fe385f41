// Cross-checks the streaming decoder against an independent recovery-time
// oracle that never touches field arithmetic: a message symbol (t, j) sits in
// exactly one base codeword, and with erasures-only reception its recovery
// time is the arrival of that codeword's k-th available symbol.
#include <random>
#include <tuple>

#include "doctest.h"
#include "verify.hpp"

using namespace streamrelay;

namespace {

// -1 when unrecoverable within the horizon
int oracle_recovery(const SdeLayout& l, const std::vector<char>& erased, int H, int t, int j) {
    if (!erased[t]) return t;
    const int s = t - l.placement[j];
    int have = 0;
    for (int pos = 0; pos < l.n; ++pos) {
        const int u = s + l.placement[pos];
        if (u >= H) break;
        if (u < 0 || !erased[u]) {
            // the k-th available arrival; never precedes t for an erased (t, j)
            if (++have == l.k) return u;
        }
    }
    return -1;
}

}  // namespace

TEST_CASE("decoder ledger equals the counting oracle on random patterns") {
    std::mt19937_64 rng(2024);
    const Field& f = Field::of(256);
    for (auto [a, b, T] : {std::tuple{1, 2, 5}, {1, 3, 6}, {2, 3, 7}, {2, 4, 9}, {3, 6, 8}}) {
        for (int k = 1; k <= SdeLayout::max_message_len(a, b, T); ++k) {
            const SdeCode code(f, a, b, T, k);
            const SdeLayout& l = code.layout();
            const int H = l.span + T + 6;
            std::vector<std::vector<uint16_t>> msgs(H, std::vector<uint16_t>(k));
            for (int t = 0; t < H; ++t)
                for (int jj = 0; jj < k; ++jj) msgs[t][jj] = canonical_symbol(k, 256, t, jj);
            const PacketStream sent = encode_stream(code, msgs, H);

            for (int trial = 0; trial < 60; ++trial) {
                std::vector<char> erased(H, 0);
                std::vector<int> times;
                for (int t = 0; t < H; ++t) {
                    if (rng() % 4 == 0) {  // arbitrary pattern, permissible or not
                        erased[t] = 1;
                        times.push_back(t);
                    }
                }
                const RecoveredStream rec = decode_stream(code, apply_erasures(sent, times));
                for (int t = 0; t < H; ++t) {
                    for (int jj = 0; jj < k; ++jj) {
                        const int want = oracle_recovery(l, erased, H, t, jj);
                        const int got = rec.at(t, jj);
                        REQUIRE(got == want);
                        if (got != RecoveredStream::kUnrecovered)
                            REQUIRE(rec.value(t, jj) == msgs[t][jj]);
                    }
                }
            }
        }
    }
}

TEST_CASE("sub-maximal k keeps every per-hop deadline, exhaustively") {
    const Field& f = Field::of(256);
    for (auto [a, b, T] : {std::tuple{1, 2, 5}, {1, 3, 6}, {2, 3, 7}}) {
        const int kmax = SdeLayout::max_message_len(a, b, T);
        for (int k = 1; k <= kmax; ++k) {
            const SdeCode code(f, a, b, T, k);
            const HopVerifyResult r = verify_hop(code, DcswChannel(a, b, T), 0);
            REQUIRE(r.misses == 0);
            REQUIRE(r.patterns > 0);
        }
    }
}
