// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expected values are either frozen constants from independent
// long-hand computation or properties whose oracle is the exhaustive run
// itself; tolerances are exact throughout.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "json_io.hpp"

using namespace streamrelay;
using nlohmann::ordered_json;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  [%d] %s%s%s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<RelayParams> sweep_tuples() {
    std::vector<RelayParams> out;
    for (int a1 = 1; a1 <= 2; ++a1)
        for (int b1 = a1; b1 <= 4; ++b1)
            for (int a2 = 1; a2 <= 2; ++a2)
                for (int b2 = a2; b2 <= 4; ++b2)
                    for (int T = 1; T <= 12; ++T) {
                        const RelayParams p(a1, b1, a2, b2, T);
                        if (p.degenerate() || !p.hops_feasible()) continue;
                        if (!regime_check(p).optimal()) continue;
                        if (p.k() < 1) continue;
                        out.push_back(p);
                    }
    return out;
}

std::string tuple_name(const RelayParams& p) {
    std::ostringstream ss;
    ss << "(" << p.a1 << "," << p.b1 << "," << p.a2 << "," << p.b2 << "," << p.T << ")";
    return ss.str();
}

bool trace_matches(const RelayCode& code, TraceNode node, const ordered_json& golden,
                   std::string& detail) {
    const int from = golden["from"].get<int>();
    const auto& rows = golden["labels"];
    const auto cols = trace_node(code, node, from, from + static_cast<int>(rows.size()) - 1);
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto want = rows[i].get<std::vector<std::string>>();
        if (cols[i].labels != want) {
            std::ostringstream ss;
            ss << "t=" << from + static_cast<int>(i) << " got [";
            for (const auto& s : cols[i].labels) ss << s << " ";
            ss << "]";
            detail = ss.str();
            return false;
        }
    }
    return true;
}

void criterion1_worked_example() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    const RelayParams params(1, 2, 1, 3, 8);
    const RateReport r = plan(params);
    ok = ok && r.k == 2 && r.constructible;
    ok = ok && r.bound.has_value() && *r.bound == Rational::of(2, 3);
    ok = ok && capacity_p2p(1, 2, 5) == Rational::of(5, 7);
    ok = ok && capacity_p2p(1, 3, 6) == Rational::of(6, 9);
    ok = ok && r.rate.has_value() && *r.rate == Rational::of(2, 3);
    ok = ok && r.profile.has_value() &&
         r.profile->entries == std::vector<std::pair<int, int>>{{4, 3}, {2, 6}};

    const RelayCode code(Field::of(256), params);
    ok = ok && code.n1() == 3 && code.n2() == 3;

    std::ifstream golden_file(std::string(STREAMRELAY_GOLDEN_DIR) + "/trace_1_2_1_3_8.json");
    if (!golden_file) {
        report(1, "worked-example reproduction", false, "golden file missing");
        return;
    }
    ordered_json golden;
    golden_file >> golden;
    ok = ok && trace_matches(code, TraceNode::kSource, golden["s"], detail);
    ok = ok && trace_matches(code, TraceNode::kRelay, golden["r"], detail);
    ok = ok && trace_matches(code, TraceNode::kDestination, golden["d"], detail);

    const double dt = seconds_since(start);
    ok = ok && dt < 1.0;
    std::ostringstream ss;
    ss << "k=2, rate 2/3, profile ((4,3),(2,6)), traces cell-for-cell, " << dt << "s";
    if (!detail.empty()) ss << "; mismatch at " << detail;
    report(1, "worked-example reproduction", ok, ss.str());
}

void criterion2_dispersion_golden() {
    bool ok = true;
    const SdeLayout wide = SdeLayout::make(3, 6, 8, 3);
    ok = ok && wide.span == 9 && wide.placement == std::vector<int>{0, 1, 2, 6, 7, 8};
    const SdeLayout hop1 = SdeLayout::make(1, 2, 5, 2);
    ok = ok && hop1.placement == std::vector<int>{0, 2, 4} &&
         hop1.delays == std::vector<int>{4, 2};
    const SdeLayout hop2 = SdeLayout::make(1, 3, 6, 2);
    ok = ok && hop2.placement == std::vector<int>{0, 3, 6};
    // flipped schedule: tau_j = delays[k-1-j]
    ok = ok && hop2.delays[1] == 3 && hop2.delays[0] == 6;
    report(2, "dispersion-set golden values", ok,
           "span 9 / {0,1,2,6,7,8}; {0,2,4} delays (4,2); {0,3,6} flipped (3,6)");
}

void criterion3_capacity_formulas() {
    const bool ok = capacity_p2p(1, 2, 5) == Rational::of(5, 7) &&
                    capacity_p2p(1, 3, 6) == Rational::of(2, 3) &&
                    upper_bound(RelayParams(1, 2, 1, 3, 8)) == Rational::of(2, 3);
    report(3, "capacity formulas exact", ok, "5/7, 2/3, min = 2/3");
}

void criterion4_exhaustive_sweep(const std::vector<RelayParams>& sweep) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    bool saw_examples[3] = {false, false, false};
    uint64_t total_patterns = 0;
    for (const RelayParams& p : sweep) {
        if (p.a1 == 1 && p.b1 == 2 && p.a2 == 1 && p.b2 == 3 && p.T == 8) saw_examples[0] = true;
        if (p.a1 == 1 && p.b1 == 2 && p.a2 == 1 && p.b2 == 2 && p.T == 8) saw_examples[1] = true;
        if (p.a1 == 2 && p.b1 == 2 && p.a2 == 2 && p.b2 == 4) saw_examples[2] = true;
        VerifyPlan vp{.params = p};
        const VerifyReport r = verify_relay(vp);
        for (const auto& hop : r.hops) total_patterns += hop.patterns;
        if (r.verdict != Verdict::kOptimal) {
            ok = false;
            detail = tuple_name(p) + " -> " + to_string(r.verdict);
            break;
        }
    }
    ok = ok && saw_examples[0] && saw_examples[1] && saw_examples[2];
    std::ostringstream ss;
    ss << sweep.size() << " regime tuples, " << total_patterns << " patterns, "
       << seconds_since(start) << "s";
    if (!detail.empty()) ss << "; " << detail;
    report(4, "exhaustive optimality sweep (T<=12, a<=2, b<=4)", ok, ss.str());
}

void criterion5_negative_control() {
    VerifyPlan vp{.params = RelayParams(1, 2, 1, 3, 8)};
    vp.widen_b1 = 1;
    const VerifyReport r = verify_relay(vp);
    bool ok = r.verdict == Verdict::kMiss && !r.hops.empty() && r.hops[0].misses > 0 &&
              !r.hops[0].witnesses.empty();
    std::string detail = "no witness";
    if (ok) {
        // the witness must reproduce on a fresh decode
        const HopWitness& w = r.hops[0].witnesses.front();
        const RelayCode code(Field::of(256), vp.params);
        const SdeCode& hop = code.hop1();
        std::vector<std::vector<uint16_t>> msgs(w.pattern.horizon,
                                                std::vector<uint16_t>(hop.k()));
        for (int t = 0; t < w.pattern.horizon; ++t)
            for (int j = 0; j < hop.k(); ++j)
                msgs[t][j] = canonical_symbol(hop.k(), 256, t, j);
        const RecoveredStream rec = decode_stream(
            hop, apply_erasures(encode_stream(hop, msgs, w.pattern.horizon), w.pattern.erased));
        const int at = rec.at(w.msg_time, w.symbol);
        ok = at == RecoveredStream::kUnrecovered || at > w.deadline;
        std::ostringstream ss;
        ss << r.hops[0].misses << " misses; witness symbol (" << w.msg_time << "," << w.symbol
           << ") deadline " << w.deadline << " reproduced";
        detail = ss.str();
    }
    report(5, "negative control (widened hop-1 channel must fail)", ok, detail);
}

void criterion6_mds_exhaustive() {
    const auto start = std::chrono::steady_clock::now();
    const Field& f = Field::of(256);
    bool ok = true;
    uint64_t decodes = 0;
    for (int n = 1; n <= 12 && ok; ++n) {
        for (int k = 1; k <= n && ok; ++k) {
            const MdsCode code(f, n, k);
            std::vector<uint16_t> msg(k);
            for (int j = 0; j < k; ++j)
                msg[j] = static_cast<uint16_t>((j * 29 + n * 17 + k * 5 + 1) & 0xFF);
            const std::vector<uint16_t> word = code.encode(msg);
            for (uint32_t mask = 0; mask < (1u << n) && ok; ++mask) {
                if (__builtin_popcount(mask) > n - k) continue;
                ErasedWord w;
                w.symbols = word;
                w.erased.assign(n, 0);
                for (int i = 0; i < n; ++i) {
                    if (mask >> i & 1) {
                        w.erased[i] = 1;
                        w.symbols[i] = 0;
                    }
                }
                ++decodes;
                if (code.decode_erasures(w) != msg) ok = false;
            }
        }
    }
    const double dt = seconds_since(start);
    std::ostringstream ss;
    ss << decodes << " decodes over all n<=12, " << dt << "s";
    report(6, "MDS erasure property, exhaustive", ok && dt < 10.0, ss.str());
}

void criterion7_floor_identity() {
    bool ok = true;
    for (long long z = 1; z <= 10 && ok; ++z)
        for (long long x = -50; x <= 50 && ok; ++x)
            for (long long y = -50; y <= 50; ++y) {
                long long q = -101;
                while ((q + 1) * z <= x - y) ++q;
                if (floor_diff(x, y, z) != q) {
                    ok = false;
                    break;
                }
            }
    report(7, "floor-difference identity vs counting oracle", ok, "x,y in [-50,50], z in [1,10]");
}

void criterion8_delay_sum_algebra(const std::vector<RelayParams>& sweep) {
    bool ok = true;
    std::string detail;
    for (const RelayParams& p : sweep) {
        const DelayProfile d = delay_profile(p, p.k());
        const SdeLayout l1 = SdeLayout::make(p.a(), p.bp1(), p.hop1_delay(), p.k());
        const SdeLayout l2 = SdeLayout::make(p.a(), p.bp2(), p.hop2_delay(), p.k());
        const int expected =
            p.bp1() >= p.bp2() ? l1.span - 1 + p.bp2() : l2.span - 1 + p.bp1();
        if (d.max_sum != expected || d.max_sum > p.T || p.k() % p.a() != 0) {
            ok = false;
            detail = tuple_name(p);
            break;
        }
    }
    report(8, "delay-sum algebra across the sweep", ok,
           detail.empty() ? "max_j(t_j+tau_j) matches the span formula and stays under T"
                          : ("failed at " + detail));
}

void criterion9_randomized_soak(const std::vector<RelayParams>& sweep) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    uint64_t total_pairs = 0;
    for (const RelayParams& p : sweep) {
        VerifyPlan vp{.params = p};
        vp.mode = VerifyMode::kJoint;
        vp.samples = 10000;
        vp.seed = 0xC0FFEE;
        const VerifyReport r = verify_relay(vp);
        total_pairs += r.joint ? r.joint->pairs : 0;
        if (!r.pass || !r.joint || r.joint->misses != 0) {
            ok = false;
            detail = tuple_name(p);
            break;
        }
    }

    VerifyPlan soak{.params = RelayParams(1, 2, 1, 3, 8)};
    soak.mode = VerifyMode::kGeSoak;
    soak.samples = 10000;
    soak.seed = 42;
    const VerifyReport ge = verify_relay(soak);
    ok = ok && ge.ge.has_value() && ge.ge->samples == 10000 && ge.ge->in_contract_misses == 0 &&
         ge.ge->erased_slots_hop1 > 0;

    std::ostringstream ss;
    ss << total_pairs << " joint pairs, GE soak seed 42 ("
       << (ge.ge ? ge.ge->both_permissible : 0) << "/" << (ge.ge ? ge.ge->samples : 0)
       << " pairs in contract), " << seconds_since(start) << "s";
    if (!detail.empty()) ss << "; failed at " << detail;
    report(9, "randomized joint + Gilbert-Elliott soak", ok, ss.str());
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<RelayParams> sweep = sweep_tuples();

    criterion1_worked_example();
    criterion2_dispersion_golden();
    criterion3_capacity_formulas();
    criterion4_exhaustive_sweep(sweep);
    criterion5_negative_control();
    criterion6_mds_exhaustive();
    criterion7_floor_identity();
    criterion8_delay_sum_algebra(sweep);
    criterion9_randomized_soak(sweep);

    std::printf("%s: %d criteria failed, total %.1fs\n", g_failures == 0 ? "OK" : "FAILED",
                g_failures, seconds_since(start));
    return g_failures == 0 ? 0 : 1;
}
