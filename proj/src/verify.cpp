#include "verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <thread>

namespace streamrelay {

namespace {

constexpr size_t kMaxWitnesses = 8;

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

const char* to_string(VerifyMode mode) {
    switch (mode) {
        case VerifyMode::kExhaustive: return "exhaustive";
        case VerifyMode::kJoint: return "joint";
        case VerifyMode::kGeSoak: return "ge";
    }
    return "?";
}

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::kOptimal: return "OPTIMAL";
        case Verdict::kRegimeOutside: return "REGIME-OUTSIDE";
        case Verdict::kMiss: return "MISS";
        case Verdict::kNotConstructible: return "NOT-CONSTRUCTIBLE";
        case Verdict::kCapExceeded: return "CAP-EXCEEDED";
    }
    return "?";
}

int resolve_threads(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("STREAMRELAY_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && n > cap) n = cap;
    }
    return n;
}

HopVerifyResult verify_hop(const SdeCode& code, const DcswChannel& channel, int horizon,
                           int threads, int cap) {
    const SdeLayout& l = code.layout();
    if (horizon <= 0) horizon = l.span + channel.T + 1;

    HopVerifyResult result(0, channel, horizon);

    std::vector<std::vector<uint16_t>> msgs(horizon, std::vector<uint16_t>(l.k));
    for (int t = 0; t < horizon; ++t)
        for (int j = 0; j < l.k; ++j)
            msgs[t][j] = canonical_symbol(l.k, code.field().order(), t, j);
    const PacketStream sent = encode_stream(code, msgs, horizon);

    const std::vector<uint32_t> masks = enumerate_pattern_masks(channel, horizon, cap);
    result.patterns = masks.size();

    const int nthreads = std::min(
        resolve_threads(threads), static_cast<int>(std::max<size_t>(masks.size(), 1)));
    struct ChunkResult {
        uint64_t misses = 0;
        std::vector<HopWitness> witnesses;
    };
    std::vector<ChunkResult> chunks(nthreads);

    auto work = [&](int w) {
        const size_t lo = masks.size() * w / nthreads;
        const size_t hi = masks.size() * (w + 1) / nthreads;
        ChunkResult& out = chunks[w];
        PacketStream received = sent;
        StreamDecoder decoder(code);
        RecoveredStream rec;
        std::vector<int> toggled;
        for (size_t idx = lo; idx < hi; ++idx) {
            const uint32_t mask = masks[idx];
            toggled.clear();
            for (int t = 0; t < horizon; ++t) {
                if (mask >> t & 1) {
                    received.packets[t].erased = true;
                    toggled.push_back(t);
                }
            }
            decoder.run_into(received, rec);
            for (int t = 0; t < horizon; ++t) {
                for (int j = 0; j < l.k; ++j) {
                    const int deadline = t + l.delays[j];
                    if (deadline >= horizon) continue;
                    const int at = rec.at(t, j);
                    const bool ok = at != RecoveredStream::kUnrecovered && at <= deadline &&
                                    rec.value(t, j) == msgs[t][j];
                    if (!ok) {
                        ++out.misses;
                        if (out.witnesses.size() < kMaxWitnesses) {
                            out.witnesses.push_back(HopWitness{
                                ErasurePattern::from_mask(mask, horizon), t, j, deadline, at});
                        }
                    }
                }
            }
            for (int t : toggled) received.packets[t].erased = false;
        }
    };

    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int w = 0; w < nthreads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    for (const ChunkResult& c : chunks) {
        result.misses += c.misses;
        for (const HopWitness& wit : c.witnesses) {
            if (result.witnesses.size() < kMaxWitnesses) result.witnesses.push_back(wit);
        }
    }
    return result;
}

std::vector<std::pair<ErasurePattern, ErasurePattern>> converse_witnesses(const RelayParams& p,
                                                                          int horizon1,
                                                                          int horizon2) {
    std::vector<std::pair<ErasurePattern, ErasurePattern>> out;
    ErasurePattern empty1, empty2;
    empty1.horizon = horizon1;
    empty2.horizon = horizon2;
    for (int o = 0; o + p.b1 <= horizon1; ++o)
        out.emplace_back(ErasurePattern::burst(o, p.b1, horizon1), empty2);
    for (int o = 0; o + p.b2 <= horizon2; ++o)
        out.emplace_back(empty1, ErasurePattern::burst(o, p.b2, horizon2));
    return out;
}

namespace {

ErasurePattern sample_permissible(const DcswChannel& ch, int horizon, std::mt19937_64& rng) {
    const double p = std::min(0.75, 1.5 * ch.a / ch.window());
    ErasurePattern pat;
    pat.horizon = horizon;
    for (int tries = 0; tries < 50; ++tries) {
        pat.erased.clear();
        for (int t = 0; t < horizon; ++t)
            if (next_unit(rng) < p) pat.erased.push_back(t);
        if (is_permissible(ch, pat)) return pat;
    }
    // trim erasures until the window constraint holds; removal keeps patterns
    // permissible once reached, so this terminates
    while (!is_permissible(ch, pat)) {
        const size_t victim = static_cast<size_t>(rng() % pat.erased.size());
        pat.erased.erase(pat.erased.begin() + victim);
    }
    return pat;
}

struct JointChecker {
    const RelayCode& code;
    JointResult& result;

    void run_pair(const std::vector<std::vector<uint16_t>>& msgs, const ErasurePattern& pat1,
                  const ErasurePattern& pat2) {
        const EndToEndRun run = run_end_to_end(code, msgs, pat1, pat2);
        const EndToEndLedger& led = run.ledger;
        ++result.pairs;
        for (int i = 0; i < led.message_count; ++i) {
            for (int j = 0; j < led.k; ++j) {
                const int at = led.at(i, j);
                const bool ok = at != EndToEndLedger::kUnrecovered && at <= i + led.T &&
                                !led.is_poisoned(i, j) && led.value(i, j) == msgs[i][j];
                if (!ok) {
                    ++result.misses;
                    if (result.witnesses.size() < kMaxWitnesses) {
                        result.witnesses.push_back(JointWitness{pat1, pat2, i, j, i + led.T, at,
                                                                led.is_poisoned(i, j)});
                    }
                }
            }
        }
    }
};

}  // namespace

VerifyReport verify_relay(const VerifyPlan& plan) {
    VerifyReport report(streamrelay::plan(plan.params));
    report.field_order = plan.field_order;
    report.mode = plan.mode;
    report.seed = plan.seed;
    report.samples = plan.samples;
    report.widen_b1 = plan.widen_b1;
    report.widen_b2 = plan.widen_b2;

    if (!report.planned.constructible) {
        report.verdict = Verdict::kNotConstructible;
        report.pass = false;
        return report;
    }

    const Field& field = Field::of(plan.field_order);
    const RelayCode code(field, plan.params);
    const RelayParams& p = plan.params;
    const int h1 = plan.horizon1 > 0 ? plan.horizon1 : code.hop1().span() + p.hop1_delay() + 1;
    const int h2 = plan.horizon2 > 0 ? plan.horizon2 : code.hop2().span() + p.hop2_delay() + 1;
    const DcswChannel ch1(p.a1, p.b1 + plan.widen_b1, p.hop1_delay());
    const DcswChannel ch2(p.a2, p.b2 + plan.widen_b2, p.hop2_delay());

    uint64_t misses = 0;
    bool cap_exceeded = false;

    switch (plan.mode) {
        case VerifyMode::kExhaustive: {
            try {
                HopVerifyResult r1 =
                    verify_hop(code.hop1(), ch1, h1, plan.threads, plan.enumeration_cap);
                r1.hop = 1;
                misses += r1.misses;
                report.hops.push_back(std::move(r1));
                HopVerifyResult r2 =
                    verify_hop(code.hop2(), ch2, h2, plan.threads, plan.enumeration_cap);
                r2.hop = 2;
                misses += r2.misses;
                report.hops.push_back(std::move(r2));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::kCapExceeded) throw;
                cap_exceeded = true;
            }
            break;
        }
        case VerifyMode::kJoint: {
            JointResult joint;
            joint.horizon = std::max(h1, h2);
            const int msg_count = std::max(1, joint.horizon - p.T - 1);
            JointChecker checker{code, joint};

            const auto scenarios = converse_witnesses(p, joint.horizon, joint.horizon);
            joint.witness_pairs = scenarios.size();
            std::vector<std::vector<uint16_t>> msgs(msg_count, std::vector<uint16_t>(code.k()));
            for (int i = 0; i < msg_count; ++i)
                for (int j = 0; j < code.k(); ++j)
                    msgs[i][j] = canonical_symbol(code.k(), plan.field_order, i, j);
            for (const auto& [pat1, pat2] : scenarios) checker.run_pair(msgs, pat1, pat2);

            for (int s = 0; s < plan.samples; ++s) {
                std::mt19937_64 rng(splitmix64(plan.seed ^ (0x517CC1B727220A95ull + s)));
                const ErasurePattern pat1 = sample_permissible(ch1, joint.horizon, rng);
                const ErasurePattern pat2 = sample_permissible(ch2, joint.horizon, rng);
                for (auto& row : msgs)
                    for (auto& v : row) v = static_cast<uint16_t>(rng() % plan.field_order);
                checker.run_pair(msgs, pat1, pat2);
            }
            misses = joint.misses;
            report.joint = std::move(joint);
            break;
        }
        case VerifyMode::kGeSoak: {
            GeSoakResult soak;
            soak.config = GilbertElliott{};
            soak.config.seed = plan.seed;
            soak.horizon = std::max(h1, h2);
            const int msg_count = std::max(1, soak.horizon - p.T - 1);
            std::vector<std::vector<uint16_t>> msgs(msg_count, std::vector<uint16_t>(code.k()));
            for (int s = 0; s < plan.samples; ++s) {
                GilbertElliott ge1 = soak.config;
                ge1.seed = splitmix64(plan.seed ^ (2ull * s + 1));
                GilbertElliott ge2 = soak.config;
                ge2.seed = splitmix64(plan.seed ^ (2ull * s + 2));
                const ErasurePattern pat1 = sample_ge(ge1, soak.horizon);
                const ErasurePattern pat2 = sample_ge(ge2, soak.horizon);
                const bool ok1 = is_permissible(ch1, pat1);
                const bool ok2 = is_permissible(ch2, pat2);
                soak.pat1_permissible += ok1;
                soak.pat2_permissible += ok2;
                soak.both_permissible += ok1 && ok2;
                soak.erased_slots_hop1 += pat1.erased.size();
                soak.erased_slots_hop2 += pat2.erased.size();

                std::mt19937_64 rng(splitmix64(plan.seed ^ (0xD1B54A32D192ED03ull + s)));
                for (auto& row : msgs)
                    for (auto& v : row) v = static_cast<uint16_t>(rng() % plan.field_order);
                const EndToEndRun run = run_end_to_end(code, msgs, pat1, pat2);
                soak.poisoned_slots += run.poisoned_slots;
                const int pair_misses = run.ledger.miss_count();
                if (ok1 && ok2) {
                    soak.in_contract_misses += pair_misses;
                } else {
                    soak.out_of_contract_misses += pair_misses;
                }
                ++soak.samples;
            }
            misses = soak.in_contract_misses;
            report.ge = std::move(soak);
            break;
        }
    }

    if (cap_exceeded) {
        report.verdict = Verdict::kCapExceeded;
        report.pass = false;
        return report;
    }
    if (misses > 0) {
        report.verdict = Verdict::kMiss;
        report.pass = false;
        return report;
    }
    const bool rate_meets_bound = report.planned.optimal;
    report.verdict = rate_meets_bound ? Verdict::kOptimal : Verdict::kRegimeOutside;
    report.pass = plan.mode == VerifyMode::kExhaustive ? report.verdict == Verdict::kOptimal : true;
    return report;
}

}  // namespace streamrelay
