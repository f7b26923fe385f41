#pragma once

#include <optional>

#include "relay.hpp"

namespace streamrelay {

enum class VerifyMode { kExhaustive, kJoint, kGeSoak };
enum class Verdict { kOptimal, kRegimeOutside, kMiss, kNotConstructible, kCapExceeded };

const char* to_string(VerifyMode mode);
const char* to_string(Verdict verdict);

struct VerifyPlan {
    RelayParams params;
    uint32_t field_order = 256;
    VerifyMode mode = VerifyMode::kExhaustive;
    int horizon1 = 0;  // 0 = span + T_u + 1
    int horizon2 = 0;
    int samples = 10000;
    uint64_t seed = 0;
    int widen_b1 = 0;  // negative controls: widen a channel beyond the code's design
    int widen_b2 = 0;
    int threads = 0;   // 0 = hardware concurrency; STREAMRELAY_THREADS caps either way
    int enumeration_cap = kDefaultEnumerationCap;
};

struct HopWitness {
    ErasurePattern pattern;
    int msg_time = 0;
    int symbol = 0;
    int deadline = 0;
    int recovered_at = RecoveredStream::kUnrecovered;
};

struct HopVerifyResult {
    HopVerifyResult(int hop_, const DcswChannel& channel_, int horizon_)
        : hop(hop_), channel(channel_), horizon(horizon_) {}

    int hop;  // 1 or 2
    DcswChannel channel;
    int horizon;
    uint64_t patterns = 0;
    uint64_t misses = 0;
    std::vector<HopWitness> witnesses;  // first few misses, pattern order
};

struct JointWitness {
    ErasurePattern pat1, pat2;
    int msg_time = 0;
    int symbol = 0;
    int deadline = 0;
    int recovered_at = EndToEndLedger::kUnrecovered;
    bool poisoned = false;
};

struct JointResult {
    int horizon = 0;
    uint64_t pairs = 0;          // converse witness pairs + random samples
    uint64_t witness_pairs = 0;  // deterministic burst scenarios run first
    uint64_t misses = 0;
    std::vector<JointWitness> witnesses;
};

struct GeSoakResult {
    GilbertElliott config;  // seed field holds the plan seed
    int horizon = 0;
    uint64_t samples = 0;
    uint64_t pat1_permissible = 0;
    uint64_t pat2_permissible = 0;
    uint64_t both_permissible = 0;
    uint64_t erased_slots_hop1 = 0;
    uint64_t erased_slots_hop2 = 0;
    uint64_t in_contract_misses = 0;   // both patterns permissible: must be zero
    uint64_t out_of_contract_misses = 0;
    uint64_t poisoned_slots = 0;
};

struct VerifyReport {
    explicit VerifyReport(RateReport planned_) : planned(std::move(planned_)) {}

    RateReport planned;
    uint32_t field_order = 256;
    VerifyMode mode = VerifyMode::kExhaustive;
    uint64_t seed = 0;
    int samples = 0;
    int widen_b1 = 0;
    int widen_b2 = 0;
    std::vector<HopVerifyResult> hops;
    std::optional<JointResult> joint;
    std::optional<GeSoakResult> ge;
    Verdict verdict = Verdict::kNotConstructible;
    bool pass = false;
};

// Exhaustive per-pattern deadline check of one hop code against one channel.
HopVerifyResult verify_hop(const SdeCode& code, const DcswChannel& channel, int horizon,
                           int threads = 0, int cap = kDefaultEnumerationCap);

VerifyReport verify_relay(const VerifyPlan& plan);

// The two burst scenarios behind the rate bound, placed at every alignment:
// an initial burst of b1 on hop one (empty hop-two pattern) and a terminal
// burst of b2 on hop two (empty hop-one pattern).
std::vector<std::pair<ErasurePattern, ErasurePattern>> converse_witnesses(const RelayParams& p,
                                                                          int horizon1,
                                                                          int horizon2);

// Worker count after applying the STREAMRELAY_THREADS cap.
int resolve_threads(int requested);

}  // namespace streamrelay
