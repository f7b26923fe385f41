#pragma once

#include "channel.hpp"
#include "planner.hpp"
#include "sde.hpp"

namespace streamrelay {

// The three-node code: one SDE streaming code per hop, same message length k
// and redundancy a on both. The relay re-packetizes decoded source symbols in
// flipped order on a fixed schedule: relay packet i, slot l carries source
// symbol (i - t_{k-1-l}, k-1-l). The schedule is oblivious to the erasure
// pattern, which is what lets per-hop guarantees compose.
class RelayCode {
public:
    RelayCode(const Field& field, const RelayParams& params);
    RelayCode(const Field& field, const RelayParams& params, int k);

    const RelayParams& params() const { return params_; }
    const SdeCode& hop1() const { return hop1_; }
    const SdeCode& hop2() const { return hop2_; }
    int k() const { return k_; }
    int n1() const { return hop1_.n(); }
    int n2() const { return hop2_.n(); }
    Rational rate() const { return Rational::of(k_, n1() > n2() ? n1() : n2()); }
    const DelayProfile& profile() const { return profile_; }

    // source coordinates feeding relay slot l at relay time i
    int schedule_symbol(int slot) const { return k_ - 1 - slot; }
    int schedule_delay(int slot) const { return profile_.entries[k_ - 1 - slot].first; }

private:
    RelayParams params_;
    int k_;
    SdeCode hop1_;
    SdeCode hop2_;
    DelayProfile profile_;
};

// One relay message packet assembled from hop-1 recoveries available by time
// i. Slots whose source symbol missed its hop-1 deadline carry zero and are
// flagged; that only happens outside the hop-1 contract.
struct RelayPacket {
    std::vector<uint16_t> slots;
    std::vector<uint8_t> unavailable;
};

RelayPacket relay_step(const RelayCode& code, const RecoveredStream& hop1_recovered, int time);

// Destination-side fate of every source message symbol.
struct EndToEndLedger {
    static constexpr int kUnrecovered = -1;

    int message_count = 0;
    int k = 0;
    int T = 0;
    std::vector<int> recovered_at;   // message_count x k
    std::vector<uint16_t> values;
    std::vector<uint8_t> poisoned;   // relay forwarded a substitute, value untrusted

    int at(int i, int j) const { return recovered_at[static_cast<size_t>(i) * k + j]; }
    uint16_t value(int i, int j) const { return values[static_cast<size_t>(i) * k + j]; }
    bool is_poisoned(int i, int j) const { return poisoned[static_cast<size_t>(i) * k + j] != 0; }

    // deadline misses against recovery <= i + T (poisoned entries count as misses)
    int miss_count() const;
};

struct EndToEndRun {
    EndToEndLedger ledger;
    PacketStream hop1_sent, hop1_received, hop2_sent, hop2_received;
    int poisoned_slots = 0;
};

// Full pipeline: source encode, hop-1 erasures, relay decode, fixed-schedule
// re-encode, hop-2 erasures, destination decode.
EndToEndRun run_end_to_end(const RelayCode& code, const std::vector<std::vector<uint16_t>>& messages,
                           const ErasurePattern& pat1, const ErasurePattern& pat2);

}  // namespace streamrelay
