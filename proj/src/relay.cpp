#include "relay.hpp"

#include <algorithm>

namespace streamrelay {

namespace {

int planned_k(const RelayParams& p) {
    const int k = p.k();
    if (k < 1)
        fail(ErrorCode::kDegenerateParams, "relay: planned k < 1, no code for these parameters");
    return k;
}

}  // namespace

RelayCode::RelayCode(const Field& field, const RelayParams& params)
    : RelayCode(field, params, planned_k(params)) {}

RelayCode::RelayCode(const Field& field, const RelayParams& params, int k)
    : params_(params),
      k_(k),
      hop1_(field, params.a(), params.bp1(), params.hop1_delay(), k),
      hop2_(field, params.a(), params.bp2(), params.hop2_delay(), k),
      profile_(delay_profile(params, k)) {
    // hop layouts already enforce span <= T_u + 1; profile records t_j + tau_j
}

RelayPacket relay_step(const RelayCode& code, const RecoveredStream& hop1_recovered, int time) {
    const int k = code.k();
    RelayPacket out;
    out.slots.assign(k, 0);
    out.unavailable.assign(k, 0);
    for (int slot = 0; slot < k; ++slot) {
        const int j = code.schedule_symbol(slot);
        const int src_time = time - code.schedule_delay(slot);
        if (src_time < 0) continue;  // startup: zero message
        if (src_time >= hop1_recovered.horizon) {
            out.unavailable[slot] = 1;
            continue;
        }
        const int rec = hop1_recovered.at(src_time, j);
        if (rec == RecoveredStream::kUnrecovered || rec > time) {
            out.unavailable[slot] = 1;
            continue;
        }
        out.slots[slot] = hop1_recovered.value(src_time, j);
    }
    return out;
}

int EndToEndLedger::miss_count() const {
    int misses = 0;
    for (int i = 0; i < message_count; ++i) {
        for (int j = 0; j < k; ++j) {
            const int rec = at(i, j);
            if (rec == kUnrecovered || rec > i + T || is_poisoned(i, j)) ++misses;
        }
    }
    return misses;
}

EndToEndRun run_end_to_end(const RelayCode& code, const std::vector<std::vector<uint16_t>>& messages,
                           const ErasurePattern& pat1, const ErasurePattern& pat2) {
    validate_pattern(pat1);
    validate_pattern(pat2);
    const int k = code.k();
    const int T = code.params().T;
    const int msg_count = static_cast<int>(messages.size());
    int horizon = msg_count + T + 1;
    horizon = std::max({horizon, pat1.horizon, pat2.horizon});

    EndToEndRun run;
    run.hop1_sent = encode_stream(code.hop1(), messages, horizon);
    run.hop1_received = apply_erasures(run.hop1_sent, pat1.erased);
    const RecoveredStream hop1_rec = decode_stream(code.hop1(), run.hop1_received);

    // relay output on the fixed schedule
    std::vector<std::vector<uint16_t>> relay_msgs(horizon);
    std::vector<std::vector<uint8_t>> relay_poison(horizon);
    for (int i = 0; i < horizon; ++i) {
        RelayPacket pkt = relay_step(code, hop1_rec, i);
        run.poisoned_slots +=
            static_cast<int>(std::count(pkt.unavailable.begin(), pkt.unavailable.end(), 1));
        relay_msgs[i] = std::move(pkt.slots);
        relay_poison[i] = std::move(pkt.unavailable);
    }

    run.hop2_sent = encode_stream(code.hop2(), relay_msgs, horizon);
    run.hop2_received = apply_erasures(run.hop2_sent, pat2.erased);
    const RecoveredStream hop2_rec = decode_stream(code.hop2(), run.hop2_received);

    EndToEndLedger& led = run.ledger;
    led.message_count = msg_count;
    led.k = k;
    led.T = T;
    led.recovered_at.assign(static_cast<size_t>(msg_count) * k, EndToEndLedger::kUnrecovered);
    led.values.assign(static_cast<size_t>(msg_count) * k, 0);
    led.poisoned.assign(static_cast<size_t>(msg_count) * k, 0);

    for (int i = 0; i < msg_count; ++i) {
        for (int j = 0; j < k; ++j) {
            const int slot = k - 1 - j;
            const int relay_time = i + code.schedule_delay(slot);
            if (relay_time >= horizon) continue;
            const size_t idx = static_cast<size_t>(i) * k + j;
            led.recovered_at[idx] = hop2_rec.at(relay_time, slot);
            led.values[idx] = hop2_rec.value(relay_time, slot);
            led.poisoned[idx] = relay_poison[relay_time][slot];
        }
    }
    return run;
}

}  // namespace streamrelay
