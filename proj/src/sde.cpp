#include "sde.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace streamrelay {

int SdeLayout::max_message_len(int a, int b, int T) {
    const int m = (T + 1) / b;
    const int delta1 = (T + 1) % b;
    const int delta2 = std::min(delta1, a);
    return (m - 1) * a + delta2;
}

SdeLayout SdeLayout::make(int a, int b, int T, int k) {
    if (a < 1 || a > b || b > T)
        fail(ErrorCode::kInvalidArgument, "sde: need 0 < a <= b <= T");
    const int kmax = max_message_len(a, b, T);
    if (k < 1 || k > kmax)
        fail(ErrorCode::kOutOfRange, "sde: k = " + std::to_string(k) +
                                         " outside [1, " + std::to_string(kmax) +
                                         "] for (a,b,T) = (" + std::to_string(a) + "," +
                                         std::to_string(b) + "," + std::to_string(T) + ")");
    SdeLayout l;
    l.a = a;
    l.b = b;
    l.T = T;
    l.k = k;
    l.n = k + a;
    l.m = (T + 1) / b;
    l.delta1 = (T + 1) % b;
    l.delta2 = std::min(l.delta1, a);
    l.span = l.n + (b - a) * ((l.n - 1) / a);
    l.placement.resize(l.n);
    for (int i = 0; i < l.n; ++i) l.placement[i] = i + (b - a) * (i / a);
    l.delays.resize(k);
    for (int j = 0; j < k; ++j) l.delays[j] = l.span - 1 - l.placement[j];
    if (l.span > T + 1) fail(ErrorCode::kInternal, "sde: dispersion span exceeds T+1");
    return l;
}

SdeCode::SdeCode(const Field& field, int a, int b, int T, int k)
    : layout_(SdeLayout::make(a, b, T, k)), base_(field, layout_.n, layout_.k) {}

SdeCode::SdeCode(const Field& field, SdeLayout layout, MdsCode base)
    : layout_(std::move(layout)), base_(std::move(base)) {
    (void)field;
    if (base_.n() != layout_.n || base_.k() != layout_.k)
        fail(ErrorCode::kInvalidArgument, "sde: base code shape does not match layout");
}

PacketStream encode_stream(const SdeCode& code, const std::vector<std::vector<uint16_t>>& messages,
                           int horizon) {
    const SdeLayout& l = code.layout();
    if (horizon < 0) horizon = static_cast<int>(messages.size());
    for (const auto& m : messages) {
        if (m.size() != static_cast<size_t>(l.k))
            fail(ErrorCode::kInvalidArgument, "sde: message packet width must be k");
    }
    const int msg_count = static_cast<int>(messages.size());
    auto msg_at = [&](int t, int j) -> uint16_t {
        if (t < 0 || t >= msg_count) return 0;
        return messages[t][j];
    };

    PacketStream out;
    out.width = l.n;
    out.packets.resize(horizon);
    for (auto& p : out.packets) p.slots.assign(l.n, 0);

    for (int t = 0; t < horizon && t < msg_count; ++t)
        for (int j = 0; j < l.k; ++j) out.packets[t].slots[j] = messages[t][j];

    // walk codeword start times whose parity lands inside the horizon
    std::vector<uint16_t> msg(l.k), word(l.n);
    for (int s = -(l.span - 1); s < horizon; ++s) {
        bool any = false;
        for (int j = 0; j < l.k; ++j) {
            msg[j] = msg_at(s + l.placement[j], j);
            any = any || msg[j] != 0;
        }
        if (any) {
            code.base().encode_into(msg, word);
        } else {
            std::fill(word.begin(), word.end(), 0);
        }
        for (int r = l.k; r < l.n; ++r) {
            const int t = s + l.placement[r];
            if (t >= 0 && t < horizon) out.packets[t].slots[r] = word[r];
        }
    }
    return out;
}

PacketStream apply_erasures(const PacketStream& sent, const std::vector<int>& erased_times) {
    PacketStream out = sent;
    for (int t : erased_times) {
        if (t < 0 || t >= out.horizon()) continue;
        out.packets[t].erased = true;
        std::fill(out.packets[t].slots.begin(), out.packets[t].slots.end(), 0);
    }
    return out;
}

StreamDecoder::StreamDecoder(const SdeCode& code) : code_(&code) {
    scratch_.symbols.assign(code.n(), 0);
    scratch_.erased.assign(code.n(), 0);
}

RecoveredStream decode_stream(const SdeCode& code, const PacketStream& received) {
    StreamDecoder d(code);
    return d.run(received);
}

RecoveredStream StreamDecoder::run(const PacketStream& received) {
    RecoveredStream out;
    run_into(received, out);
    return out;
}

void StreamDecoder::run_into(const PacketStream& received, RecoveredStream& out) {
    const SdeLayout& l = code_->layout();
    const int H = received.horizon();
    if (received.width != l.n)
        fail(ErrorCode::kInvalidArgument, "sde: received stream width does not match code");

    out.horizon = H;
    out.k = l.k;
    out.recovered_at.assign(static_cast<size_t>(H) * l.k, RecoveredStream::kUnrecovered);
    out.values.assign(static_cast<size_t>(H) * l.k, 0);

    // codeword start times s in [-(span-1), H); index shift by span-1
    const int cw_count = H + l.span - 1;
    known_.assign(cw_count, 0);
    decoded_.assign(cw_count, 0);
    symbols_.assign(static_cast<size_t>(cw_count) * l.n, 0);

    // symbols placed before time 0 are the all-zero startup prefix
    for (int idx = 0; idx < cw_count; ++idx) {
        const int s = idx - (l.span - 1);
        for (int pos = 0; pos < l.n; ++pos) {
            if (s + l.placement[pos] < 0) known_[idx] |= 1u << pos;
        }
        if (std::popcount(known_[idx]) >= l.k) decoded_[idx] = 1;  // all-message-zero codeword
    }

    for (int t = 0; t < H; ++t) {
        const Packet& p = received.packets[t];
        if (p.erased) continue;
        for (int pos = 0; pos < l.n; ++pos) {
            const int idx = t - l.placement[pos] + l.span - 1;
            known_[idx] |= 1u << pos;
            symbols_[static_cast<size_t>(idx) * l.n + pos] = p.slots[pos];
        }
        for (int j = 0; j < l.k; ++j) {
            out.recovered_at[static_cast<size_t>(t) * l.k + j] = t;
            out.values[static_cast<size_t>(t) * l.k + j] = p.slots[j];
        }
        for (int pos = 0; pos < l.n; ++pos) {
            const int idx = t - l.placement[pos] + l.span - 1;
            if (decoded_[idx] || std::popcount(known_[idx]) < l.k) continue;
            decoded_[idx] = 1;
            const int s = idx - (l.span - 1);
            for (int q = 0; q < l.n; ++q) {
                scratch_.symbols[q] = symbols_[static_cast<size_t>(idx) * l.n + q];
                scratch_.erased[q] = (known_[idx] >> q & 1) ? 0 : 1;
            }
            std::vector<uint16_t> msg = code_->base().decode_erasures(scratch_);
            for (int j = 0; j < l.k; ++j) {
                const int u = s + l.placement[j];
                if (u < 0 || u >= H) continue;
                auto& slot = out.recovered_at[static_cast<size_t>(u) * l.k + j];
                if (slot == RecoveredStream::kUnrecovered) {
                    slot = t;
                    out.values[static_cast<size_t>(u) * l.k + j] = msg[j];
                }
            }
        }
    }
}

uint16_t canonical_symbol(int k, uint32_t order, int time, int symbol) {
    if (time < 0) return 0;
    return static_cast<uint16_t>((static_cast<uint64_t>(time) * k + symbol + 1) % order);
}

}  // namespace streamrelay
