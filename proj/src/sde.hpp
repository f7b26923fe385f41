#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mds.hpp"

namespace streamrelay {

// Placement arithmetic of a staggered-diagonal-embedding code for one
// (a,b,T) hop: base code length n = k+a, dispersion span N, placement set S
// and the per-symbol decoding delays. Pure integers, no field involved.
struct SdeLayout {
    int a = 0;
    int b = 0;
    int T = 0;
    int k = 0;
    int n = 0;
    int span = 0;          // N
    int m = 0;             // T+1 = m*b + delta1
    int delta1 = 0;
    int delta2 = 0;        // min(delta1, a)
    std::vector<int> placement;  // S, strictly increasing, size n
    std::vector<int> delays;     // t_j = span-1-placement[j], size k

    // largest message length admitted by the dispersion-span constraint
    static int max_message_len(int a, int b, int T);
    static SdeLayout make(int a, int b, int T, int k);
};

struct Packet {
    std::vector<uint16_t> slots;
    bool erased = false;
};

struct PacketStream {
    int width = 0;  // slots per packet
    std::vector<Packet> packets;

    int horizon() const { return static_cast<int>(packets.size()); }
};

// Per message symbol (time, index): when it became known at the receiver and
// its reconstructed value. recovered_at == kUnrecovered means never.
struct RecoveredStream {
    static constexpr int kUnrecovered = -1;

    int horizon = 0;
    int k = 0;
    std::vector<int> recovered_at;
    std::vector<uint16_t> values;

    int at(int t, int j) const { return recovered_at[static_cast<size_t>(t) * k + j]; }
    uint16_t value(int t, int j) const { return values[static_cast<size_t>(t) * k + j]; }
};

class SdeCode {
public:
    SdeCode(const Field& field, int a, int b, int T, int k);
    SdeCode(const Field& field, SdeLayout layout, MdsCode base);

    const SdeLayout& layout() const { return layout_; }
    const MdsCode& base() const { return base_; }
    const Field& field() const { return base_.field(); }

    int a() const { return layout_.a; }
    int b() const { return layout_.b; }
    int T() const { return layout_.T; }
    int k() const { return layout_.k; }
    int n() const { return layout_.n; }
    int span() const { return layout_.span; }
    const std::vector<int>& placement() const { return layout_.placement; }
    const std::vector<int>& delays() const { return layout_.delays; }

private:
    SdeLayout layout_;
    MdsCode base_;
};

// Encodes message packets (time 0 upward, each of k symbols) into coded
// packets for times [0, horizon). Messages outside the given range are zero,
// so the stream is total from time 0.
PacketStream encode_stream(const SdeCode& code, const std::vector<std::vector<uint16_t>>& messages,
                           int horizon = -1);

// Marks the pattern's time slots as erased (slot data zeroed).
PacketStream apply_erasures(const PacketStream& sent, const std::vector<int>& erased_times);

// Streaming decoder with reusable workspace; one instance per logical thread.
class StreamDecoder {
public:
    explicit StreamDecoder(const SdeCode& code);

    RecoveredStream run(const PacketStream& received);

    // Mask-free variant used by the verification inner loop: deadline misses
    // are appended as (time, symbol) pairs instead of materializing a ledger.
    void run_into(const PacketStream& received, RecoveredStream& out);

private:
    const SdeCode* code_;
    std::vector<uint32_t> known_;      // per codeword bitmask of arrived symbols
    std::vector<uint8_t> decoded_;
    std::vector<uint16_t> symbols_;    // per codeword, n symbols
    ErasedWord scratch_;
};

RecoveredStream decode_stream(const SdeCode& code, const PacketStream& received);

// Deterministic message fill used by traces and verification sweeps:
// (time*k + symbol + 1) mod order, zero before time 0.
uint16_t canonical_symbol(int k, uint32_t order, int time, int symbol);

}  // namespace streamrelay
