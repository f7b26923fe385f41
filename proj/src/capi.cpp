#include "streamrelay.h"

#include <cstring>
#include <string>

#include "json_io.hpp"

using namespace streamrelay;

namespace {

thread_local std::string g_last_error;

sr_status map_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument: return SR_ERR_INVALID_ARGUMENT;
        case ErrorCode::kOutOfRange: return SR_ERR_OUT_OF_RANGE;
        case ErrorCode::kTooManyErasures: return SR_ERR_TOO_MANY_ERASURES;
        case ErrorCode::kInconsistentWord: return SR_ERR_INCONSISTENT_WORD;
        case ErrorCode::kDegenerateParams: return SR_ERR_DEGENERATE;
        case ErrorCode::kCapExceeded: return SR_ERR_CAP_EXCEEDED;
        case ErrorCode::kParse: return SR_ERR_PARSE;
        case ErrorCode::kInternal: return SR_ERR_INTERNAL;
    }
    return SR_ERR_INTERNAL;
}

template <class Fn>
sr_status guarded(Fn&& fn) {
    try {
        fn();
        return SR_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SR_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

sr_status require(bool cond, const char* message) {
    if (cond) return SR_OK;
    g_last_error = message;
    return SR_ERR_INVALID_ARGUMENT;
}

VerifyMode parse_mode(const char* mode) {
    const std::string m = mode ? mode : "";
    if (m == "exhaustive") return VerifyMode::kExhaustive;
    if (m == "joint") return VerifyMode::kJoint;
    if (m == "ge") return VerifyMode::kGeSoak;
    fail(ErrorCode::kInvalidArgument, "verify: mode must be exhaustive, joint or ge");
}

}  // namespace

struct sr_mds {
    MdsCode code;
};
struct sr_sde {
    SdeCode code;
};
struct sr_relay {
    RelayCode code;
};

extern "C" {

const char* sr_version(void) { return "streamrelay 1.0.0"; }

const char* sr_last_error(void) { return g_last_error.c_str(); }

void sr_string_free(char* s) { delete[] s; }

sr_status sr_gf_add(uint32_t order, uint32_t x, uint32_t y, uint32_t* out) {
    if (sr_status st = require(out != nullptr, "gf: null output"); st != SR_OK) return st;
    return guarded([&] {
        if (x >= order || y >= order) fail(ErrorCode::kInvalidArgument, "gf: value outside field");
        *out = add(Elem{static_cast<uint16_t>(x), order}, Elem{static_cast<uint16_t>(y), order})
                   .value;
    });
}

sr_status sr_gf_mul(uint32_t order, uint32_t x, uint32_t y, uint32_t* out) {
    if (sr_status st = require(out != nullptr, "gf: null output"); st != SR_OK) return st;
    return guarded([&] {
        if (x >= order || y >= order) fail(ErrorCode::kInvalidArgument, "gf: value outside field");
        *out = mul(Elem{static_cast<uint16_t>(x), order}, Elem{static_cast<uint16_t>(y), order})
                   .value;
    });
}

sr_status sr_gf_inv(uint32_t order, uint32_t x, uint32_t* out) {
    if (sr_status st = require(out != nullptr, "gf: null output"); st != SR_OK) return st;
    return guarded([&] {
        if (x >= order) fail(ErrorCode::kInvalidArgument, "gf: value outside field");
        *out = inv(Elem{static_cast<uint16_t>(x), order}).value;
    });
}

sr_status sr_mds_create(uint32_t field_order, int n, int k, sr_mds** out) {
    if (sr_status st = require(out != nullptr, "mds: null output"); st != SR_OK) return st;
    *out = nullptr;
    return guarded([&] { *out = new sr_mds{MdsCode(Field::of(field_order), n, k)}; });
}

void sr_mds_destroy(sr_mds* code) { delete code; }

sr_status sr_mds_encode(const sr_mds* code, const uint16_t* msg, size_t msg_len, uint16_t* out,
                        size_t out_len) {
    if (sr_status st = require(code && msg && out, "mds: null argument"); st != SR_OK) return st;
    return guarded([&] {
        if (msg_len != static_cast<size_t>(code->code.k()) ||
            out_len != static_cast<size_t>(code->code.n()))
            fail(ErrorCode::kInvalidArgument, "mds: buffer lengths must be k and n");
        code->code.encode_into({msg, msg_len}, {out, out_len});
    });
}

sr_status sr_mds_decode(const sr_mds* code, const uint16_t* symbols, const uint8_t* erased,
                        size_t len, uint16_t* out_msg, size_t out_len) {
    if (sr_status st = require(code && symbols && erased && out_msg, "mds: null argument");
        st != SR_OK)
        return st;
    return guarded([&] {
        if (len != static_cast<size_t>(code->code.n()) ||
            out_len != static_cast<size_t>(code->code.k()))
            fail(ErrorCode::kInvalidArgument, "mds: buffer lengths must be n and k");
        ErasedWord word;
        word.symbols.assign(symbols, symbols + len);
        word.erased.assign(erased, erased + len);
        const std::vector<uint16_t> msg = code->code.decode_erasures(word);
        std::memcpy(out_msg, msg.data(), msg.size() * sizeof(uint16_t));
    });
}

sr_status sr_sde_create(uint32_t field_order, int a, int b, int T, int k, sr_sde** out) {
    if (sr_status st = require(out != nullptr, "sde: null output"); st != SR_OK) return st;
    *out = nullptr;
    return guarded([&] { *out = new sr_sde{SdeCode(Field::of(field_order), a, b, T, k)}; });
}

void sr_sde_destroy(sr_sde* code) { delete code; }

sr_status sr_sde_info(const sr_sde* code, int* n, int* span) {
    if (sr_status st = require(code != nullptr, "sde: null handle"); st != SR_OK) return st;
    if (n) *n = code->code.n();
    if (span) *span = code->code.span();
    return SR_OK;
}

sr_status sr_sde_placement(const sr_sde* code, int* out, size_t len) {
    if (sr_status st = require(code && out, "sde: null argument"); st != SR_OK) return st;
    return guarded([&] {
        const auto& s = code->code.placement();
        if (len != s.size()) fail(ErrorCode::kInvalidArgument, "sde: placement buffer must be n");
        std::memcpy(out, s.data(), s.size() * sizeof(int));
    });
}

sr_status sr_sde_delays(const sr_sde* code, int* out, size_t len) {
    if (sr_status st = require(code && out, "sde: null argument"); st != SR_OK) return st;
    return guarded([&] {
        const auto& d = code->code.delays();
        if (len != d.size()) fail(ErrorCode::kInvalidArgument, "sde: delay buffer must be k");
        std::memcpy(out, d.data(), d.size() * sizeof(int));
    });
}

sr_status sr_relay_create(uint32_t field_order, int a1, int b1, int a2, int b2, int T,
                          sr_relay** out) {
    if (sr_status st = require(out != nullptr, "relay: null output"); st != SR_OK) return st;
    *out = nullptr;
    return guarded([&] {
        *out = new sr_relay{RelayCode(Field::of(field_order), RelayParams(a1, b1, a2, b2, T))};
    });
}

void sr_relay_destroy(sr_relay* code) { delete code; }

sr_status sr_relay_info(const sr_relay* code, int* k, int* n1, int* n2) {
    if (sr_status st = require(code != nullptr, "relay: null handle"); st != SR_OK) return st;
    if (k) *k = code->code.k();
    if (n1) *n1 = code->code.n1();
    if (n2) *n2 = code->code.n2();
    return SR_OK;
}

sr_status sr_relay_delay_profile(const sr_relay* code, int* t, int* tau, size_t len) {
    if (sr_status st = require(code && t && tau, "relay: null argument"); st != SR_OK) return st;
    return guarded([&] {
        const DelayProfile& d = code->code.profile();
        if (len != d.entries.size())
            fail(ErrorCode::kInvalidArgument, "relay: profile buffers must be k");
        for (size_t j = 0; j < len; ++j) {
            t[j] = d.entries[j].first;
            tau[j] = d.entries[j].second;
        }
    });
}

sr_status sr_plan_json(int a1, int b1, int a2, int b2, int T, char** out_json) {
    if (sr_status st = require(out_json != nullptr, "plan: null output"); st != SR_OK) return st;
    *out_json = nullptr;
    return guarded([&] {
        const RateReport report = plan(RelayParams(a1, b1, a2, b2, T));
        *out_json = dup_string(plan_to_json(report));
    });
}

sr_status sr_construct_json(uint32_t field_order, int a1, int b1, int a2, int b2, int T,
                            char** out_json) {
    if (sr_status st = require(out_json != nullptr, "construct: null output"); st != SR_OK)
        return st;
    *out_json = nullptr;
    return guarded([&] {
        const RelayCode code(Field::of(field_order), RelayParams(a1, b1, a2, b2, T));
        *out_json = dup_string(relay_code_to_json(code));
    });
}

sr_status sr_trace_json(uint32_t field_order, int a1, int b1, int a2, int b2, int T, int t_start,
                        int t_end, char** out_json) {
    if (sr_status st = require(out_json != nullptr, "trace: null output"); st != SR_OK) return st;
    *out_json = nullptr;
    return guarded([&] {
        const RelayCode code(Field::of(field_order), RelayParams(a1, b1, a2, b2, T));
        *out_json = dup_string(trace_to_json(code, t_start, t_end));
    });
}

sr_status sr_simulate_json(uint32_t field_order, int a1, int b1, int a2, int b2, int T,
                           const char* pattern1_json, const char* pattern2_json, int message_count,
                           int include_streams, char** out_json) {
    if (sr_status st = require(out_json != nullptr, "simulate: null output"); st != SR_OK)
        return st;
    *out_json = nullptr;
    return guarded([&] {
        const RelayCode code(Field::of(field_order), RelayParams(a1, b1, a2, b2, T));
        ErasurePattern pat1, pat2;
        if (pattern1_json) pat1 = pattern_from_json(pattern1_json);
        if (pattern2_json) pat2 = pattern_from_json(pattern2_json);
        if (message_count <= 0)
            message_count = std::max({8, pat1.horizon, pat2.horizon});
        std::vector<std::vector<uint16_t>> msgs(message_count,
                                                std::vector<uint16_t>(code.k()));
        for (int i = 0; i < message_count; ++i)
            for (int j = 0; j < code.k(); ++j)
                msgs[i][j] = canonical_symbol(code.k(), field_order, i, j);
        const EndToEndRun run = run_end_to_end(code, msgs, pat1, pat2);
        *out_json = dup_string(simulate_to_json(code, run, pat1, pat2, include_streams != 0));
    });
}

sr_status sr_verify_json(uint32_t field_order, int a1, int b1, int a2, int b2, int T,
                         const char* mode, uint64_t seed, int samples, int horizon, int widen_b1,
                         int widen_b2, int threads, char** out_json, int* out_pass) {
    if (sr_status st = require(out_json != nullptr, "verify: null output"); st != SR_OK) return st;
    *out_json = nullptr;
    return guarded([&] {
        VerifyPlan vp{.params = RelayParams(a1, b1, a2, b2, T)};
        vp.field_order = field_order;
        vp.mode = parse_mode(mode);
        vp.seed = seed;
        if (samples > 0) vp.samples = samples;
        vp.horizon1 = horizon;
        vp.horizon2 = horizon;
        vp.widen_b1 = widen_b1;
        vp.widen_b2 = widen_b2;
        vp.threads = threads;
        const VerifyReport report = verify_relay(vp);
        *out_json = dup_string(verify_report_to_json(report));
        if (out_pass) *out_pass = report.pass ? 1 : 0;
    });
}

sr_status sr_ge_pattern_json(double good_to_bad, double bad_to_good, double erase_good,
                             double erase_bad, uint64_t seed, int horizon, char** out_json) {
    if (sr_status st = require(out_json != nullptr, "ge: null output"); st != SR_OK) return st;
    *out_json = nullptr;
    return guarded([&] {
        const GilbertElliott ge{good_to_bad, bad_to_good, erase_good, erase_bad, seed};
        *out_json = dup_string(pattern_to_json(sample_ge(ge, horizon)));
    });
}

}  // extern "C"
