/* streamrelay - streaming erasure codes for the three-node decode-and-forward
 * relay under sliding-window burst/random erasures.
 *
 * C API over the C++ core. Conventions:
 *   - every function returns sr_status; SR_OK is 0
 *   - on failure, sr_last_error() describes the problem (thread-local)
 *   - objects are opaque handles released with the matching _destroy
 *   - strings returned through char** are owned by the caller and must be
 *     released with sr_string_free
 */
#ifndef STREAMRELAY_H
#define STREAMRELAY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SR_API __declspec(dllexport)
#else
#define SR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sr_status {
    SR_OK = 0,
    SR_ERR_INVALID_ARGUMENT = 1,
    SR_ERR_OUT_OF_RANGE = 2,
    SR_ERR_TOO_MANY_ERASURES = 3,
    SR_ERR_INCONSISTENT_WORD = 4,
    SR_ERR_DEGENERATE = 5,
    SR_ERR_CAP_EXCEEDED = 6,
    SR_ERR_PARSE = 7,
    SR_ERR_INTERNAL = 8
} sr_status;

SR_API const char* sr_version(void);
SR_API const char* sr_last_error(void);
SR_API void sr_string_free(char* s);

/* ---- finite field (orders 256 and 65536) ---- */

SR_API sr_status sr_gf_add(uint32_t order, uint32_t x, uint32_t y, uint32_t* out);
SR_API sr_status sr_gf_mul(uint32_t order, uint32_t x, uint32_t y, uint32_t* out);
SR_API sr_status sr_gf_inv(uint32_t order, uint32_t x, uint32_t* out);

/* ---- systematic [n,k] MDS erasure code ---- */

typedef struct sr_mds sr_mds;

SR_API sr_status sr_mds_create(uint32_t field_order, int n, int k, sr_mds** out);
SR_API void sr_mds_destroy(sr_mds* code);
SR_API sr_status sr_mds_encode(const sr_mds* code, const uint16_t* msg, size_t msg_len,
                               uint16_t* out, size_t out_len);
/* erased[i] nonzero marks position i erased; out_msg receives k symbols */
SR_API sr_status sr_mds_decode(const sr_mds* code, const uint16_t* symbols,
                               const uint8_t* erased, size_t len, uint16_t* out_msg,
                               size_t out_len);

/* ---- single-hop streaming code (staggered diagonal embedding) ---- */

typedef struct sr_sde sr_sde;

SR_API sr_status sr_sde_create(uint32_t field_order, int a, int b, int T, int k, sr_sde** out);
SR_API void sr_sde_destroy(sr_sde* code);
SR_API sr_status sr_sde_info(const sr_sde* code, int* n, int* span);
/* placement: n entries; delays: k entries */
SR_API sr_status sr_sde_placement(const sr_sde* code, int* out, size_t len);
SR_API sr_status sr_sde_delays(const sr_sde* code, int* out, size_t len);

/* ---- three-node relay code ---- */

typedef struct sr_relay sr_relay;

SR_API sr_status sr_relay_create(uint32_t field_order, int a1, int b1, int a2, int b2, int T,
                                 sr_relay** out);
SR_API void sr_relay_destroy(sr_relay* code);
SR_API sr_status sr_relay_info(const sr_relay* code, int* k, int* n1, int* n2);
/* t[j], tau[j]: per-symbol decoding delays on the two hops; k entries each */
SR_API sr_status sr_relay_delay_profile(const sr_relay* code, int* t, int* tau, size_t len);

/* ---- JSON surfaces (the CLI is a thin shell over these) ---- */

SR_API sr_status sr_plan_json(int a1, int b1, int a2, int b2, int T, char** out_json);
SR_API sr_status sr_construct_json(uint32_t field_order, int a1, int b1, int a2, int b2, int T,
                                   char** out_json);
SR_API sr_status sr_trace_json(uint32_t field_order, int a1, int b1, int a2, int b2, int T,
                               int t_start, int t_end, char** out_json);
/* pattern JSON: {"H": int, "erased": [ints]}; NULL means no erasures */
SR_API sr_status sr_simulate_json(uint32_t field_order, int a1, int b1, int a2, int b2, int T,
                                  const char* pattern1_json, const char* pattern2_json,
                                  int message_count, int include_streams, char** out_json);
/* mode: "exhaustive" | "joint" | "ge". out_pass: 1 when the run's verdict
 * gates green (exhaustive: OPTIMAL; joint/ge: zero in-contract misses). */
SR_API sr_status sr_verify_json(uint32_t field_order, int a1, int b1, int a2, int b2, int T,
                                const char* mode, uint64_t seed, int samples, int horizon,
                                int widen_b1, int widen_b2, int threads, char** out_json,
                                int* out_pass);
/* deterministic Gilbert-Elliott erasure pattern as pattern JSON */
SR_API sr_status sr_ge_pattern_json(double good_to_bad, double bad_to_good, double erase_good,
                                    double erase_bad, uint64_t seed, int horizon,
                                    char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* STREAMRELAY_H */
