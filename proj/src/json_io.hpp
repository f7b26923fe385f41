#pragma once

#include <string>

#include "trace.hpp"
#include "verify.hpp"

namespace streamrelay {

// External formats. Every document is nlohmann ordered JSON so dumps are
// byte-stable for a given input; reports carry no wall-clock or host state.

std::string pattern_to_json(const ErasurePattern& pat);         // {"H":..,"erased":[..]}
ErasurePattern pattern_from_json(const std::string& text);

std::string stream_to_jsonl(const PacketStream& stream);        // {"t":..,"slots":[..],"erased":..} per line
PacketStream stream_from_jsonl(const std::string& text);

std::string plan_to_json(const RateReport& report);
std::string relay_code_to_json(const RelayCode& code);

// {"s":[columns],"r":[..],"d":[..]} for the requested window
std::string trace_to_json(const RelayCode& code, int t_begin, int t_end);

std::string simulate_to_json(const RelayCode& code, const EndToEndRun& run,
                             const ErasurePattern& pat1, const ErasurePattern& pat2,
                             bool include_streams);

std::string verify_report_to_json(const VerifyReport& report);

}  // namespace streamrelay
