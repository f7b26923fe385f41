#pragma once

#include <string>
#include <vector>

#include "relay.hpp"

namespace streamrelay {

// Per-time-step slot contents of one node as symbolic labels ("m[6][0]",
// parity sums joined with '+') plus numeric symbol values under the canonical
// message fill m_i(j) = (i*k + j + 1) mod field order. Zero-based time and
// symbol indices throughout.
struct TraceColumn {
    int t = 0;
    std::vector<std::string> labels;
    std::vector<uint16_t> values;
};

enum class TraceNode { kSource, kRelay, kDestination };

std::vector<TraceColumn> trace_node(const RelayCode& code, TraceNode node, int t_begin, int t_end);

}  // namespace streamrelay
