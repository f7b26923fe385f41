#include "trace.hpp"

namespace streamrelay {

namespace {

std::string sym_label(int time, int symbol) {
    return "m[" + std::to_string(time) + "][" + std::to_string(symbol) + "]";
}

std::string join_or_zero(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string out = terms[0];
    for (size_t i = 1; i < terms.size(); ++i) out += "+" + terms[i];
    return out;
}

}  // namespace

std::vector<TraceColumn> trace_node(const RelayCode& code, TraceNode node, int t_begin, int t_end) {
    if (t_begin < 0 || t_end < t_begin)
        fail(ErrorCode::kInvalidArgument, "trace: need 0 <= t_begin <= t_end");
    const int k = code.k();
    const SdeLayout& l1 = code.hop1().layout();
    const SdeLayout& l2 = code.hop2().layout();

    // numeric values come from the real pipeline under the canonical fill
    std::vector<std::vector<uint16_t>> msgs(t_end + 1, std::vector<uint16_t>(k));
    for (int i = 0; i <= t_end; ++i)
        for (int j = 0; j < k; ++j) msgs[i][j] = canonical_symbol(k, code.hop1().field().order(), i, j);
    ErasurePattern empty;
    empty.horizon = 0;
    const EndToEndRun run = run_end_to_end(code, msgs, empty, empty);

    std::vector<TraceColumn> out;
    out.reserve(t_end - t_begin + 1);
    for (int t = t_begin; t <= t_end; ++t) {
        TraceColumn col;
        col.t = t;
        switch (node) {
            case TraceNode::kSource: {
                for (int j = 0; j < k; ++j) col.labels.push_back(sym_label(t, j));
                for (int r = k; r < l1.n; ++r) {
                    const int s = t - l1.placement[r];
                    std::vector<std::string> terms;
                    for (int j = 0; j < k; ++j) {
                        const int u = s + l1.placement[j];
                        if (u >= 0) terms.push_back(sym_label(u, j));
                    }
                    col.labels.push_back(join_or_zero(terms));
                }
                col.values = run.hop1_sent.packets[t].slots;
                break;
            }
            case TraceNode::kRelay: {
                for (int slot = 0; slot < k; ++slot) {
                    const int v = t - code.schedule_delay(slot);
                    const int j = code.schedule_symbol(slot);
                    col.labels.push_back(v >= 0 ? sym_label(v, j) : "0");
                }
                for (int r = k; r < l2.n; ++r) {
                    const int s = t - l2.placement[r];
                    std::vector<std::string> terms;
                    for (int slot = 0; slot < k; ++slot) {
                        const int relay_time = s + l2.placement[slot];
                        const int v = relay_time - code.schedule_delay(slot);
                        if (v >= 0) terms.push_back(sym_label(v, code.schedule_symbol(slot)));
                    }
                    col.labels.push_back(join_or_zero(terms));
                }
                col.values = run.hop2_sent.packets[t].slots;
                break;
            }
            case TraceNode::kDestination: {
                // worst-case completion: relay slot `slot` content scheduled
                // through hop-2 delay tau'_slot finishes exactly now
                for (int slot = 0; slot < k; ++slot) {
                    const int relay_time = t - l2.delays[slot];
                    const int v = relay_time - code.schedule_delay(slot);
                    const int j = code.schedule_symbol(slot);
                    col.labels.push_back(v >= 0 ? sym_label(v, j) : "0");
                    col.values.push_back(canonical_symbol(k, code.hop1().field().order(), v, j));
                }
                break;
            }
        }
        out.push_back(std::move(col));
    }
    return out;
}

}  // namespace streamrelay
