#include "json_io.hpp"

#include <sstream>

#include "json.hpp"

namespace streamrelay {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json rational_json(const Rational& r) {
    return ordered_json{{"num", r.num}, {"den", r.den}};
}

ordered_json opt_rational_json(const std::optional<Rational>& r) {
    if (!r) return nullptr;
    return rational_json(*r);
}

ordered_json params_json(const RelayParams& p) {
    ordered_json j;
    j["a1"] = p.a1;
    j["b1"] = p.b1;
    j["a2"] = p.a2;
    j["b2"] = p.b2;
    j["T"] = p.T;
    j["a"] = p.a();
    j["bp1"] = p.bp1();
    j["bp2"] = p.bp2();
    j["alpha"] = p.alpha();
    j["T1"] = p.hop1_delay();
    j["T2"] = p.hop2_delay();
    j["w1"] = p.hop1_delay() + 1;
    j["w2"] = p.hop2_delay() + 1;
    return j;
}

ordered_json pattern_json(const ErasurePattern& pat) {
    return ordered_json{{"H", pat.horizon}, {"erased", pat.erased}};
}

ordered_json profile_json(const DelayProfile& d) {
    ordered_json entries = ordered_json::array();
    for (const auto& [t, tau] : d.entries) entries.push_back({t, tau});
    return ordered_json{
        {"entries", entries}, {"max_sum", d.max_sum}, {"feasible", d.feasible}};
}

ordered_json plan_json_obj(const RateReport& r) {
    ordered_json j;
    j["params"] = params_json(r.params);
    j["cap1"] = opt_rational_json(r.cap1);
    j["cap2"] = opt_rational_json(r.cap2);
    j["bound"] = opt_rational_json(r.bound);
    j["k_exact"] = rational_json(r.k_exact);
    j["k"] = r.k;
    j["k_max1"] = r.k_max1;
    j["k_max2"] = r.k_max2;
    j["n1"] = r.constructible ? r.k + r.params.a() : 0;
    j["n2"] = r.constructible ? r.k + r.params.a() : 0;
    j["regime"] = {{"divisibility", r.regime.divisibility},
                   {"symmetry", r.regime.symmetry},
                   {"optimal", r.regime.optimal()}};
    j["degenerate"] = r.degenerate;
    j["constructible"] = r.constructible;
    j["rate"] = opt_rational_json(r.rate);
    j["optimal"] = r.optimal;
    j["profile"] = r.profile ? profile_json(*r.profile) : ordered_json(nullptr);
    return j;
}

ordered_json sde_json(const SdeCode& code) {
    const SdeLayout& l = code.layout();
    ordered_json j;
    j["a"] = l.a;
    j["b"] = l.b;
    j["T"] = l.T;
    j["k"] = l.k;
    j["n"] = l.n;
    j["span"] = l.span;
    j["placement"] = l.placement;
    j["delays"] = l.delays;
    ordered_json parity = ordered_json::array();
    for (int r = 0; r < l.n - l.k; ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < l.k; ++c) row.push_back(code.base().parity_coeff(r, c));
        parity.push_back(row);
    }
    j["parity"] = parity;
    return j;
}

ordered_json columns_json(const std::vector<TraceColumn>& cols) {
    ordered_json arr = ordered_json::array();
    for (const TraceColumn& c : cols)
        arr.push_back({{"t", c.t}, {"labels", c.labels}, {"values", c.values}});
    return arr;
}

ordered_json stream_packet_json(const Packet& p, int t) {
    return ordered_json{{"t", t}, {"slots", p.slots}, {"erased", p.erased}};
}

ordered_json stream_json_array(const PacketStream& s) {
    ordered_json arr = ordered_json::array();
    for (int t = 0; t < s.horizon(); ++t) arr.push_back(stream_packet_json(s.packets[t], t));
    return arr;
}

ordered_json parse(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::kParse, "json: malformed document");
    return j;
}

}  // namespace

std::string pattern_to_json(const ErasurePattern& pat) {
    return pattern_json(pat).dump();
}

ErasurePattern pattern_from_json(const std::string& text) {
    const ordered_json j = parse(text);
    if (!j.is_object() || !j.contains("H") || !j.contains("erased") ||
        !j["H"].is_number_integer() || !j["erased"].is_array())
        fail(ErrorCode::kParse, "pattern: expected {\"H\": int, \"erased\": [ints]}");
    ErasurePattern pat;
    pat.horizon = j["H"].get<int>();
    for (const auto& e : j["erased"]) {
        if (!e.is_number_integer()) fail(ErrorCode::kParse, "pattern: erased entries must be ints");
        pat.erased.push_back(e.get<int>());
    }
    validate_pattern(pat);
    return pat;
}

std::string stream_to_jsonl(const PacketStream& stream) {
    std::ostringstream out;
    for (int t = 0; t < stream.horizon(); ++t)
        out << stream_packet_json(stream.packets[t], t).dump() << '\n';
    return out.str();
}

PacketStream stream_from_jsonl(const std::string& text) {
    PacketStream stream;
    std::istringstream in(text);
    std::string line;
    int expected_t = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const ordered_json j = parse(line);
        if (!j.contains("t") || !j.contains("slots") || !j.contains("erased") ||
            !j["t"].is_number_integer() || !j["slots"].is_array() || !j["erased"].is_boolean())
            fail(ErrorCode::kParse, "stream: each line needs t:int, slots:[ints], erased:bool");
        if (j["t"].get<int>() != expected_t)
            fail(ErrorCode::kParse, "stream: time steps must be contiguous from 0");
        Packet p;
        p.erased = j["erased"].get<bool>();
        for (const auto& v : j["slots"]) {
            if (!v.is_number_unsigned() || v.get<uint64_t>() > 0xFFFF)
                fail(ErrorCode::kParse, "stream: slot values must be symbols in [0, 65535]");
            p.slots.push_back(v.get<uint16_t>());
        }
        if (stream.packets.empty()) {
            stream.width = static_cast<int>(p.slots.size());
        } else if (static_cast<int>(p.slots.size()) != stream.width) {
            fail(ErrorCode::kParse, "stream: packets must share one width");
        }
        stream.packets.push_back(std::move(p));
        ++expected_t;
    }
    return stream;
}

std::string plan_to_json(const RateReport& report) {
    return plan_json_obj(report).dump(2) + "\n";
}

std::string relay_code_to_json(const RelayCode& code) {
    ordered_json j;
    j["params"] = params_json(code.params());
    j["field"] = code.hop1().field().order();
    j["k"] = code.k();
    j["n1"] = code.n1();
    j["n2"] = code.n2();
    j["rate"] = rational_json(code.rate());
    j["hop1"] = sde_json(code.hop1());
    j["hop2"] = sde_json(code.hop2());
    j["profile"] = profile_json(code.profile());
    ordered_json sched = ordered_json::array();
    for (int slot = 0; slot < code.k(); ++slot)
        sched.push_back({{"slot", slot},
                         {"source_symbol", code.schedule_symbol(slot)},
                         {"source_delay", code.schedule_delay(slot)}});
    j["relay_schedule"] = sched;
    return j.dump(2) + "\n";
}

std::string trace_to_json(const RelayCode& code, int t_begin, int t_end) {
    ordered_json j;
    j["params"] = params_json(code.params());
    j["from"] = t_begin;
    j["to"] = t_end;
    j["s"] = columns_json(trace_node(code, TraceNode::kSource, t_begin, t_end));
    j["r"] = columns_json(trace_node(code, TraceNode::kRelay, t_begin, t_end));
    j["d"] = columns_json(trace_node(code, TraceNode::kDestination, t_begin, t_end));
    return j.dump(2) + "\n";
}

std::string simulate_to_json(const RelayCode& code, const EndToEndRun& run,
                             const ErasurePattern& pat1, const ErasurePattern& pat2,
                             bool include_streams) {
    const EndToEndLedger& led = run.ledger;
    ordered_json j;
    j["params"] = params_json(code.params());
    j["pattern1"] = pattern_json(pat1);
    j["pattern2"] = pattern_json(pat2);
    const DcswChannel ch1(code.params().a1, code.params().b1, code.params().hop1_delay());
    const DcswChannel ch2(code.params().a2, code.params().b2, code.params().hop2_delay());
    j["pattern1_permissible"] = is_permissible(ch1, pat1);
    j["pattern2_permissible"] = is_permissible(ch2, pat2);
    j["message_count"] = led.message_count;
    j["k"] = led.k;
    j["T"] = led.T;
    ordered_json entries = ordered_json::array();
    for (int i = 0; i < led.message_count; ++i) {
        for (int jj = 0; jj < led.k; ++jj) {
            ordered_json e;
            e["i"] = i;
            e["j"] = jj;
            const int at = led.at(i, jj);
            e["recovered_at"] = at == EndToEndLedger::kUnrecovered ? ordered_json(nullptr)
                                                                   : ordered_json(at);
            e["delay"] = at == EndToEndLedger::kUnrecovered ? ordered_json(nullptr)
                                                            : ordered_json(at - i);
            e["slack"] = at == EndToEndLedger::kUnrecovered ? ordered_json(nullptr)
                                                            : ordered_json(led.T - (at - i));
            e["poisoned"] = led.is_poisoned(i, jj);
            entries.push_back(std::move(e));
        }
    }
    j["ledger"] = entries;
    j["misses"] = led.miss_count();
    j["poisoned_slots"] = run.poisoned_slots;
    if (include_streams) {
        j["streams"] = {{"hop1_sent", stream_json_array(run.hop1_sent)},
                        {"hop1_received", stream_json_array(run.hop1_received)},
                        {"hop2_sent", stream_json_array(run.hop2_sent)},
                        {"hop2_received", stream_json_array(run.hop2_received)}};
    }
    return j.dump(2) + "\n";
}

std::string verify_report_to_json(const VerifyReport& report) {
    ordered_json j;
    j["plan"] = plan_json_obj(report.planned);
    j["field"] = report.field_order;
    j["mode"] = to_string(report.mode);
    j["seed"] = report.seed;
    j["samples"] = report.samples;
    j["widen_b1"] = report.widen_b1;
    j["widen_b2"] = report.widen_b2;
    j["rate"] = opt_rational_json(report.planned.rate);
    j["bound"] = opt_rational_json(report.planned.bound);

    ordered_json hops = ordered_json::array();
    for (const HopVerifyResult& h : report.hops) {
        ordered_json hj;
        hj["hop"] = h.hop;
        hj["channel"] = {{"a", h.channel.a}, {"b", h.channel.b}, {"T", h.channel.T},
                         {"w", h.channel.window()}};
        hj["horizon"] = h.horizon;
        hj["patterns"] = h.patterns;
        hj["misses"] = h.misses;
        ordered_json wits = ordered_json::array();
        for (const HopWitness& w : h.witnesses) {
            wits.push_back({{"pattern", pattern_json(w.pattern)},
                            {"msg_time", w.msg_time},
                            {"symbol", w.symbol},
                            {"deadline", w.deadline},
                            {"recovered_at", w.recovered_at == RecoveredStream::kUnrecovered
                                                 ? ordered_json(nullptr)
                                                 : ordered_json(w.recovered_at)}});
        }
        hj["witnesses"] = wits;
        hops.push_back(std::move(hj));
    }
    j["hop_results"] = hops;

    if (report.joint) {
        const JointResult& joint = *report.joint;
        ordered_json wits = ordered_json::array();
        for (const JointWitness& w : joint.witnesses) {
            wits.push_back({{"pattern1", pattern_json(w.pat1)},
                            {"pattern2", pattern_json(w.pat2)},
                            {"msg_time", w.msg_time},
                            {"symbol", w.symbol},
                            {"deadline", w.deadline},
                            {"recovered_at", w.recovered_at == EndToEndLedger::kUnrecovered
                                                 ? ordered_json(nullptr)
                                                 : ordered_json(w.recovered_at)},
                            {"poisoned", w.poisoned}});
        }
        j["joint"] = {{"horizon", joint.horizon},
                      {"pairs", joint.pairs},
                      {"witness_pairs", joint.witness_pairs},
                      {"misses", joint.misses},
                      {"witnesses", wits}};
    }
    if (report.ge) {
        const GeSoakResult& ge = *report.ge;
        j["ge"] = {{"good_to_bad", ge.config.good_to_bad},
                   {"bad_to_good", ge.config.bad_to_good},
                   {"erase_good", ge.config.erase_good},
                   {"erase_bad", ge.config.erase_bad},
                   {"horizon", ge.horizon},
                   {"samples", ge.samples},
                   {"pat1_permissible", ge.pat1_permissible},
                   {"pat2_permissible", ge.pat2_permissible},
                   {"both_permissible", ge.both_permissible},
                   {"erased_slots_hop1", ge.erased_slots_hop1},
                   {"erased_slots_hop2", ge.erased_slots_hop2},
                   {"in_contract_misses", ge.in_contract_misses},
                   {"out_of_contract_misses", ge.out_of_contract_misses},
                   {"poisoned_slots", ge.poisoned_slots}};
    }
    j["verdict"] = to_string(report.verdict);
    j["pass"] = report.pass;
    return j.dump(2) + "\n";
}

}  // namespace streamrelay
