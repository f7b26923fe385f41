#include <random>

#include "doctest.h"
#include "json.hpp"
#include "json_io.hpp"

using namespace streamrelay;

TEST_CASE("pattern json round trip") {
    ErasurePattern pat;
    pat.horizon = 12;
    pat.erased = {0, 4, 5, 11};
    const ErasurePattern back = pattern_from_json(pattern_to_json(pat));
    CHECK(back.horizon == pat.horizon);
    CHECK(back.erased == pat.erased);
}

TEST_CASE("pattern json rejects malformed documents") {
    CHECK_THROWS_AS(pattern_from_json("{"), Error);
    CHECK_THROWS_AS(pattern_from_json("{\"H\": 4}"), Error);
    CHECK_THROWS_AS(pattern_from_json("{\"H\": 4, \"erased\": [9]}"), Error);
    CHECK_THROWS_AS(pattern_from_json("{\"H\": 4, \"erased\": [2, 1]}"), Error);
}

TEST_CASE("stream jsonl round trip on random streams") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        PacketStream s;
        s.width = 1 + static_cast<int>(rng() % 6);
        const int H = 1 + static_cast<int>(rng() % 10);
        for (int t = 0; t < H; ++t) {
            Packet p;
            p.erased = rng() % 3 == 0;
            for (int i = 0; i < s.width; ++i)
                p.slots.push_back(p.erased ? 0 : static_cast<uint16_t>(rng() & 0xFFFF));
            s.packets.push_back(std::move(p));
        }
        const PacketStream back = stream_from_jsonl(stream_to_jsonl(s));
        REQUIRE(back.width == s.width);
        REQUIRE(back.horizon() == s.horizon());
        for (int t = 0; t < H; ++t) {
            REQUIRE(back.packets[t].erased == s.packets[t].erased);
            REQUIRE(back.packets[t].slots == s.packets[t].slots);
        }
    }
}

TEST_CASE("stream jsonl validates contiguity and width") {
    CHECK_THROWS_AS(stream_from_jsonl("{\"t\":1,\"slots\":[1],\"erased\":false}\n"), Error);
    CHECK_THROWS_AS(stream_from_jsonl("{\"t\":0,\"slots\":[1],\"erased\":false}\n"
                                      "{\"t\":1,\"slots\":[1,2],\"erased\":false}\n"),
                    Error);
}

TEST_CASE("plan json carries the worked example") {
    const std::string text = plan_to_json(plan(RelayParams(1, 2, 1, 3, 8)));
    const auto j = nlohmann::ordered_json::parse(text);
    CHECK(j["k"] == 2);
    CHECK(j["bound"]["num"] == 2);
    CHECK(j["bound"]["den"] == 3);
    CHECK(j["cap1"]["num"] == 5);
    CHECK(j["cap1"]["den"] == 7);
    CHECK(j["regime"]["optimal"] == true);
    CHECK(j["profile"]["entries"][0] == nlohmann::ordered_json::array({4, 3}));
    CHECK(j["profile"]["entries"][1] == nlohmann::ordered_json::array({2, 6}));
}

TEST_CASE("plan json is byte-stable") {
    const std::string a = plan_to_json(plan(RelayParams(2, 2, 2, 4, 11)));
    const std::string b = plan_to_json(plan(RelayParams(2, 2, 2, 4, 11)));
    CHECK(a == b);
}

TEST_CASE("relay code json names both hops and the schedule") {
    const RelayCode code(Field::of(256), RelayParams(1, 2, 1, 3, 8));
    const auto j = nlohmann::ordered_json::parse(relay_code_to_json(code));
    CHECK(j["hop1"]["placement"] == nlohmann::ordered_json::array({0, 2, 4}));
    CHECK(j["hop2"]["placement"] == nlohmann::ordered_json::array({0, 3, 6}));
    CHECK(j["relay_schedule"][0]["source_symbol"] == 1);
    CHECK(j["relay_schedule"][0]["source_delay"] == 2);
    CHECK(j["hop1"]["parity"].size() == 1);
}

TEST_CASE("simulate json flags non-permissible inputs without failing") {
    const RelayCode code(Field::of(256), RelayParams(1, 2, 1, 3, 8));
    std::vector<std::vector<uint16_t>> msgs(10, std::vector<uint16_t>(2, 1));
    const ErasurePattern pat1 = ErasurePattern::burst(3, 4, 19);  // breaks the hop-1 contract
    ErasurePattern empty;
    const EndToEndRun run = run_end_to_end(code, msgs, pat1, empty);
    const auto j = nlohmann::ordered_json::parse(simulate_to_json(code, run, pat1, empty, false));
    CHECK(j["pattern1_permissible"] == false);
    CHECK(j["misses"].get<int>() > 0);
    CHECK(j["poisoned_slots"].get<int>() > 0);
    bool saw_poisoned = false;
    for (const auto& e : j["ledger"])
        if (e["poisoned"].get<bool>()) saw_poisoned = true;
    CHECK(saw_poisoned);
}

TEST_CASE("verify report json is loadable and self-consistent") {
    VerifyPlan plan{.params = RelayParams(1, 2, 1, 3, 8)};
    const VerifyReport report = verify_relay(plan);
    const auto j = nlohmann::ordered_json::parse(verify_report_to_json(report));
    CHECK(j["verdict"] == "OPTIMAL");
    CHECK(j["rate"] == j["bound"]);
    CHECK(j["hop_results"].size() == 2);
    CHECK(j["hop_results"][0]["patterns"].get<int>() == 63);
}
