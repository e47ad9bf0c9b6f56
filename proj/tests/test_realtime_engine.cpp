#include <catch_amalgamated.hpp>

#include "srmq/oracle.hpp"
#include "srmq/properties.hpp"
#include "srmq/realtime_engine.hpp"
#include "srmq/vanilla_engine.hpp"

using namespace srmq;

namespace {

constexpr const char* kExample = "V 22 M V 23 M V 26 M V 28 M V 32 M V 27 M V 35 M Q 4 C 3";
using Slot = RealtimeEngine::Slot;

std::vector<Value> feed(RealtimeEngine& engine, std::string_view text) {
    std::vector<Value> out;
    for (const auto& cmd : parse_stream(text))
        if (auto a = engine.apply(cmd)) out.push_back(*a);
    return out;
}

std::vector<Slot> slots(const RealtimeEngine& e) { return {e.stack().begin(), e.stack().end()}; }

}  // namespace

TEST_CASE("realtime slots carry the smallest merged position", "[realtime]") {
    for (const auto mode : {SearchMode::binary, SearchMode::exponential}) {
        RealtimeEngine e(mode);
        CHECK(feed(e, kExample) == std::vector<Value>{27});
        CHECK(slots(e) == std::vector<Slot>{{kMinusInfinity, 0}, {22, 1}, {23, 2}, {26, 3}, {27, 4}, {35, 7}});
        CHECK(e.query(4) == 27);
        CHECK(e.query(6) == 27);
        // Position 3 is closed but still represents its slot.
        CHECK(e.slot_value_at(3) == 26);
        CHECK_THROWS_AS(e.query(3), error);

        feed(e, "V 10");
        CHECK(slots(e) == std::vector<Slot>{{kMinusInfinity, 0}, {10, 1}});
        feed(e, "M");
        CHECK(e.query(8) == 10);
        CHECK(e.query(1) == 10);
    }
}

TEST_CASE("an unmarked first value leaves the slot without a position until marked", "[realtime]") {
    RealtimeEngine e;
    feed(e, "V 9 V 4");
    CHECK(slots(e) == std::vector<Slot>{{kMinusInfinity, 0}, {4, 0}});
    feed(e, "M V 7 M V 2");
    CHECK(slots(e) == std::vector<Slot>{{kMinusInfinity, 0}, {2, 2}});
    feed(e, "M Q 2 Q 3 Q 4");
    CHECK(e.query(2) == 2);
    CHECK(e.query(4) == 2);
}

TEST_CASE("realtime transfer keeps answers and smallest live representatives", "[realtime]") {
    RealtimeEngine e(SearchMode::binary, 1024);
    feed(e, kExample);
    feed(e, "C 4");
    CHECK(e.transfer() == 10);
    CHECK(slots(e) == std::vector<Slot>{{kMinusInfinity, 0}, {22, 1}, {23, 2}, {27, 5}, {35, 7}});
    CHECK(e.query(5) == 27);
    CHECK(e.active_answers() == std::vector<std::pair<Position, Value>>{{1, 22}, {2, 23}, {5, 27}, {6, 27}, {7, 35}});
}

TEST_CASE("realtime rejects inactive positions", "[realtime]") {
    RealtimeEngine e;
    feed(e, "V 5 M C 1");
    CHECK_THROWS_AS(e.query(1), error);
    CHECK_THROWS_AS(e.close(1), error);
    RealtimeEngine fresh;
    CHECK_THROWS_AS(fresh.mark(), error);
}

TEST_CASE("binary and exponential search agree with the oracle", "[realtime][property]") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto stream = corpus_stream(17, s, 100, 5000);
        RealtimeEngine bin(SearchMode::binary, 1 + s % 9);
        RealtimeEngine exp(SearchMode::exponential, 1 + s % 9);
        OracleEngine oracle;
        VanillaEngine vanilla;
        for (const auto& cmd : stream) {
            const auto expected = oracle.apply(cmd);
            REQUIRE(bin.apply(cmd) == expected);
            REQUIRE(exp.apply(cmd) == expected);
            vanilla.apply(cmd);
            REQUIRE(bin.stack().size() == exp.stack().size());
            REQUIRE(bin.stack().back().value == exp.stack().back().value);
            // Predecessor search lands on the level vanilla's Find reports.
            if (cmd.tag == CommandTag::query) REQUIRE(bin.slot_value_at(cmd.arg) == vanilla.query(cmd.arg));
        }
    }
}

TEST_CASE("exponential search handles deep stacks", "[realtime]") {
    RealtimeEngine e(SearchMode::exponential);
    for (Value v = 1; v <= 1000; ++v) {
        e.value(v);
        e.mark();
    }
    CHECK(e.stack().size() == 1001);
    for (Position i = 1; i <= 1000; i += 37) CHECK(e.query(i) == i);
    e.value(500);
    CHECK(e.stack().size() == 501);
    CHECK(e.query(999) == 500);
    CHECK(e.query(499) == 499);
    e.value(0);
    CHECK(e.stack().size() == 2);
    CHECK(e.query(1) == 0);
}
