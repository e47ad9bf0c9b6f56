#include <catch_amalgamated.hpp>

#include "srmq/oracle.hpp"

using namespace srmq;

namespace {

std::vector<Value> answers(std::string_view text) {
    OracleEngine e;
    std::vector<Value> out;
    for (const auto& cmd : parse_stream(text))
        if (auto a = e.apply(cmd)) out.push_back(*a);
    return out;
}

}  // namespace

TEST_CASE("oracle scans the suffix", "[oracle]") {
    CHECK(answers("V 22 M V 23 M V 26 M V 28 M V 32 M V 27 M V 35 M Q 4 C 3") == std::vector<Value>{27});
    CHECK(answers("V 7 M Q 1") == std::vector<Value>{7});
    CHECK(answers("V 3 M V 3 M Q 1") == std::vector<Value>{3});
    CHECK(answers("V 5 M V 9 M V 1 Q 2 Q 1") == std::vector<Value>{1, 1});
}

TEST_CASE("oracle rejects positions that are not open", "[oracle]") {
    const auto inactive = Catch::Matchers::Predicate<error>([](const error& e) { return e.kind() == ErrorKind::inactive_position; });
    CHECK_THROWS_MATCHES(answers("V 5 M C 1 Q 1"), error, inactive);
    CHECK_THROWS_MATCHES(answers("V 5 Q 1"), error, inactive);
    CHECK_THROWS_MATCHES(answers("V 5 M Q 2"), error, inactive);
    CHECK_THROWS_MATCHES(answers("V 5 M C 1 C 1"), error, inactive);
    CHECK_THROWS_AS(answers("M"), error);
}

TEST_CASE("oracle tracks the open count", "[oracle]") {
    OracleEngine e;
    for (const auto& cmd : parse_stream("V 1 M M V 2 M V 3 C 1")) e.apply(cmd);
    CHECK(e.active() == 1);
    CHECK(e.peak_active() == 2);
    CHECK(e.peak_capacity() == 3);
    CHECK(e.values() == std::vector<Value>{1, 2, 3});
}
