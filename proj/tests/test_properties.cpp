#include <catch_amalgamated.hpp>

#include <iostream>

#include "srmq/properties.hpp"

using namespace srmq;

TEST_CASE("every invariant holds over the random corpus", "[properties]") {
    const PropertySummary summary = run_properties(400, 1, 100, 10'000);
    for (const auto& c : summary.cases) {
        INFO(c.definition.name << ": " << c.first_failure);
        CHECK(c.failures == 0);
        CHECK(c.checks > 0);
    }
    CHECK(summary.ok());
    CHECK(summary.streams == 400);
}

TEST_CASE("the case list names every invariant", "[properties]") {
    const auto cases = property_cases();
    REQUIRE(cases.size() == kPropertyCount);
    for (const auto& c : cases) {
        CHECK_FALSE(c.name.empty());
        CHECK_FALSE(c.invariant.empty());
        CHECK_FALSE(c.assertion.empty());
    }
}

TEST_CASE("monotone streams are the stack extremes", "[properties]") {
    std::vector<Command> increasing, decreasing;
    for (Value v = 1; v <= 2000; ++v) {
        increasing.push_back(Command::value(v));
        increasing.push_back(Command::mark());
        decreasing.push_back(Command::value(3000 - v));
        decreasing.push_back(Command::mark());
        if (v % 3 == 0) {
            increasing.push_back(Command::query(v / 2));
            decreasing.push_back(Command::query(v / 2));
        }
    }
    PropertySummary summary;
    check_stream(increasing, summary, 0);
    check_stream(decreasing, summary, 1);
    CHECK(summary.ok());
}

TEST_CASE("an invalid stream is reported, not replayed", "[properties]") {
    PropertySummary summary;
    check_stream(parse_stream("V 1 M C 1 Q 1"), summary, 0);
    CHECK_FALSE(summary.ok());
    CHECK(summary.cases[kOracleAgreement].failures == 1);
}

TEST_CASE("mixed streams are valid and tie-heavy", "[properties]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        MixedStreamSpec spec;
        spec.n = 2000;
        spec.value_range = 4;
        spec.seed = seed;
        REQUIRE(validate(generate_mixed(spec)).ok);
    }
}
