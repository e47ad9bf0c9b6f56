#include <catch_amalgamated.hpp>

#include <filesystem>

#include "srmq/harness.hpp"
#include "srmq/io.hpp"
#include "srmq/properties.hpp"
#include "srmq/workload.hpp"

using namespace srmq;

namespace {
constexpr const char* kExample = "V 22 M V 23 M V 26 M V 28 M V 32 M V 27 M V 35 M Q 4 C 3";
}

TEST_CASE("answer digest is stable and order-sensitive", "[harness]") {
    AnswerDigest empty;
    CHECK(empty.value() == 0xcbf29ce484222325ull);

    AnswerDigest a, b;
    a.add(1);
    a.add(2);
    b.add(2);
    b.add(1);
    CHECK(a.value() != b.value());

    AnswerDigest c, d;
    c.add(27);
    d.add(27);
    CHECK(c.value() == d.value());
    d.add_failure();
    CHECK(c.value() != d.value());
}

TEST_CASE("every engine produces the same report on the example", "[harness]") {
    const auto commands = parse_stream(kExample);
    std::uint64_t digest = 0;
    for (const auto name : kEngineNames) {
        AnyEngine engine = make_engine(name);
        const RunResult r = run_engine(engine, commands);
        CHECK(r.report.engine == name);
        CHECK(r.report.commands == 16);
        CHECK(r.report.values == 7);
        CHECK(r.report.queries == 1);
        CHECK(r.answers == AnswerStream{27});
        if (digest == 0) digest = r.report.digest;
        CHECK(r.report.digest == digest);
    }
    CHECK_THROWS_AS(make_engine("nope"), error);
}

TEST_CASE("all configurations agree on random workloads", "[harness]") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto commands = corpus_stream(3, s, 500, 20000);
        const auto runs = run_all_engines(commands, 4);
        REQUIRE(runs.size() == 5);
        const VerifyReport report = compare_answers(commands, runs);
        REQUIRE(report.ok);
    }
}

TEST_CASE("a corrupted answer stream is caught", "[harness]") {
    const auto commands = generate({4000, 400, 6.0, 21});
    auto runs = run_all_engines(commands);
    REQUIRE(compare_answers(commands, runs).ok);

    auto& victim = runs[2].answers;
    REQUIRE(victim.size() > 10);
    *victim[10] += 1;
    const VerifyReport report = compare_answers(commands, runs);
    CHECK_FALSE(report.ok);
    REQUIRE(report.first_divergence);
    CHECK(report.first_divergence->query_ordinal == 10);
    CHECK(report.first_divergence->answers.size() == runs.size());

    runs[2].answers.resize(5);
    const VerifyReport truncated = compare_answers(commands, runs);
    CHECK_FALSE(truncated.ok);
    CHECK(truncated.first_divergence->query_ordinal == 5);
}

TEST_CASE("lenient runs record failing queries", "[harness]") {
    const auto commands = parse_stream("V 5 M C 1 Q 1 V 3 M Q 2");
    CompactEngine compact;
    CHECK_THROWS_AS(run_engine(compact, commands), error);

    CompactEngine again;
    const RunResult r = run_engine(again, commands, {true, true});
    CHECK(r.report.failures == 1);
    CHECK(r.answers == AnswerStream{std::nullopt, 3});

    VanillaEngine vanilla;
    const RunResult v = run_engine(vanilla, commands, {true, true});
    CHECK(v.report.failures == 0);
    CHECK(v.answers == AnswerStream{5, 3});
    CHECK(v.report.digest != r.report.digest);
}

TEST_CASE("an engine error is reported by name", "[harness]") {
    const auto commands = parse_stream("V 5 M C 1 Q 1");
    const auto runs = run_all_engines(commands);
    const VerifyReport report = compare_answers(commands, runs);
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.errors.empty());
}

TEST_CASE("streams written to disk round-trip, compressed or not", "[harness]") {
    const auto commands = generate({3000, 200, 4.0, 5});
    const std::string text = serialize(commands);
    const auto dir = std::filesystem::temp_directory_path();
    for (const char* name : {"srmq_rt.cmds", "srmq_rt.cmds.gz"}) {
        const auto path = (dir / name).string();
        write_text(path, text);
        CHECK(read_text(path) == text);
        AnyEngine engine = make_engine("realtime");
        const auto from_disk = run_engine(engine, parse_stream(read_text(path)));
        VanillaEngine vanilla;
        CHECK(from_disk.report.digest == run_engine(vanilla, commands).report.digest);
        std::filesystem::remove(path);
    }
    CHECK(is_gzip_path("a.gz"));
    CHECK_FALSE(is_gzip_path("a.txt"));
    CHECK_THROWS_AS(read_text((dir / "srmq_missing_file").string()), error);
}
