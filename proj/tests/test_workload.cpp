#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "srmq/command.hpp"
#include "srmq/workload.hpp"

using namespace srmq;

namespace {

struct Counts {
    std::size_t values = 0, marks = 0, queries = 0, closes = 0;
};

Counts count(const std::vector<Command>& cs) {
    Counts c;
    for (const auto& cmd : cs) {
        switch (cmd.tag) {
            case CommandTag::value: ++c.values; break;
            case CommandTag::mark: ++c.marks; break;
            case CommandTag::query: ++c.queries; break;
            case CommandTag::close: ++c.closes; break;
        }
    }
    return c;
}

// Every Q p must come right after the V at p + l - 1, followed by C p.
void check_spacing(const std::vector<Command>& cs, std::uint64_t l) {
    Position j = 0;
    std::map<Position, Position> marked_at;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const auto& cmd = cs[k];
        if (cmd.tag == CommandTag::value) ++j;
        if (cmd.tag == CommandTag::mark) marked_at[j] = j;
        if (cmd.tag == CommandTag::query) {
            REQUIRE(marked_at.count(cmd.arg) == 1);
            REQUIRE(j - cmd.arg == static_cast<Position>(l - 1));
            REQUIRE(k + 1 < cs.size());
            REQUIRE(cs[k + 1] == Command::close(cmd.arg));
        }
    }
}

}  // namespace

TEST_CASE("window length follows ell * n / q", "[workload]") {
    CHECK(window_length({8, 2, 2.0, 1}) == 8);
    CHECK(window_length({1u << 20, 1u << 14, 64.0, 1}) == 1u << 12);
    CHECK(window_length({100, 0, 5.0, 1}) == 1);
    CHECK(window_length({10, 4, 1.0, 1}) == 3);  // 2.5 rounds away from zero
}

TEST_CASE("expected open positions", "[workload]") {
    CHECK(expected_open({std::uint64_t{1} << 28, std::uint64_t{1} << 26, 65536.0, 0}) == 65536.0);
    CHECK(expected_open({100, 0, 1.0, 0}) == 0.0);
    CHECK(expected_open({100, 7, 100.0 * 7 / 100, 0}) == Catch::Approx(7.0));
}

TEST_CASE("generated streams have the requested shape", "[workload]") {
    SECTION("small stream") {
        const WorkloadSpec spec{8, 2, 1.0, 3};
        REQUIRE(window_length(spec) == 4);
        const auto cs = generate(spec);
        const Counts c = count(cs);
        CHECK(c.values == 8);
        CHECK(c.marks == 2);
        CHECK(c.queries == 2);
        CHECK(c.closes == 2);
        check_spacing(cs, 4);
        CHECK(validate(cs).ok);
    }
    SECTION("a window spanning the stream leaves one markable position") {
        const WorkloadSpec spec{8, 2, 2.0, 3};
        CHECK(effective_marks(spec) == 1);
        const auto cs = generate(spec);
        const Counts c = count(cs);
        CHECK(c.values == 8);
        CHECK(c.marks == 1);
        CHECK(c.queries == 1);
        CHECK(c.closes == 1);
        CHECK(cs[1] == Command::mark());
        CHECK(cs.back() == Command::close(1));
    }
    SECTION("q covering every markable position marks all of them") {
        const auto cs = generate({20, 20, 1.0, 9});
        CHECK(count(cs).marks == 20);
        check_spacing(cs, 1);
    }
    SECTION("many seeds") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const WorkloadSpec spec{1000 + seed * 31, 50 + seed * 3, 1.0 + static_cast<double>(seed), seed};
            const auto cs = generate(spec);
            const Counts c = count(cs);
            REQUIRE(c.values == spec.n);
            REQUIRE(c.marks == effective_marks(spec));
            REQUIRE(c.queries == c.marks);
            REQUIRE(c.closes == c.marks);
            check_spacing(cs, window_length(spec));
            REQUIRE(validate(cs).ok);
            for (const auto& cmd : cs)
                if (cmd.tag == CommandTag::value) REQUIRE((cmd.arg >= 0 && cmd.arg < (Value{1} << 30)));
        }
    }
}

TEST_CASE("generation is deterministic under the seed", "[workload]") {
    const WorkloadSpec spec{5000, 300, 8.0, 77};
    CHECK(serialize(generate(spec)) == serialize(generate(spec)));
    WorkloadSpec other = spec;
    other.seed = 78;
    CHECK(serialize(generate(spec)) != serialize(generate(other)));
}

TEST_CASE("the PRNG reproduces its reference outputs", "[workload]") {
    // splitmix64 from seed 0 gives the well-known first word 0xe220a8397b1dcdaf.
    std::uint64_t x = 0;
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    CHECK((z ^ (z >> 31)) == 0xe220a8397b1dcdafull);

    Xoshiro256 a(123), b(123);
    for (int k = 0; k < 100; ++k) REQUIRE(a() == b());
    Xoshiro256 r(5);
    for (int k = 0; k < 10'000; ++k) REQUIRE(r.uniform(7) < 7);
}

TEST_CASE("mean open count tracks ell", "[workload]") {
    const WorkloadSpec spec{std::uint64_t{1} << 20, std::uint64_t{1} << 14, 64.0, 11};
    REQUIRE(window_length(spec) == std::uint64_t{1} << 12);
    CHECK(expected_open(spec) == 64.0);
    const auto cs = generate(spec);
    StreamValidator v;
    double total = 0.0;
    std::size_t samples = 0;
    for (const auto& cmd : cs) {
        v.step(cmd);
        if (cmd.tag == CommandTag::value) {
            total += static_cast<double>(v.open_count());
            ++samples;
        }
    }
    const double mean = total / static_cast<double>(samples);
    CHECK(mean >= 0.8 * 64.0);
    CHECK(mean <= 1.2 * 64.0);
}

TEST_CASE("bad specs are rejected", "[workload]") {
    const auto bad = Catch::Matchers::Predicate<error>([](const error& e) { return e.kind() == ErrorKind::bad_spec; });
    CHECK_THROWS_MATCHES(generate({0, 0, 1.0, 0}), error, bad);
    CHECK_THROWS_MATCHES(generate({10, 5, 0.0, 0}), error, bad);
    CHECK_THROWS_MATCHES(generate({10, 5, 100.0, 0}), error, bad);
    CHECK_THROWS_MATCHES(generate({10, 100, 0.01, 0}), error, bad);
    CHECK_THROWS_MATCHES(generate({10, 1, 1.0, 0, 0}), error, bad);
    CHECK(count(generate({10, 0, 1.0, 0})).values == 10);
}
