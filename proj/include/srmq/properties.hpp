#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "srmq/command.hpp"
#include "srmq/compact_engine.hpp"
#include "srmq/oracle.hpp"
#include "srmq/realtime_engine.hpp"
#include "srmq/vanilla_engine.hpp"
#include "srmq/workload.hpp"

namespace srmq {

/*
 * Executable invariant suite. Each random valid stream is replayed through
 * every engine and the invariants below are asserted after every command
 * (position-set sortedness, which costs O(m), at evenly spaced checkpoints).
 *
 * Strict monotonicity covers both directions: with distinct stack values,
 * "k' < k implies S[k'] < S[k]" and "S[k] < S[k'] implies k < k'" are
 * contrapositives, so one assertion checks both.
 */
struct PropertyCase {
    std::string name;
    std::string invariant;
    std::string generator;
    std::string assertion;
};

enum PropertyId : std::size_t {
    kStackAtLeastTwo,
    kTopBoundedByLastValue,
    kStrictlyIncreasingStack,
    kSortedPositionSets,
    kOracleAgreement,
    kActiveCounter,
    kCapacityBound,
    kPropertyCount,
};

[[nodiscard]] inline std::vector<PropertyCase> property_cases() {
    const std::string gen = "corpus_stream: alternating interval-query workloads and mixed random valid streams";
    return {
        {"stack-at-least-two", "the stack always holds at least two entries", gen, "depth >= 2 after every command"},
        {"top-bounded-by-last-value", "after a Value(v) the top entry is <= v", gen, "top <= last v after every command once a value exists"},
        {"strictly-increasing-stack", "stack values strictly increase bottom to top (and its converse)", gen, "S[k-1] < S[k] for every adjacent pair"},
        {"sorted-position-sets", "every position of a lower level precedes every position of a higher level", gen,
         "level-ordered concatenation of position sets is strictly increasing; realtime min_pos strictly increasing"},
        {"oracle-agreement", "a position in P[k'] answers RMQ(i, j) = S[k']", gen, "every engine's Query answer equals the linear-scan minimum"},
        {"active-counter", "c equals the number of marked, unclosed positions", gen, "compact and realtime live counts match the validator"},
        {"capacity-bound", "capacity never exceeds max(a0, 2 * peak c)", gen, "checked for compact and realtime after every command"},
    };
}

struct CaseOutcome {
    PropertyCase definition;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;
};

struct PropertySummary {
    std::vector<CaseOutcome> cases;
    std::size_t streams = 0;
    std::size_t commands = 0;

    PropertySummary() {
        for (auto& def : property_cases()) cases.push_back({def, 0, 0, {}});
    }

    [[nodiscard]] bool ok() const noexcept {
        return std::all_of(cases.begin(), cases.end(), [](const CaseOutcome& c) { return c.failures == 0 && c.checks > 0; });
    }
};

/// Random valid stream with random interleavings: marks after a share of the
/// values, queries and closes against uniformly chosen open positions.
/// Small value ranges produce many ties.
struct MixedStreamSpec {
    std::uint64_t n = 1000;
    std::uint64_t value_range = 1000;
    double mark_probability = 0.5;
    double query_probability = 0.2;  ///< per value, so q <= n / 4 on average when <= 0.25
    double close_probability = 0.4;  ///< per value
    std::uint64_t seed = 0;
};

[[nodiscard]] inline std::vector<Command> generate_mixed(const MixedStreamSpec& spec) {
    Xoshiro256 rng(spec.seed);
    const auto chance = [&](double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; };
    std::vector<Position> open;
    std::vector<Command> out;
    out.reserve(spec.n * 2);
    for (std::uint64_t t = 1; t <= spec.n; ++t) {
        out.push_back(Command::value(static_cast<Value>(rng.uniform(std::max<std::uint64_t>(spec.value_range, 1)))));
        if (chance(spec.mark_probability)) {
            out.push_back(Command::mark());
            open.push_back(static_cast<Position>(t));
        }
        if (!open.empty() && chance(spec.query_probability))
            out.push_back(Command::query(open[rng.uniform(open.size())]));
        if (!open.empty() && chance(spec.close_probability)) {
            const std::size_t k = rng.uniform(open.size());
            out.push_back(Command::close(open[k]));
            open[k] = open.back();
            open.pop_back();
        }
    }
    return out;
}

/// The `index`-th stream of a reproducible corpus with n log-uniform in
/// [min_n, max_n]. Even indices are interval-query workloads (q <= n/4,
/// ell in [1, 64]); odd indices are mixed streams.
[[nodiscard]] inline std::vector<Command> corpus_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t min_n,
                                                        std::uint64_t max_n) {
    Xoshiro256 rng(seed ^ (0x5851f42d4c957f2dull * (index + 1)));
    const auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double lo = std::log(static_cast<double>(min_n));
    const double hi = std::log(static_cast<double>(std::max(max_n, min_n)));
    const auto n = static_cast<std::uint64_t>(std::exp(lo + (hi - lo) * unit()));

    if (index % 2 == 0) {
        WorkloadSpec spec;
        spec.n = std::max<std::uint64_t>(n, 8);
        spec.q = 1 + rng.uniform(std::max<std::uint64_t>(spec.n / 4, 1));
        const double max_ell = std::clamp(static_cast<double>(spec.q) / 2.0, 1.0, 64.0);
        spec.ell = std::exp(std::log(max_ell) * unit());
        spec.seed = rng();
        spec.value_bound = (index % 4 == 0) ? (std::uint64_t{1} << 30) : 1 + rng.uniform(64);
        return generate(spec);
    }
    MixedStreamSpec spec;
    spec.n = n;
    spec.value_range = 1 + rng.uniform(index % 3 == 0 ? 8 : 1u << 20);
    spec.mark_probability = 0.05 + 0.9 * unit();
    spec.query_probability = 0.25 * unit();
    spec.close_probability = spec.mark_probability * (0.5 + 0.6 * unit());
    spec.seed = rng();
    return generate_mixed(spec);
}

namespace detail {

class PropertyRecorder {
public:
    PropertyRecorder(PropertySummary& summary, std::size_t stream) : summary_(summary), stream_(stream) {}

    void at(std::size_t ordinal) noexcept { ordinal_ = ordinal; }

    void check(PropertyId id, bool passed, const char* engine, const std::string& detail = {}) {
        CaseOutcome& c = summary_.cases[id];
        ++c.checks;
        if (passed) return;
        if (c.failures++ == 0) {
            std::ostringstream os;
            os << "stream " << stream_ << ", command " << ordinal_ << ", " << engine;
            if (!detail.empty()) os << ": " << detail;
            c.first_failure = os.str();
        }
    }

private:
    PropertySummary& summary_;
    std::size_t stream_;
    std::size_t ordinal_ = 0;
};

template <typename Slots>
void check_stack(PropertyRecorder& rec, const Slots& slots, bool have_value, Value last_value, const char* engine) {
    rec.check(kStackAtLeastTwo, slots.size() >= 2, engine, "depth " + std::to_string(slots.size()));
    bool increasing = true;
    for (std::size_t k = 1; k < slots.size(); ++k) increasing = increasing && slots[k - 1].value < slots[k].value;
    rec.check(kStrictlyIncreasingStack, increasing, engine);
    if (have_value) rec.check(kTopBoundedByLastValue, slots[slots.size() - 1].value <= last_value, engine);
}

inline bool sets_sorted(const Snapshot& snap) {
    Position last = 0;
    for (const auto& set : snap.sets)
        for (Position p : set) {
            if (p <= last) return false;
            last = p;
        }
    return true;
}

inline bool min_pos_sorted(std::span<const RealtimeEngine::Slot> slots) {
    Position last = 0;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const Position p = slots[k].min_pos;
        if (p == RealtimeEngine::kNoPosition) {
            if (k > 1) return false;  // only the sentinel and the initial slot own nothing
            continue;
        }
        if (p <= last) return false;
        last = p;
    }
    return true;
}

}  // namespace detail

/// Replays one stream through every engine and records each invariant.
inline void check_stream(std::span<const Command> commands, PropertySummary& summary, std::size_t stream_index,
                         std::size_t set_checkpoints = 64) {
    using detail::PropertyRecorder;
    PropertyRecorder rec(summary, stream_index);

    constexpr std::size_t kSmallCapacity = 4;
    VanillaEngine vanilla;
    CompactEngine compact(kSmallCapacity);
    RealtimeEngine realtime(SearchMode::binary, kSmallCapacity);
    RealtimeEngine realtime_exp(SearchMode::exponential);
    OracleEngine oracle;
    StreamValidator validator;
    std::size_t peak_open = 0;
    bool have_value = false;
    const std::size_t stride = std::max<std::size_t>(commands.size() / std::max<std::size_t>(set_checkpoints, 1), 1);

    for (std::size_t n = 0; n < commands.size(); ++n) {
        const Command& cmd = commands[n];
        rec.at(n);
        if (validator.step(cmd)) {
            rec.check(kOracleAgreement, false, "validator", "stream is not valid");
            return;
        }
        peak_open = std::max(peak_open, validator.open_count());
        have_value = have_value || cmd.tag == CommandTag::value;

        const auto expected = oracle.apply(cmd);
        const auto a_van = vanilla.apply(cmd);
        const auto a_cmp = compact.apply(cmd);
        const auto a_rt = realtime.apply(cmd);
        const auto a_rte = realtime_exp.apply(cmd);
        if (cmd.tag == CommandTag::query) {
            const auto show = [&](const char* engine, const std::optional<Value>& got) {
                std::ostringstream os;
                os << "Q " << cmd.arg << ": " << engine << " answered " << (got ? std::to_string(*got) : "nothing")
                   << ", oracle " << *expected;
                return os.str();
            };
            rec.check(kOracleAgreement, a_van == expected, "vanilla", show("vanilla", a_van));
            rec.check(kOracleAgreement, a_cmp == expected, "compact", show("compact", a_cmp));
            rec.check(kOracleAgreement, a_rt == expected, "realtime", show("realtime", a_rt));
            rec.check(kOracleAgreement, a_rte == expected, "realtime-exponential", show("realtime-exponential", a_rte));
        }

        detail::check_stack(rec, vanilla.stack(), have_value, vanilla.last_value(), "vanilla");
        detail::check_stack(rec, compact.stack(), have_value, compact.last_value(), "compact");
        detail::check_stack(rec, realtime.stack(), have_value, realtime.last_value(), "realtime");
        detail::check_stack(rec, realtime_exp.stack(), have_value, realtime_exp.last_value(), "realtime-exponential");
        rec.check(kSortedPositionSets, detail::min_pos_sorted(realtime.stack()), "realtime");
        rec.check(kSortedPositionSets, detail::min_pos_sorted(realtime_exp.stack()), "realtime-exponential");

        const std::size_t open = validator.open_count();
        rec.check(kActiveCounter, compact.stats().active == open, "compact");
        rec.check(kActiveCounter, realtime.active() == open, "realtime");
        const auto bound = [&](std::size_t a0) { return std::max(a0, 2 * peak_open); };
        rec.check(kCapacityBound, compact.stats().capacity <= bound(compact.initial_capacity()), "compact",
                  "a = " + std::to_string(compact.stats().capacity));
        rec.check(kCapacityBound, realtime.capacity() <= bound(kSmallCapacity), "realtime");
        rec.check(kCapacityBound, realtime_exp.capacity() <= bound(RealtimeEngine::kDefaultInitialCapacity),
                  "realtime-exponential");

        if (n % stride == 0 || n + 1 == commands.size()) {
            rec.check(kSortedPositionSets, detail::sets_sorted(vanilla.snapshot()), "vanilla");
            rec.check(kSortedPositionSets, detail::sets_sorted(compact.snapshot()), "compact");
        }
    }
    ++summary.streams;
    summary.commands += commands.size();
}

/// Runs `budget` corpus streams with n in [min_n, max_n].
[[nodiscard]] inline PropertySummary run_properties(std::size_t budget, std::uint64_t seed = 1,
                                                    std::uint64_t min_n = 100, std::uint64_t max_n = 10'000) {
    PropertySummary summary;
    for (std::size_t s = 0; s < budget; ++s) {
        const auto stream = corpus_stream(seed, s, min_n, max_n);
        check_stream(stream, summary, s);
    }
    return summary;
}

}  // namespace srmq
