#pragma once

#include <chrono>
#include <cstdint>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "srmq/command.hpp"
#include "srmq/compact_engine.hpp"
#include "srmq/oracle.hpp"
#include "srmq/realtime_engine.hpp"
#include "srmq/vanilla_engine.hpp"

namespace srmq {

/// nullopt marks a query whose engine raised an error (lenient runs only).
using AnswerStream = std::vector<std::optional<Value>>;

/// FNV-1a over each answer's 8 little-endian bytes; a failed query hashes
/// as the single byte 0xff. Order-sensitive and platform-independent.
class AnswerDigest {
public:
    void add(Value v) noexcept {
        auto u = static_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            mix(static_cast<std::uint8_t>(u & 0xff));
            u >>= 8;
        }
    }
    void add_failure() noexcept { mix(0xff); }
    [[nodiscard]] std::uint64_t value() const noexcept { return h_; }

private:
    void mix(std::uint8_t byte) noexcept {
        h_ ^= byte;
        h_ *= 0x100000001b3ull;
    }
    std::uint64_t h_ = 0xcbf29ce484222325ull;
};

struct RunOptions {
    bool collect_answers = true;
    /// Engine errors on Query/Close are recorded instead of propagated.
    bool lenient = false;
};

struct RunReport {
    std::string engine;
    std::size_t commands = 0;
    std::size_t values = 0;   ///< n
    std::size_t queries = 0;  ///< q
    std::chrono::nanoseconds wall{0};
    double ns_per_command = 0.0;  ///< wall / (n + q)
    std::size_t peak_capacity = 0;
    std::size_t peak_active = 0;
    std::uint64_t digest = 0;
    std::size_t failures = 0;
};

struct RunResult {
    RunReport report;
    AnswerStream answers;
};

namespace detail {
// Query answers land here so the work cannot be optimized away.
inline volatile Value answer_sink = 0;
}  // namespace detail

template <typename Engine>
RunResult run_engine(Engine& engine, std::span<const Command> commands, const RunOptions& options = {}) {
    RunResult result;
    AnswerDigest digest;
    std::size_t values = 0, queries = 0, failures = 0;
    if (options.collect_answers) result.answers.reserve(commands.size() / 4);

    const auto start = std::chrono::steady_clock::now();
    for (const Command& cmd : commands) {
        if (cmd.tag == CommandTag::value) ++values;
        if (!options.lenient) {
            if (auto answer = engine.apply(cmd)) {
                ++queries;
                detail::answer_sink = *answer;
                digest.add(*answer);
                if (options.collect_answers) result.answers.emplace_back(*answer);
            }
            continue;
        }
        try {
            if (auto answer = engine.apply(cmd)) {
                ++queries;
                detail::answer_sink = *answer;
                digest.add(*answer);
                if (options.collect_answers) result.answers.emplace_back(*answer);
            }
        } catch (const error&) {
            if (cmd.tag == CommandTag::value || cmd.tag == CommandTag::mark) throw;
            ++failures;
            if (cmd.tag == CommandTag::query) {
                ++queries;
                digest.add_failure();
                if (options.collect_answers) result.answers.emplace_back(std::nullopt);
            }
        }
    }
    const auto wall = std::chrono::steady_clock::now() - start;

    RunReport& r = result.report;
    r.engine = std::string(engine.name());
    r.commands = commands.size();
    r.values = values;
    r.queries = queries;
    r.wall = std::chrono::duration_cast<std::chrono::nanoseconds>(wall);
    const std::size_t denom = values + queries;
    r.ns_per_command = denom == 0 ? 0.0 : static_cast<double>(r.wall.count()) / static_cast<double>(denom);
    r.peak_capacity = engine.peak_capacity();
    r.peak_active = engine.peak_active();
    r.digest = digest.value();
    r.failures = failures;
    return result;
}

using AnyEngine = std::variant<VanillaEngine, CompactEngine, RealtimeEngine, OracleEngine>;

struct EngineOptions {
    std::size_t initial_capacity = CompactEngine::kDefaultInitialCapacity;
    SearchMode search = SearchMode::binary;
};

inline constexpr std::string_view kEngineNames[] = {"vanilla", "compact", "realtime", "oracle"};

/// Throws error(bad_spec) on an unknown name.
[[nodiscard]] inline AnyEngine make_engine(std::string_view name, const EngineOptions& options = {}) {
    if (name == VanillaEngine::kName) return VanillaEngine{};
    if (name == CompactEngine::kName) return CompactEngine{options.initial_capacity};
    if (name == RealtimeEngine::kName) return RealtimeEngine{options.search, options.initial_capacity};
    if (name == OracleEngine::kName) return OracleEngine{};
    throw error(ErrorKind::bad_spec, "unknown engine '" + std::string(name) + "'");
}

inline RunResult run_engine(AnyEngine& engine, std::span<const Command> commands, const RunOptions& options = {}) {
    return std::visit([&](auto& e) { return run_engine(e, commands, options); }, engine);
}

struct NamedAnswers {
    std::string name;
    AnswerStream answers;
    std::optional<std::string> error;  ///< set if the engine aborted the run
};

struct Divergence {
    std::size_t query_ordinal = 0;  ///< 0-based among Query commands
    Position position = 0;
    std::vector<std::pair<std::string, std::optional<Value>>> answers;
};

struct VerifyReport {
    bool ok = true;
    std::optional<Divergence> first_divergence;
    std::vector<std::string> errors;
};

/// Compares answer streams for the same command stream. An engine that
/// produced fewer answers diverges at its first missing one.
[[nodiscard]] inline VerifyReport compare_answers(std::span<const Command> commands, std::span<const NamedAnswers> runs) {
    VerifyReport report;
    for (const auto& run : runs)
        if (run.error) {
            report.ok = false;
            report.errors.push_back(run.name + ": " + *run.error);
        }
    if (runs.empty()) return report;

    std::vector<Position> query_positions;
    for (const Command& cmd : commands)
        if (cmd.tag == CommandTag::query) query_positions.push_back(cmd.arg);

    for (std::size_t q = 0; q < query_positions.size(); ++q) {
        const auto at = [&](const NamedAnswers& r) -> std::optional<Value> {
            return q < r.answers.size() ? r.answers[q] : std::nullopt;
        };
        const auto reference = at(runs.front());
        bool same = reference.has_value();
        for (const auto& run : runs) same = same && at(run) == reference;
        if (same) continue;
        Divergence d{q, query_positions[q], {}};
        for (const auto& run : runs) d.answers.emplace_back(run.name, at(run));
        report.ok = false;
        report.first_divergence = std::move(d);
        break;
    }
    return report;
}

/// Runs every configuration on its own thread over the shared read-only
/// stream; the oracle is listed first and serves as reference.
[[nodiscard]] inline std::vector<NamedAnswers> run_all_engines(std::span<const Command> commands,
                                                               std::size_t initial_capacity = CompactEngine::kDefaultInitialCapacity) {
    struct Config {
        std::string label;
        std::string_view engine;
        SearchMode search;
    };
    const std::vector<Config> configs = {
        {"oracle", "oracle", SearchMode::binary},
        {"vanilla", "vanilla", SearchMode::binary},
        {"compact", "compact", SearchMode::binary},
        {"realtime", "realtime", SearchMode::binary},
        {"realtime-exponential", "realtime", SearchMode::exponential},
    };
    std::vector<std::future<NamedAnswers>> jobs;
    for (const Config& config : configs) {
        jobs.push_back(std::async(std::launch::async, [config, commands, initial_capacity] {
            NamedAnswers out{config.label, {}, std::nullopt};
            try {
                AnyEngine engine = make_engine(config.engine, {initial_capacity, config.search});
                out.answers = run_engine(engine, commands).answers;
            } catch (const std::exception& e) {
                out.error = e.what();
            }
            return out;
        }));
    }
    std::vector<NamedAnswers> runs;
    for (auto& job : jobs) runs.push_back(job.get());
    return runs;
}

}  // namespace srmq
