#pragma once

#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srmq/error.hpp"

namespace srmq {

using Value = std::int64_t;
/// 1-based sequence position: the number of Value commands seen so far.
using Position = std::int64_t;

inline constexpr Value kMinusInfinity = std::numeric_limits<Value>::min();
inline constexpr Value kPlusInfinity = std::numeric_limits<Value>::max();

[[nodiscard]] constexpr bool is_storable_value(Value v) noexcept {
    return v != kMinusInfinity && v != kPlusInfinity;
}

enum class CommandTag : std::uint8_t { value, mark, query, close };

struct Command {
    CommandTag tag = CommandTag::mark;
    /// The value for Value, the position for Query/Close, zero for Mark.
    std::int64_t arg = 0;

    static constexpr Command value(Value v) noexcept { return {CommandTag::value, v}; }
    static constexpr Command mark() noexcept { return {CommandTag::mark, 0}; }
    static constexpr Command query(Position i) noexcept { return {CommandTag::query, i}; }
    static constexpr Command close(Position i) noexcept { return {CommandTag::close, i}; }

    friend constexpr bool operator==(const Command&, const Command&) = default;
};

[[nodiscard]] constexpr char tag_char(CommandTag tag) noexcept {
    switch (tag) {
        case CommandTag::value: return 'V';
        case CommandTag::mark: return 'M';
        case CommandTag::query: return 'Q';
        case CommandTag::close: return 'C';
    }
    return '?';
}

inline std::ostream& operator<<(std::ostream& os, const Command& cmd) {
    os << tag_char(cmd.tag);
    if (cmd.tag != CommandTag::mark) os << ' ' << cmd.arg;
    return os;
}

namespace detail {

[[nodiscard]] constexpr bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

/// Whitespace tokenizer over a view; tracks the offset of the current token.
class token_cursor {
public:
    explicit token_cursor(std::string_view text) noexcept : text_(text) {}

    /// Next token, or nullopt at end of input. `offset()` then names its first byte.
    std::optional<std::string_view> next() noexcept {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
        if (pos_ == text_.size()) return std::nullopt;
        start_ = pos_;
        while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
        return text_.substr(start_, pos_ - start_);
    }

    [[nodiscard]] std::size_t offset() const noexcept { return start_; }
    [[nodiscard]] std::size_t end_offset() const noexcept { return pos_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t start_ = 0;
};

}  // namespace detail

/// Parses the whitespace-separated command grammar:
///   stream := token* ; token := "V" int64 | "M" | "Q" uint | "C" uint
/// Throws parse_error (MalformedToken) on an unknown tag, a missing argument,
/// a non-integer argument, a reserved sentinel value, or a position below 1.
[[nodiscard]] inline std::vector<Command> parse_stream(std::string_view text) {
    std::vector<Command> out;
    detail::token_cursor cursor(text);
    while (auto tok = cursor.next()) {
        const std::size_t tag_offset = cursor.offset();
        const std::size_t ordinal = out.size();
        if (tok->size() != 1) throw parse_error(tag_offset, ordinal, "unknown command tag '" + std::string(*tok) + "'");
        const char tag = (*tok)[0];
        if (tag == 'M') {
            out.push_back(Command::mark());
            continue;
        }
        if (tag != 'V' && tag != 'Q' && tag != 'C')
            throw parse_error(tag_offset, ordinal, std::string("unknown command tag '") + tag + "'");

        auto arg_tok = cursor.next();
        if (!arg_tok) throw parse_error(cursor.end_offset(), ordinal, std::string("missing argument for '") + tag + "'");
        std::int64_t arg = 0;
        auto [ptr, ec] = std::from_chars(arg_tok->data(), arg_tok->data() + arg_tok->size(), arg);
        if (ec != std::errc{} || ptr != arg_tok->data() + arg_tok->size())
            throw parse_error(cursor.offset(), ordinal, "non-integer argument '" + std::string(*arg_tok) + "'");

        if (tag == 'V') {
            if (!is_storable_value(arg)) throw parse_error(cursor.offset(), ordinal, "value is a reserved sentinel");
            out.push_back(Command::value(arg));
        } else {
            if (arg < 1) throw parse_error(cursor.offset(), ordinal, "position must be >= 1");
            out.push_back(tag == 'Q' ? Command::query(arg) : Command::close(arg));
        }
    }
    return out;
}

/// Single-space separated, no trailing whitespace.
[[nodiscard]] inline std::string serialize(std::span<const Command> commands) {
    std::string out;
    out.reserve(commands.size() * 8);
    char buf[24];
    for (const Command& cmd : commands) {
        if (!out.empty()) out.push_back(' ');
        out.push_back(tag_char(cmd.tag));
        if (cmd.tag == CommandTag::mark) continue;
        out.push_back(' ');
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, cmd.arg);
        out.append(buf, ptr);
    }
    return out;
}

enum class Violation : std::uint8_t {
    mark_before_any_value,
    duplicate_mark,
    query_unmarked,
    query_closed,
    close_unmarked,
    close_closed,
    malformed_token,
};

[[nodiscard]] constexpr std::string_view to_string(Violation v) noexcept {
    switch (v) {
        case Violation::mark_before_any_value: return "MarkBeforeAnyValue";
        case Violation::duplicate_mark: return "DuplicateMark";
        case Violation::query_unmarked: return "QueryUnmarked";
        case Violation::query_closed: return "QueryClosed";
        case Violation::close_unmarked: return "CloseUnmarked";
        case Violation::close_closed: return "CloseClosed";
        case Violation::malformed_token: return "MalformedToken";
    }
    return "?";
}

struct ViolationRecord {
    std::size_t ordinal = 0;  ///< 0-based index of the offending command
    Violation kind = Violation::malformed_token;

    friend constexpr bool operator==(const ViolationRecord&, const ViolationRecord&) = default;
};

struct ValidityReport {
    bool ok = true;
    std::vector<ViolationRecord> violations;
};

/// Incremental well-formedness checker. Also tracks how many positions are
/// currently open, which the engine tests use as the reference counter.
class StreamValidator {
public:
    /// Checks one command and advances the state. A violating command leaves
    /// the state unchanged apart from the Value counter.
    std::optional<Violation> step(const Command& cmd) {
        switch (cmd.tag) {
            case CommandTag::value:
                if (!is_storable_value(cmd.arg)) return Violation::malformed_token;
                ++j_;
                state_.push_back(kNever);
                return std::nullopt;
            case CommandTag::mark:
                if (j_ == 0) return Violation::mark_before_any_value;
                if (state_[j_] != kNever) return Violation::duplicate_mark;
                state_[j_] = kOpen;
                ++open_;
                return std::nullopt;
            case CommandTag::query:
                switch (lookup(cmd.arg)) {
                    case kNever: return Violation::query_unmarked;
                    case kClosed: return Violation::query_closed;
                    default: return std::nullopt;
                }
            case CommandTag::close:
                switch (lookup(cmd.arg)) {
                    case kNever: return Violation::close_unmarked;
                    case kClosed: return Violation::close_closed;
                    default:
                        state_[static_cast<std::size_t>(cmd.arg)] = kClosed;
                        --open_;
                        return std::nullopt;
                }
        }
        return Violation::malformed_token;
    }

    [[nodiscard]] std::size_t open_count() const noexcept { return open_; }
    [[nodiscard]] Position position() const noexcept { return static_cast<Position>(j_); }

private:
    static constexpr std::uint8_t kNever = 0, kOpen = 1, kClosed = 2;

    [[nodiscard]] std::uint8_t lookup(Position i) const noexcept {
        if (i < 1 || static_cast<std::size_t>(i) > j_) return kNever;
        return state_[static_cast<std::size_t>(i)];
    }

    std::size_t j_ = 0;
    std::size_t open_ = 0;
    std::vector<std::uint8_t> state_ = std::vector<std::uint8_t>(1, kNever);  // index 0 unused
};

[[nodiscard]] inline ValidityReport validate(std::span<const Command> commands) {
    ValidityReport report;
    StreamValidator validator;
    for (std::size_t n = 0; n < commands.size(); ++n) {
        if (auto v = validator.step(commands[n])) report.violations.push_back({n, *v});
    }
    report.ok = report.violations.empty();
    return report;
}

/// Parse then validate; a parse failure becomes a MalformedToken violation at
/// the ordinal of the command that failed to parse.
[[nodiscard]] inline ValidityReport validate_text(std::string_view text) {
    try {
        const auto commands = parse_stream(text);
        return validate(commands);
    } catch (const parse_error& e) {
        return {false, {{e.ordinal(), Violation::malformed_token}}};
    }
}

}  // namespace srmq
