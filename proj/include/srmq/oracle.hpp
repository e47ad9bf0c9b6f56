#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srmq/command.hpp"

namespace srmq {

/// Stores the whole value sequence and answers each Query by a linear scan.
/// Reference only: O(n) memory, O(j - i) per query.
class OracleEngine {
public:
    static constexpr std::string_view kName = "oracle";

    [[nodiscard]] std::string_view name() const noexcept { return kName; }

    std::optional<Value> apply(const Command& cmd) {
        switch (cmd.tag) {
            case CommandTag::value: value(cmd.arg); return std::nullopt;
            case CommandTag::mark: mark(); return std::nullopt;
            case CommandTag::query: return query(cmd.arg);
            case CommandTag::close: close(cmd.arg); return std::nullopt;
        }
        return std::nullopt;
    }

    void value(Value v) {
        values_.push_back(v);
        open_.push_back(false);
    }

    void mark() {
        if (values_.empty()) throw error(ErrorKind::invalid_state, "Mark before any Value");
        if (!open_.back()) {
            open_.back() = true;
            ++active_;
            peak_active_ = std::max(peak_active_, active_);
        }
    }

    [[nodiscard]] Value query(Position i) const {
        require_open(i);
        return *std::min_element(values_.begin() + (i - 1), values_.end());
    }

    void close(Position i) {
        require_open(i);
        open_[static_cast<std::size_t>(i - 1)] = false;
        --active_;
    }

    [[nodiscard]] const std::vector<Value>& values() const noexcept { return values_; }
    [[nodiscard]] Position position() const noexcept { return static_cast<Position>(values_.size()); }
    [[nodiscard]] std::size_t active() const noexcept { return active_; }
    [[nodiscard]] std::size_t peak_capacity() const noexcept { return values_.size(); }
    [[nodiscard]] std::size_t peak_active() const noexcept { return peak_active_; }

private:
    void require_open(Position i) const {
        if (i < 1 || i > position() || !open_[static_cast<std::size_t>(i - 1)])
            throw error(ErrorKind::inactive_position, "position " + std::to_string(i) + " is not active");
    }

    std::vector<Value> values_;
    std::vector<bool> open_;
    std::size_t active_ = 0;
    std::size_t peak_active_ = 0;
};

}  // namespace srmq
