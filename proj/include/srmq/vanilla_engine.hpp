#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srmq/command.hpp"
#include "srmq/linked_stack.hpp"

namespace srmq {

/*
 * Monotonic stack plus union-find over every marked position. Close is
 * ignored, so memory grows with the number of marks.
 *
 * Marks arrive at strictly increasing positions, which makes the list of
 * marked positions sorted; a position's forest element is its index there.
 */
class VanillaEngine {
public:
    static constexpr std::string_view kName = "vanilla";

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
        stack_.push_value(v);
        last_value_ = v;
        ++j_;
    }

    void mark() {
        if (j_ == 0) throw error(ErrorKind::invalid_state, "Mark before any Value");
        if (!marked_.empty() && marked_.back() == j_) return;
        const auto element = static_cast<ElementId>(marked_.size());
        marked_.push_back(j_);
        stack_.attach(element, last_value_);
    }

    [[nodiscard]] Value query(Position i) {
        if (j_ == 0) throw error(ErrorKind::invalid_state, "Query before any Value");
        const auto it = std::lower_bound(marked_.begin(), marked_.end(), i);
        if (it == marked_.end() || *it != i)
            throw error(ErrorKind::unknown_position, "position " + std::to_string(i) + " was never marked");
        return stack_.value_of(static_cast<ElementId>(it - marked_.begin()));
    }

    void close(Position) noexcept {}

    [[nodiscard]] Snapshot snapshot() {
        Snapshot snap;
        for (const auto& slot : stack_.slots()) snap.values.push_back(slot.value);
        snap.sets.resize(snap.values.size());
        for (std::size_t e = 0; e < marked_.size(); ++e)
            snap.sets[stack_.find(static_cast<ElementId>(e))].push_back(marked_[e]);
        return snap;
    }

    [[nodiscard]] std::span<const LinkedStack::Slot> stack() const noexcept { return stack_.slots(); }
    [[nodiscard]] Position position() const noexcept { return j_; }
    [[nodiscard]] Value last_value() const noexcept { return last_value_; }
    [[nodiscard]] std::size_t peak_capacity() const noexcept { return marked_.size(); }
    [[nodiscard]] std::size_t peak_active() const noexcept { return marked_.size(); }

private:
    LinkedStack stack_;
    std::vector<Position> marked_;
    Position j_ = 0;
    Value last_value_ = kPlusInfinity;
};

}  // namespace srmq
