#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srmq/active_index.hpp"
#include "srmq/command.hpp"
#include "srmq/linked_stack.hpp"

namespace srmq {

struct CompactStats {
    std::size_t active = 0;      ///< c: marked and not yet closed
    std::size_t capacity = 0;    ///< a: elements before the next transfer
    Position position = 0;       ///< j
    std::size_t stack_depth = 0;
    std::size_t live_entries = 0;
    std::size_t tombstones = 0;

    friend bool operator==(const CompactStats&, const CompactStats&) = default;
};

/*
 * Stack + union-find + tombstoned position index with capacity doubling.
 *
 * The structure holds at most `a` elements (live or tombstoned). When a Mark
 * finds it full, everything still active is rebuilt into a fresh structure
 * of capacity 2c, dropping closed positions and the stack slots they leave
 * empty. Space therefore stays within max(a0, 2 * peak c).
 */
class CompactEngine {
public:
    static constexpr std::string_view kName = "compact";
    static constexpr std::size_t kDefaultInitialCapacity = 16;

    explicit CompactEngine(std::size_t initial_capacity = kDefaultInitialCapacity)
        : initial_capacity_(std::max<std::size_t>(initial_capacity, 1)), index_(initial_capacity_) {
        stack_.forest().reserve(initial_capacity_);
        peak_capacity_ = initial_capacity_;
    }

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
        if (last_marked_ == j_) return;
        if (index_.full()) transfer();
        const ElementId element = next_element_++;
        index_.insert(j_, element);
        stack_.attach(element, last_value_);
        last_marked_ = j_;
        peak_active_ = std::max(peak_active_, index_.live());
    }

    [[nodiscard]] Value query(Position i) {
        const ElementId* element = index_.find(i);
        if (element == nullptr) throw inactive(i);
        return stack_.value_of(*element);
    }

    void close(Position i) {
        if (!index_.erase(i)) throw inactive(i);
    }

    /// Rebuilds the structure around the active positions only. Returns the
    /// new capacity: 2c, or the initial capacity when nothing is active.
    std::size_t transfer() {
        const std::size_t active = index_.live();
        const std::size_t capacity = active == 0 ? initial_capacity_ : 2 * active;

        struct Entry {
            Level old_level;
            Position position;
        };
        std::vector<Entry> entries;
        entries.reserve(active);
        index_.for_each_live([&](Position p, ElementId e) { entries.push_back({stack_.find(e), p}); });

        // Old levels that still own an active position keep their relative order.
        const auto old_slots = stack_.slots();
        constexpr Level kDropped = std::numeric_limits<Level>::max();
        std::vector<Level> remap(old_slots.size(), kDropped);
        for (const Entry& entry : entries) remap[entry.old_level] = 0;

        std::vector<LinkedStack::Slot> slots{{kMinusInfinity, kNoElement}};
        for (std::size_t level = 1; level < old_slots.size(); ++level) {
            if (remap[level] == kDropped) continue;
            remap[level] = static_cast<Level>(slots.size());
            slots.push_back({old_slots[level].value, kNoElement});
        }
        if (slots.size() == 1) slots.push_back({j_ == 0 ? kPlusInfinity : last_value_, kNoElement});

        PositionForest forest(capacity);
        ActiveIndex<ElementId> index(capacity);
        ElementId element = 0;
        for (const Entry& entry : entries) {
            const Level level = remap[entry.old_level];
            forest.make_set(element, level);
            index.insert(entry.position, element);
            auto& set = slots[level].set;
            set = set == kNoElement ? element : forest.unite(set, element, level);
            ++element;
        }

        stack_ = LinkedStack(std::move(slots), std::move(forest));
        index_ = std::move(index);
        next_element_ = element;
        peak_capacity_ = std::max(peak_capacity_, capacity);
        ++transfers_;
        return capacity;
    }

    [[nodiscard]] CompactStats stats() const noexcept {
        return {index_.live(), index_.max_entries(), j_, stack_.depth(), index_.live(), index_.tombstones()};
    }

    /// Active positions paired with their current answer.
    [[nodiscard]] std::vector<std::pair<Position, Value>> active_answers() {
        std::vector<std::pair<Position, Value>> out;
        out.reserve(index_.live());
        index_.for_each_live([&](Position p, ElementId e) { out.emplace_back(p, stack_.value_of(e)); });
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Stack values with only the active positions of each level.
    [[nodiscard]] Snapshot snapshot() {
        Snapshot snap;
        for (const auto& slot : stack_.slots()) snap.values.push_back(slot.value);
        snap.sets.resize(snap.values.size());
        index_.for_each_live([&](Position p, ElementId e) { snap.sets[stack_.find(e)].push_back(p); });
        for (auto& set : snap.sets) std::sort(set.begin(), set.end());
        return snap;
    }

    [[nodiscard]] std::span<const LinkedStack::Slot> stack() const noexcept { return stack_.slots(); }
    [[nodiscard]] Position position() const noexcept { return j_; }
    [[nodiscard]] Value last_value() const noexcept { return last_value_; }
    [[nodiscard]] std::size_t initial_capacity() const noexcept { return initial_capacity_; }
    [[nodiscard]] std::size_t peak_capacity() const noexcept { return peak_capacity_; }
    [[nodiscard]] std::size_t peak_active() const noexcept { return peak_active_; }
    [[nodiscard]] std::size_t transfers() const noexcept { return transfers_; }

private:
    static error inactive(Position i) {
        return error(ErrorKind::inactive_position, "position " + std::to_string(i) + " is not active");
    }

    std::size_t initial_capacity_;
    LinkedStack stack_;
    ActiveIndex<ElementId> index_;
    ElementId next_element_ = 0;
    Position j_ = 0;
    Position last_marked_ = 0;
    Value last_value_ = kPlusInfinity;
    std::size_t peak_active_ = 0;
    std::size_t peak_capacity_ = 0;
    std::size_t transfers_ = 0;
};

}  // namespace srmq
