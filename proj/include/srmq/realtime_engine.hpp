#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srmq/active_index.hpp"
#include "srmq/command.hpp"
#include "srmq/linked_stack.hpp"

namespace srmq {

enum class SearchMode : std::uint8_t { binary, exponential };

/*
 * Stack whose slots store only the smallest position ever merged into them.
 *
 * Position sets are contiguous in position order, so the set holding i is
 * the highest slot whose min_pos <= i: Find is a predecessor search and a
 * batch of Unions is just truncating the stack. Closed positions stay as
 * representatives until the next rebuild; the index only answers "is i
 * still active".
 *
 * Exponential search starts at the top, costing O(1 + log d) for d slots
 * skipped; binary search is O(log depth).
 */
class RealtimeEngine {
public:
    static constexpr std::string_view kName = "realtime";
    static constexpr std::size_t kDefaultInitialCapacity = 16;
    /// min_pos of the sentinel and of a slot that never owned a position.
    static constexpr Position kNoPosition = 0;

    struct Slot {
        Value value = kPlusInfinity;
        Position min_pos = kNoPosition;

        friend bool operator==(const Slot&, const Slot&) = default;
    };

    explicit RealtimeEngine(SearchMode mode = SearchMode::binary,
                            std::size_t initial_capacity = kDefaultInitialCapacity)
        : mode_(mode),
          initial_capacity_(std::max<std::size_t>(initial_capacity, 1)),
          index_(initial_capacity_),
          peak_capacity_(initial_capacity_) {}

    [[nodiscard]] std::string_view name() const noexcept { return kName; }
    [[nodiscard]] SearchMode mode() const noexcept { return mode_; }

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
        if (slots_.back().value > v) {
            const std::size_t t = lowest_at_least(v);
            // The truncated slots' sets all merge into slot t; its min_pos is
            // already the smallest unless t never owned a position.
            if (slots_[t].min_pos == kNoPosition && t + 1 < slots_.size()) slots_[t].min_pos = slots_[t + 1].min_pos;
            slots_.resize(t + 1);
            slots_[t].value = v;
        }
        last_value_ = v;
        ++j_;
    }

    void mark() {
        if (j_ == 0) throw error(ErrorKind::invalid_state, "Mark before any Value");
        if (last_marked_ == j_) return;
        if (index_.full()) transfer();
        index_.insert(j_, Unit{});
        if (slots_.back().value < last_value_)
            slots_.push_back({last_value_, j_});
        else if (slots_.back().min_pos == kNoPosition)
            slots_.back().min_pos = j_;
        last_marked_ = j_;
        peak_active_ = std::max(peak_active_, index_.live());
    }

    [[nodiscard]] Value query(Position i) const {
        if (index_.find(i) == nullptr) throw inactive(i);
        return slots_[level_of(i)].value;
    }

    void close(Position i) {
        if (!index_.erase(i)) throw inactive(i);
    }

    /// Highest level whose min_pos <= i; for an active i this is the slot
    /// whose set contains i. Does not consult the active index.
    [[nodiscard]] std::size_t level_of(Position i) const noexcept {
        const auto by_pos = [](const Slot& s) { return s.min_pos; };
        std::size_t lo = 0;
        std::size_t hi = slots_.size();
        if (mode_ == SearchMode::exponential) {
            // Walk down from the top doubling the stride until min_pos <= i.
            std::size_t step = 1;
            hi = slots_.size();
            while (true) {
                const std::size_t probe = hi > step ? hi - step : 0;
                if (slots_[probe].min_pos <= i) {
                    lo = probe;
                    break;
                }
                hi = probe;
                step *= 2;
            }
        }
        auto it = std::ranges::upper_bound(slots_.begin() + static_cast<std::ptrdiff_t>(lo),
                                           slots_.begin() + static_cast<std::ptrdiff_t>(hi), i, {}, by_pos);
        return static_cast<std::size_t>(it - slots_.begin()) - 1;
    }

    /// Value of the slot found by level_of(i); the answer for RMQ(i, j)
    /// whenever i belongs to some slot's set.
    [[nodiscard]] Value slot_value_at(Position i) const noexcept { return slots_[level_of(i)].value; }

    /// Rebuilds around the active positions: slots owning none are dropped and
    /// every kept slot is re-represented by its smallest active position.
    std::size_t transfer() {
        const std::size_t active = index_.live();
        const std::size_t capacity = active == 0 ? initial_capacity_ : 2 * active;

        std::vector<Position> smallest(slots_.size(), kNoPosition);
        index_.for_each_live([&](Position p, Unit) {
            Position& m = smallest[level_of(p)];
            if (m == kNoPosition || p < m) m = p;
        });

        std::vector<Slot> slots{{kMinusInfinity, kNoPosition}};
        for (std::size_t level = 1; level < slots_.size(); ++level)
            if (smallest[level] != kNoPosition) slots.push_back({slots_[level].value, smallest[level]});
        if (slots.size() == 1) slots.push_back({j_ == 0 ? kPlusInfinity : last_value_, kNoPosition});

        ActiveIndex<Unit> index(capacity);
        index_.for_each_live([&](Position p, Unit) { index.insert(p, Unit{}); });

        slots_ = std::move(slots);
        index_ = std::move(index);
        peak_capacity_ = std::max(peak_capacity_, capacity);
        ++transfers_;
        return capacity;
    }

    [[nodiscard]] std::vector<std::pair<Position, Value>> active_answers() const {
        std::vector<std::pair<Position, Value>> out;
        out.reserve(index_.live());
        index_.for_each_live([&](Position p, Unit) { out.emplace_back(p, slot_value_at(p)); });
        std::sort(out.begin(), out.end());
        return out;
    }

    [[nodiscard]] std::span<const Slot> stack() const noexcept { return slots_; }
    [[nodiscard]] Position position() const noexcept { return j_; }
    [[nodiscard]] Value last_value() const noexcept { return last_value_; }
    [[nodiscard]] std::size_t active() const noexcept { return index_.live(); }
    [[nodiscard]] std::size_t capacity() const noexcept { return index_.max_entries(); }
    [[nodiscard]] std::size_t peak_capacity() const noexcept { return peak_capacity_; }
    [[nodiscard]] std::size_t peak_active() const noexcept { return peak_active_; }
    [[nodiscard]] std::size_t transfers() const noexcept { return transfers_; }

private:
    static error inactive(Position i) {
        return error(ErrorKind::inactive_position, "position " + std::to_string(i) + " is not active");
    }

    /// Lowest level >= 1 whose value is >= v. Precondition: top value > v.
    [[nodiscard]] std::size_t lowest_at_least(Value v) const noexcept {
        const auto by_value = [](const Slot& s) { return s.value; };
        std::size_t lo = 1;
        std::size_t hi = slots_.size();
        if (mode_ == SearchMode::exponential) {
            // slots_[hi - 1] >= v holds throughout; find a probe below v.
            std::size_t step = 1;
            const std::size_t top = slots_.size() - 1;
            while (true) {
                const std::size_t probe = top > step ? top - step : 0;
                if (slots_[probe].value < v) {
                    lo = probe + 1;
                    break;
                }
                hi = probe + 1;
                step *= 2;
            }
        }
        auto it = std::ranges::lower_bound(slots_.begin() + static_cast<std::ptrdiff_t>(lo),
                                           slots_.begin() + static_cast<std::ptrdiff_t>(hi), v, {}, by_value);
        return static_cast<std::size_t>(it - slots_.begin());
    }

    SearchMode mode_;
    std::size_t initial_capacity_;
    std::vector<Slot> slots_{{kMinusInfinity, kNoPosition}, {kPlusInfinity, kNoPosition}};
    ActiveIndex<Unit> index_;
    Position j_ = 0;
    Position last_marked_ = 0;
    Value last_value_ = kPlusInfinity;
    std::size_t peak_active_ = 0;
    std::size_t peak_capacity_ = 0;
    std::size_t transfers_ = 0;
};

}  // namespace srmq
