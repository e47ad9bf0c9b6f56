#pragma once

#include <span>
#include <vector>

#include "srmq/command.hpp"
#include "srmq/union_find.hpp"

namespace srmq {

/// Stack values bottom-to-top and, per level, the positions that answer to it.
struct Snapshot {
    std::vector<Value> values;
    std::vector<std::vector<Position>> sets;  ///< sets[k] sorted ascending; sets.size() == values.size()

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/*
 * Monotonic stack whose slots own position sets kept in a PositionForest.
 * Shared by the vanilla and compact engines; the engines decide how
 * sequence positions map to forest elements.
 *
 * Starts as [-inf, +inf]. Slot 0 never owns a set.
 */
class LinkedStack {
public:
    struct Slot {
        Value value = kPlusInfinity;
        /// Any element of the slot's set, kNoElement if the slot owns none.
        ElementId set = kNoElement;
    };

    LinkedStack() : slots_{{kMinusInfinity, kNoElement}, {kPlusInfinity, kNoElement}} {}
    LinkedStack(std::vector<Slot> slots, PositionForest forest) : slots_(std::move(slots)), forest_(std::move(forest)) {}

    /// Pops every slot below the top whose value is >= v, folding each popped
    /// set into the survivor, then lowers the top to v. No-op if top <= v.
    void push_value(Value v) {
        if (slots_.back().value <= v) return;
        while (slots_[slots_.size() - 2].value >= v) {
            const ElementId popped = slots_.back().set;
            slots_.pop_back();
            Slot& survivor = slots_.back();
            survivor.set = join(survivor.set, popped, top_level());
        }
        slots_.back().value = v;
    }

    /// Registers a freshly marked element whose value is `v` (the last Value).
    void attach(ElementId element, Value v) {
        if (slots_.back().value < v) slots_.push_back({v, kNoElement});
        forest_.make_set(element, top_level());
        Slot& top = slots_.back();
        top.set = join(top.set, element, top_level());
    }

    [[nodiscard]] Level find(ElementId element) { return forest_.find(element); }
    [[nodiscard]] Value value_of(ElementId element) { return slots_[forest_.find(element)].value; }

    [[nodiscard]] std::span<const Slot> slots() const noexcept { return slots_; }
    [[nodiscard]] std::size_t depth() const noexcept { return slots_.size(); }
    [[nodiscard]] Level top_level() const noexcept { return static_cast<Level>(slots_.size() - 1); }
    [[nodiscard]] PositionForest& forest() noexcept { return forest_; }

private:
    ElementId join(ElementId a, ElementId b, Level level) {
        if (a == kNoElement && b == kNoElement) return kNoElement;
        if (a == kNoElement) return forest_.unite(b, b, level);
        if (b == kNoElement) return forest_.unite(a, a, level);
        return forest_.unite(a, b, level);
    }

    std::vector<Slot> slots_;
    PositionForest forest_;
};

}  // namespace srmq
