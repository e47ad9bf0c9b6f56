#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "srmq/command.hpp"
#include "srmq/realtime_engine.hpp"

namespace srmq {

/*
 * Logarithmic list of retained start positions for approximate queries.
 *
 * Each advance appends the new position j and checks two consecutive
 * triples (i1, i2, i3) at the sweep cursor, moving towards larger
 * positions. The middle i2 survives only if j - i1 > 2 (j - i3). A dropped
 * middle leaves the cursor in place, so the next check sees the shifted
 * triple. The cursor wraps to the first triple once it runs out of triples;
 * the first and last elements are never checked.
 */
struct ApproxWindow {
    std::vector<Position> positions;  ///< strictly increasing; back() is the latest j
    std::size_t cursor = 1;           ///< index of the middle element of the next triple

    /// Appends j (which must be back() + 1, or 1 on an empty window). Dropped
    /// positions are appended to `discarded` when given.
    void advance(Position j, std::vector<Position>* discarded = nullptr) {
        positions.push_back(j);
        for (int check = 0; check < 2 && positions.size() >= 3; ++check) {
            const Position first = positions[cursor - 1];
            const Position third = positions[cursor + 1];
            if (j - first > 2 * (j - third)) {
                ++cursor;
            } else {
                if (discarded != nullptr) discarded->push_back(positions[cursor]);
                positions.erase(positions.begin() + static_cast<std::ptrdiff_t>(cursor));
            }
            if (cursor + 1 >= positions.size()) cursor = 1;
        }
    }

    /// Largest retained position <= i. Precondition: i >= positions.front().
    [[nodiscard]] Position predecessor(Position i) const noexcept {
        auto it = std::upper_bound(positions.begin(), positions.end(), i);
        return it == positions.begin() ? positions.front() : *(it - 1);
    }

    [[nodiscard]] std::size_t size() const noexcept { return positions.size(); }

    friend bool operator==(const ApproxWindow&, const ApproxWindow&) = default;
};

[[nodiscard]] inline ApproxWindow window_advance(ApproxWindow w, Position j) {
    w.advance(j);
    return w;
}

struct ApproxAnswer {
    Value value = kPlusInfinity;
    Position used = 0;  ///< i' actually queried, i' <= i
};

/// Answers RMQ(i', j) for the retained i' closest to i, bypassing the
/// engine's active index. Every retained position must be marked in `engine`.
[[nodiscard]] inline ApproxAnswer query_approx(const ApproxWindow& w, const RealtimeEngine& engine, Position i) {
    const Position used = w.predecessor(i);
    return {engine.slot_value_at(used), used};
}

/// Realtime engine driven in approximate mode: every position is marked,
/// positions dropped from the window are closed, so at most O(log n)
/// positions are active at any time.
class ApproxRmq {
public:
    explicit ApproxRmq(SearchMode mode = SearchMode::binary, std::size_t initial_capacity = 16)
        : engine_(mode, initial_capacity) {}

    void value(Value v) {
        engine_.value(v);
        dropped_.clear();
        window_.advance(engine_.position(), &dropped_);
        engine_.mark();
        for (Position p : dropped_) engine_.close(p);
    }

    /// Precondition: 1 <= i <= position().
    [[nodiscard]] ApproxAnswer query(Position i) const { return query_approx(window_, engine_, i); }

    [[nodiscard]] const ApproxWindow& window() const noexcept { return window_; }
    [[nodiscard]] const RealtimeEngine& engine() const noexcept { return engine_; }
    [[nodiscard]] Position position() const noexcept { return engine_.position(); }

private:
    RealtimeEngine engine_;
    ApproxWindow window_;
    std::vector<Position> dropped_;
};

}  // namespace srmq
