#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "srmq/command.hpp"

namespace srmq {

/// Membership-only payload for ActiveIndex.
struct Unit {};

enum class EntryState : std::uint8_t { absent, live, tombstoned };

/*
 * Open-addressing table keyed by sequence position with linear probing.
 * Close never removes an entry: the key is negated in place (a tombstone)
 * and the slot keeps counting against capacity until the owner rebuilds.
 *
 * The table holds at most `max_entries` live-or-tombstoned keys and keeps
 * at least twice that many slots, so the load factor never exceeds 1/2.
 */
template <typename Mapped>
class ActiveIndex {
public:
    explicit ActiveIndex(std::size_t max_entries = 16)
        : max_entries_(max_entries), slots_(std::bit_ceil(std::max<std::size_t>(2 * max_entries, 4))) {
        mask_ = slots_.size() - 1;
    }

    [[nodiscard]] bool full() const noexcept { return entries_ >= max_entries_; }
    [[nodiscard]] std::size_t max_entries() const noexcept { return max_entries_; }
    [[nodiscard]] std::size_t live() const noexcept { return live_; }
    [[nodiscard]] std::size_t tombstones() const noexcept { return entries_ - live_; }
    [[nodiscard]] std::size_t entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t slot_count() const noexcept { return slots_.size(); }

    /// Inserts a live key. Returns false (and changes nothing) if `p` is
    /// already live. A tombstoned `p` is revived in place with the new value.
    /// Precondition: p >= 1 and !full() unless p is already present.
    bool insert(Position p, Mapped value) {
        std::size_t s = probe(p);
        Slot& slot = slots_[s];
        if (slot.key == p) return false;
        if (slot.key == -p) {
            slot.key = p;
            slot.value = value;
            ++live_;
            return true;
        }
        slot.key = p;
        slot.value = value;
        ++entries_;
        ++live_;
        return true;
    }

    /// The mapped value of a live key, or nullptr.
    [[nodiscard]] const Mapped* find(Position p) const noexcept {
        if (p < 1) return nullptr;
        const Slot& slot = slots_[probe(p)];
        return slot.key == p ? &slot.value : nullptr;
    }

    [[nodiscard]] EntryState state(Position p) const noexcept {
        if (p < 1) return EntryState::absent;
        const Slot& slot = slots_[probe(p)];
        if (slot.key == p) return EntryState::live;
        if (slot.key == -p) return EntryState::tombstoned;
        return EntryState::absent;
    }

    /// Tombstones a live key. Returns false if `p` was not live.
    bool erase(Position p) noexcept {
        if (p < 1) return false;
        Slot& slot = slots_[probe(p)];
        if (slot.key != p) return false;
        slot.key = -p;
        --live_;
        return true;
    }

    template <typename F>
    void for_each_live(F&& f) const {
        for (const Slot& slot : slots_)
            if (slot.key > 0) f(slot.key, slot.value);
    }

private:
    struct Slot {
        Position key = 0;  // 0 empty, >0 live, <0 tombstone of -key
        Mapped value{};
    };

    // Fibonacci hashing; positions arrive in increasing order, so the
    // multiply spreads consecutive keys across the table.
    [[nodiscard]] std::size_t home(Position p) const noexcept {
        const std::uint64_t h = static_cast<std::uint64_t>(p) * 0x9E3779B97F4A7C15ull;
        return static_cast<std::size_t>(h >> 32) & mask_;
    }

    /// Slot holding p (live or tombstoned) or the empty slot ending its chain.
    [[nodiscard]] std::size_t probe(Position p) const noexcept {
        std::size_t s = home(p);
        while (slots_[s].key != 0 && slots_[s].key != p && slots_[s].key != -p) s = (s + 1) & mask_;
        return s;
    }

    std::size_t max_entries_;
    std::vector<Slot> slots_;
    std::size_t mask_ = 0;
    std::size_t entries_ = 0;
    std::size_t live_ = 0;
};

}  // namespace srmq
