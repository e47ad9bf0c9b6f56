#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "srmq/error.hpp"

namespace srmq {

using ElementId = std::uint32_t;
/// Index into an engine stack; 0 is the bottom sentinel.
using Level = std::uint32_t;

inline constexpr ElementId kNoElement = std::numeric_limits<ElementId>::max();

/*
 * Disjoint-set forest with union by rank and full path compression. Every
 * root carries the stack level its set is attached to; the level follows the
 * set through unions regardless of which root wins.
 *
 * Elements are dense ids chosen by the caller. There is no deletion.
 */
class PositionForest {
public:
    PositionForest() = default;
    explicit PositionForest(std::size_t capacity) { reserve(capacity); }

    void reserve(std::size_t capacity) {
        parent_.reserve(capacity);
        rank_.reserve(capacity);
        level_.reserve(capacity);
    }

    ElementId make_set(ElementId element, Level level) {
        if (element == kNoElement) throw error(ErrorKind::missing_element, "element id is reserved");
        if (element >= parent_.size()) {
            parent_.resize(std::size_t{element} + 1, kNoElement);
            rank_.resize(std::size_t{element} + 1, 0);
            level_.resize(std::size_t{element} + 1, 0);
        } else if (parent_[element] != kNoElement) {
            throw error(ErrorKind::duplicate_element, "element " + std::to_string(element) + " already present");
        }
        parent_[element] = element;
        rank_[element] = 0;
        level_[element] = level;
        ++count_;
        return element;
    }

    /// Merges the sets of `a` and `b` and attaches the result to `level`.
    /// `unite(x, x, L)` just moves x's set to level L.
    ElementId unite(ElementId a, ElementId b, Level level) {
        ElementId ra = root(a);
        ElementId rb = root(b);
        if (ra != rb) {
            if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
            parent_[rb] = ra;
            if (rank_[ra] == rank_[rb]) ++rank_[ra];
        }
        level_[ra] = level;
        return ra;
    }

    [[nodiscard]] Level find(ElementId element) { return level_[root(element)]; }

    /// Representative of `element`'s set, compressing the path on the way.
    ElementId root(ElementId element) {
        check(element);
        ElementId r = element;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[element] != r) {
            const ElementId next = parent_[element];
            parent_[element] = r;
            element = next;
        }
        return r;
    }

    [[nodiscard]] bool contains(ElementId element) const noexcept {
        return element < parent_.size() && parent_[element] != kNoElement;
    }

    [[nodiscard]] std::size_t size() const noexcept { return count_; }

    // Inspection helpers for tests; none of them compress paths.
    [[nodiscard]] ElementId parent_of(ElementId element) const {
        check(element);
        return parent_[element];
    }
    [[nodiscard]] std::uint8_t rank_of(ElementId element) const {
        check(element);
        return rank_[element];
    }
    [[nodiscard]] std::size_t depth_of(ElementId element) const {
        check(element);
        std::size_t d = 0;
        while (parent_[element] != element) {
            element = parent_[element];
            ++d;
        }
        return d;
    }

private:
    void check(ElementId element) const {
        if (!contains(element)) throw error(ErrorKind::missing_element, "element " + std::to_string(element) + " not present");
    }

    std::vector<ElementId> parent_;
    std::vector<std::uint8_t> rank_;
    std::vector<Level> level_;
    std::size_t count_ = 0;
};

}  // namespace srmq
