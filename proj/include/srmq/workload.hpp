#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "srmq/command.hpp"

namespace srmq {

/*
 * xoshiro256** (Blackman & Vigna), seeded by expanding the 64-bit seed with
 * splitmix64. Both are fixed integer recipes, so a seed yields the same
 * stream in any language:
 *
 *   splitmix64: x += 0x9e3779b97f4a7c15;
 *               z = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9;
 *               z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
 *               return z ^ (z >> 31);
 *   next():     r = rotl(s1 * 5, 7) * 9; t = s1 << 17;
 *               s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)
 *
 * uniform(bound) uses rejection on the low end: draws below
 * (2^64 - bound) mod bound are discarded, the rest are reduced mod bound.
 */
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed) noexcept {
        for (auto& word : state_) word = splitmix64(seed);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, bound). Precondition: bound > 0.
    std::uint64_t uniform(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            const std::uint64_t r = (*this)();
            if (r >= threshold) return r % bound;
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    static constexpr std::uint64_t splitmix64(std::uint64_t& x) noexcept {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> state_{};
};

/// n values, q marked positions, each queried and closed exactly `l - 1`
/// values after it was marked, with l chosen so that about `ell` positions
/// are open at any time.
struct WorkloadSpec {
    std::uint64_t n = 0;
    std::uint64_t q = 0;
    double ell = 1.0;
    std::uint64_t seed = 0;
    std::uint64_t value_bound = std::uint64_t{1} << 30;
};

/// Query interval length l = round(ell * n / q); 1 when q = 0.
[[nodiscard]] inline std::uint64_t window_length(const WorkloadSpec& spec) noexcept {
    if (spec.q == 0) return 1;
    const double l = std::round(spec.ell * static_cast<double>(spec.n) / static_cast<double>(spec.q));
    return l < 1.0 ? 0 : static_cast<std::uint64_t>(l);
}

/// Expected open positions at a given time: l * q / n.
[[nodiscard]] inline double expected_open(const WorkloadSpec& spec) noexcept {
    if (spec.q == 0 || spec.n == 0) return 0.0;
    return static_cast<double>(window_length(spec)) * static_cast<double>(spec.q) / static_cast<double>(spec.n);
}

inline void check_spec(const WorkloadSpec& spec) {
    const auto bad = [](const std::string& why) { throw error(ErrorKind::bad_spec, "workload: " + why); };
    if (spec.n == 0) bad("n must be >= 1");
    if (spec.value_bound == 0) bad("value bound must be >= 1");
    if (spec.value_bound > static_cast<std::uint64_t>(kPlusInfinity)) bad("value bound exceeds int64 range");
    if (spec.q == 0) return;
    if (!(spec.ell > 0.0)) bad("ell must be positive");
    const std::uint64_t l = window_length(spec);
    if (l < 1) bad("derived window length l < 1");
    if (l > spec.n) bad("derived window length l = " + std::to_string(l) + " exceeds n");
}

/// Marks actually emitted: q, capped by the n - l + 1 positions whose query fits.
[[nodiscard]] inline std::uint64_t effective_marks(const WorkloadSpec& spec) noexcept {
    if (spec.q == 0) return 0;
    return std::min(spec.q, spec.n - window_length(spec) + 1);
}

/// Values are drawn first (n draws), then the mark positions uniformly from
/// [1, n - l + 1], redrawing any position already chosen; when q covers every
/// markable position all of them are marked without drawing. After the V at
/// position t the stream carries "M" if t was chosen, then "Q p C p" for the
/// p with p + l - 1 = t.
[[nodiscard]] inline std::vector<Command> generate(const WorkloadSpec& spec) {
    check_spec(spec);
    Xoshiro256 rng(spec.seed);
    std::vector<Value> values(spec.n);
    for (auto& v : values) v = static_cast<Value>(rng.uniform(spec.value_bound));

    const std::uint64_t l = window_length(spec);
    const std::uint64_t markable = spec.n - l + 1;
    const std::uint64_t marks = effective_marks(spec);
    std::vector<bool> marked(spec.n + 1, false);
    if (marks == markable) std::fill(marked.begin() + 1, marked.begin() + 1 + static_cast<std::ptrdiff_t>(markable), true);
    for (std::uint64_t drawn = marks == markable ? marks : 0; drawn < marks;) {
        const std::uint64_t p = 1 + rng.uniform(markable);
        if (marked[p]) continue;
        marked[p] = true;
        ++drawn;
    }

    std::vector<Command> out;
    out.reserve(spec.n + 3 * spec.q);
    for (std::uint64_t t = 1; t <= spec.n; ++t) {
        out.push_back(Command::value(values[t - 1]));
        if (marked[t]) out.push_back(Command::mark());
        if (spec.q == 0 || t < l) continue;
        const std::uint64_t p = t - l + 1;
        if (marked[p]) {
            out.push_back(Command::query(static_cast<Position>(p)));
            out.push_back(Command::close(static_cast<Position>(p)));
        }
    }
    return out;
}

}  // namespace srmq
