#pragma once

#include <cstddef>
#include <cstdint>

#include "circlekit/arith.hpp"

namespace circlekit::detail {

struct I128Hash {
    std::size_t operator()(i128 v) const noexcept
    {
        auto lo = static_cast<std::uint64_t>(v);
        auto hi = static_cast<std::uint64_t>(static_cast<u128>(v) >> 64);
        std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x7F4A7C159E3779B9ULL + (lo << 6) + (lo >> 2));
        h ^= h >> 31;
        return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
    }
};

/// Splits [0, count) into at most `blocks` contiguous ranges; the layout
/// depends only on its arguments, never on the worker count.
struct BlockRange {
    std::uint64_t begin;
    std::uint64_t end;
};

inline BlockRange block_range(std::uint64_t count, std::uint64_t blocks, std::uint64_t index)
{
    std::uint64_t base = count / blocks;
    std::uint64_t extra = count % blocks;
    std::uint64_t begin = index * base + (index < extra ? index : extra);
    return {begin, begin + base + (index < extra ? 1 : 0)};
}

inline std::uint64_t block_count(std::uint64_t count, std::uint64_t max_blocks = 64)
{
    return count < max_blocks ? (count == 0 ? 1 : count) : max_blocks;
}

} // namespace circlekit::detail
