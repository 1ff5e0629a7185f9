#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace taskwell {

/// Half-open index interval [start, end).
struct BlockRange
{
    std::int64_t start = 0;
    std::int64_t end = 0;

    [[nodiscard]] constexpr std::int64_t size() const noexcept { return end - start; }

    friend constexpr bool operator==(const BlockRange&, const BlockRange&) = default;
};

struct BlockPartition
{
    std::vector<BlockRange> blocks;
    std::size_t requested = 1;

    [[nodiscard]] std::size_t size() const noexcept { return blocks.size(); }
    [[nodiscard]] bool empty() const noexcept { return blocks.empty(); }
    [[nodiscard]] auto begin() const noexcept { return blocks.begin(); }
    [[nodiscard]] auto end() const noexcept { return blocks.end(); }
    [[nodiscard]] const BlockRange& operator[](std::size_t i) const { return blocks[i]; }
};

/// Splits the indices between `first` and `last` into contiguous blocks of
/// equal length, the last block absorbing the remainder.
///
/// A descending pair is normalized to [last, first). The number of blocks is
/// min(n, range length), so no block is ever empty; an empty range yields no
/// blocks. n == 0 is treated as 1.
[[nodiscard]] inline BlockPartition compute_blocks(std::int64_t first, std::int64_t last, std::size_t n)
{
    BlockPartition partition;
    partition.requested = std::max<std::size_t>(n, 1);

    if (last < first)
        std::swap(first, last);
    // Unsigned subtraction stays exact even when the span exceeds INT64_MAX.
    const auto length = static_cast<std::uint64_t>(last) - static_cast<std::uint64_t>(first);
    if (length == 0)
        return partition;

    const std::uint64_t count = std::min<std::uint64_t>(partition.requested, length);
    const std::uint64_t block = length / count;
    partition.blocks.reserve(static_cast<std::size_t>(count));

    auto at = static_cast<std::uint64_t>(first);
    for (std::uint64_t i = 0; i < count; ++i)
    {
        const std::uint64_t next = (i + 1 == count) ? static_cast<std::uint64_t>(last) : at + block;
        partition.blocks.push_back({static_cast<std::int64_t>(at), static_cast<std::int64_t>(next)});
        at = next;
    }
    return partition;
}

} // namespace taskwell
