#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "taskwell/stopwatch.hpp"

namespace taskwell::harness {

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// xorshift64* generator. Each benchmark vector gets its own stream derived
/// from (seed, index), so results do not depend on which thread fills it.
class VectorRng
{
public:
    VectorRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : state_(splitmix64(seed ^ splitmix64(stream)))
    {
        if (state_ == 0)
            state_ = 0x2545F4914F6CDD1DULL;
    }

    std::uint64_t next() noexcept
    {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    /// Uniform in (0, 1].
    double uniform() noexcept { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (one value per pair of draws).
    double normal() noexcept
    {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        return r * std::cos(2.0 * std::numbers::pi * uniform());
    }

private:
    std::uint64_t state_;
};

using VectorSet = std::vector<std::vector<double>>;

[[nodiscard]] inline VectorSet make_vectors(std::size_t count, std::size_t length)
{
    return VectorSet(count, std::vector<double>(length));
}

inline void fill_vector(std::span<double> out, std::uint64_t seed, std::uint64_t index) noexcept
{
    VectorRng rng(seed, index);
    for (double& x : out)
        x = rng.normal();
}

/// Fills vectors[begin, end) deterministically from `seed`.
inline void fill_vectors(VectorSet& vectors, std::uint64_t seed, std::size_t begin, std::size_t end) noexcept
{
    for (std::size_t i = begin; i < end; ++i)
        fill_vector(vectors[i], seed, i);
}

[[nodiscard]] inline double time_serial_fill(VectorSet& vectors, std::uint64_t seed)
{
    Stopwatch watch;
    watch.start();
    fill_vectors(vectors, seed, 0, vectors.size());
    watch.stop();
    return watch.ms();
}

/// Number of vectors whose single-threaded fill takes at least `target_ms`.
///
/// Doubles from 64 until the target is reached, then bisects between the
/// last two counts until the fill time is within 10% above the target.
[[nodiscard]] inline std::size_t calibrate_workload(double target_ms, std::size_t vector_len, std::uint64_t seed)
{
    if (!(target_ms > 0.0))
        throw std::invalid_argument("calibrate_workload: target_ms must be positive");
    if (vector_len == 0)
        throw std::invalid_argument("calibrate_workload: vector_len must be positive");

    const auto measure = [&](std::size_t count) {
        VectorSet vectors = make_vectors(count, vector_len);
        return time_serial_fill(vectors, seed);
    };

    measure(64);  // warm-up
    std::size_t hi = 64;
    double hi_ms = measure(hi);
    while (hi_ms < target_ms)
    {
        hi *= 2;
        hi_ms = measure(hi);
    }
    if (hi == 64)
        return hi;

    std::size_t lo = hi / 2;
    while (hi - lo > 1 && hi_ms > 1.1 * target_ms)
    {
        const std::size_t mid = lo + (hi - lo) / 2;
        const double mid_ms = measure(mid);
        if (mid_ms >= target_ms)
        {
            hi = mid;
            hi_ms = mid_ms;
        }
        else
        {
            lo = mid;
        }
    }
    return hi;
}

} // namespace taskwell::harness
