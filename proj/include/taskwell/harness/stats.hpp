#pragma once

#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>

namespace taskwell::harness {

struct SampleStats
{
    double mean = 0.0;
    double stddev = 0.0;
};

/// Arithmetic mean and population standard deviation (divides by n).
[[nodiscard]] inline SampleStats summarize(std::span<const double> samples)
{
    if (samples.empty())
        throw std::invalid_argument("summarize: empty sample");
    const auto n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double squares = 0.0;
    for (const double x : samples)
        squares += (x - mean) * (x - mean);
    return {mean, std::sqrt(squares / n)};
}

} // namespace taskwell::harness
