#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>

namespace taskwell {

/// Wall-clock timer on the monotonic clock: start(), stop(), then ms().
class Stopwatch
{
public:
    using clock = std::chrono::steady_clock;

    void start() noexcept
    {
        start_ = clock::now();
        stop_.reset();
    }

    void stop()
    {
        if (!start_)
            throw std::logic_error("Stopwatch::stop() called before start()");
        stop_ = clock::now();
    }

    /// Milliseconds between the most recent start() and stop().
    [[nodiscard]] double ms() const
    {
        if (!start_ || !stop_)
            throw std::logic_error("Stopwatch::ms() requires a start()/stop() pair");
        return std::chrono::duration<double, std::milli>(*stop_ - *start_).count();
    }

private:
    std::optional<clock::time_point> start_;
    std::optional<clock::time_point> stop_;
};

} // namespace taskwell
