#pragma once

#include <chrono>
#include <cstddef>
#include <exception>
#include <future>
#include <type_traits>
#include <utility>
#include <vector>

namespace taskwell {

/// Single-use completion handle for a task submitted to a ThreadPool.
///
/// Becomes ready with the task's return value, or failed with whatever the
/// task threw. `get()` may be called at most once; a second call throws
/// `std::future_error` with `std::future_errc::no_state`.
template <typename T>
class TaskFuture
{
public:
    using value_type = T;

    TaskFuture() = default;
    explicit TaskFuture(std::future<T> future) noexcept : future_(std::move(future)) {}

    /// True until `get()` has consumed the result.
    [[nodiscard]] bool valid() const noexcept { return future_.valid(); }

    /// Non-blocking: true once the task has finished (successfully or not).
    [[nodiscard]] bool ready() const
    {
        require_state();
        return future_.wait_for(std::chrono::seconds(0)) == std::future_status::ready;
    }

    void wait() const
    {
        require_state();
        future_.wait();
    }

    /// Waits if needed, then returns the value or rethrows the task's exception.
    T get()
    {
        require_state();
        return future_.get();
    }

private:
    void require_state() const
    {
        if (!future_.valid())
            throw std::future_error(std::future_errc::no_state);
    }

    std::future<T> future_;
};

/// An ordered group of futures, used to wait on one batch of related tasks
/// without waiting for everything else in the pool.
template <typename T>
class MultiFuture
{
public:
    using value_type = T;
    using result_type = std::conditional_t<std::is_void_v<T>, void, std::vector<T>>;

    MultiFuture() = default;
    explicit MultiFuture(std::size_t reserve) { futures.reserve(reserve); }

    void push_back(TaskFuture<T> future) { futures.push_back(std::move(future)); }

    [[nodiscard]] std::size_t size() const noexcept { return futures.size(); }
    [[nodiscard]] bool empty() const noexcept { return futures.empty(); }

    void wait() const
    {
        for (const auto& future : futures)
            future.wait();
    }

    /// Results in storage order. Every future is settled and consumed before
    /// the first stored failure (if any) is rethrown.
    result_type get()
    {
        wait();
        std::exception_ptr first_failure;
        if constexpr (std::is_void_v<T>)
        {
            for (auto& future : futures)
                consume(future, first_failure);
            if (first_failure)
                std::rethrow_exception(first_failure);
        }
        else
        {
            std::vector<T> results;
            results.reserve(futures.size());
            for (auto& future : futures)
            {
                try
                {
                    results.push_back(future.get());
                }
                catch (...)
                {
                    if (!first_failure)
                        first_failure = std::current_exception();
                }
            }
            if (first_failure)
                std::rethrow_exception(first_failure);
            return results;
        }
    }

    std::vector<TaskFuture<T>> futures;

private:
    static void consume(TaskFuture<T>& future, std::exception_ptr& first_failure)
    {
        try
        {
            future.get();
        }
        catch (...)
        {
            if (!first_failure)
                first_failure = std::current_exception();
        }
    }
};

} // namespace taskwell
