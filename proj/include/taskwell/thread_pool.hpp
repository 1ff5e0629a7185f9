#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <future>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "taskwell/blocks.hpp"
#include "taskwell/detail/unique_task.hpp"
#include "taskwell/task_future.hpp"

namespace taskwell {

struct TaskCountSnapshot
{
    std::size_t queued = 0;
    std::size_t running = 0;
    std::size_t total = 0;

    friend bool operator==(const TaskCountSnapshot&, const TaskCountSnapshot&) = default;
};

/// Number of threads the platform can run at once, never less than 1.
[[nodiscard]] inline std::size_t hardware_concurrency() noexcept
{
    return std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
}

/// A fixed set of worker threads draining one FIFO task queue.
///
/// Workers sleep on a condition variable until a task is available and the
/// pool is not paused. A task is counted as queued until a worker dequeues it
/// and as running until its body returns, so every snapshot from
/// task_counts() satisfies total == queued + running.
///
/// Destroying the pool waits for all remaining tasks, unless it is paused, in
/// which case only running tasks finish and the queued ones are discarded
/// without being executed. reset(), wait_for_tasks() and the destructor must
/// not be called from inside a task of the same pool.
class ThreadPool
{
public:
    /// Called with the exception escaping a push_task() task.
    using ErrorHandler = std::function<void(std::exception_ptr)>;

    ThreadPool() : ThreadPool(hardware_concurrency()) {}

    /// A request for zero threads yields one.
    explicit ThreadPool(std::size_t thread_count)
    {
        std::lock_guard lock(mutex_);
        start_workers(std::max<std::size_t>(thread_count, 1));
    }

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;
    ThreadPool(ThreadPool&&) = delete;
    ThreadPool& operator=(ThreadPool&&) = delete;

    ~ThreadPool()
    {
        std::unique_lock lock(mutex_);
        task_done_.wait(lock, [this] { return running_ == 0 && (paused_ || queue_.empty()); });
        stop_workers(lock);
        // Anything still queued here was held back by the pause flag.
        auto discarded = std::move(queue_);
        lock.unlock();
    }

    [[nodiscard]] std::size_t thread_count() const
    {
        std::lock_guard lock(mutex_);
        return workers_.size();
    }

    /// Waits for running tasks, replaces the workers with `thread_count` new
    /// ones and lets them continue with the queued tasks. The pause state is
    /// preserved.
    void reset(std::size_t thread_count)
    {
        require_external_caller("reset");
        std::unique_lock lock(mutex_);
        draining_ = true;
        task_done_.wait(lock, [this] { return running_ == 0; });
        stop_workers(lock);
        draining_ = false;
        start_workers(std::max<std::size_t>(thread_count, 1));
        lock.unlock();
        task_available_.notify_all();
    }

    void reset() { reset(hardware_concurrency()); }

    /// Queues a task without a completion handle. The callable and its
    /// arguments are copied (or moved) into the task; any return value is
    /// discarded and an escaping exception goes to the error handler.
    template <typename F, typename... Args>
        requires std::is_invocable_v<std::decay_t<F>, std::decay_t<Args>...>
    void push_task(F&& task, Args&&... args)
    {
        enqueue(detail::UniqueTask(
            [this, fn = std::forward<F>(task), bound = std::make_tuple(std::forward<Args>(args)...)]() mutable {
                try
                {
                    std::apply(std::move(fn), std::move(bound));
                }
                catch (...)
                {
                    report_error(std::current_exception());
                }
            }));
    }

    /// Queues a task and returns a future for its result or exception.
    template <typename F, typename... Args, typename R = std::invoke_result_t<std::decay_t<F>, std::decay_t<Args>...>>
    [[nodiscard]] TaskFuture<R> submit(F&& task, Args&&... args)
    {
        std::promise<R> promise;
        TaskFuture<R> future(promise.get_future());
        enqueue(detail::UniqueTask([promise = std::move(promise), fn = std::forward<F>(task),
                                    bound = std::make_tuple(std::forward<Args>(args)...)]() mutable {
            try
            {
                if constexpr (std::is_void_v<R>)
                {
                    std::apply(std::move(fn), std::move(bound));
                    promise.set_value();
                }
                else
                {
                    promise.set_value(std::apply(std::move(fn), std::move(bound)));
                }
            }
            catch (...)
            {
                promise.set_exception(std::current_exception());
            }
        }));
        return future;
    }

    /// Runs `body(a, b)` once per block of the range between `first` and
    /// `last` (see compute_blocks). With `num_blocks == 0` the pool's thread
    /// count is used. The returned group covers exactly these tasks.
    template <typename T1, typename T2, typename F, typename T = std::common_type_t<T1, T2>,
              typename R = std::invoke_result_t<std::decay_t<F>&, T, T>>
        requires std::is_integral_v<T1> && std::is_integral_v<T2>
    MultiFuture<R> parallelize_loop(T1 first, T2 last, F&& body, std::size_t num_blocks = 0)
    {
        const BlockPartition partition =
            compute_blocks(static_cast<std::int64_t>(first), static_cast<std::int64_t>(last),
                           num_blocks == 0 ? thread_count() : num_blocks);
        MultiFuture<R> group(partition.size());
        for (const BlockRange& block : partition)
            group.push_back(submit(body, static_cast<T>(block.start), static_cast<T>(block.end)));
        return group;
    }

    /// Without pausing: blocks until no tasks are queued or running.
    /// While paused: blocks until no tasks are running.
    void wait_for_tasks()
    {
        require_external_caller("wait_for_tasks");
        std::unique_lock lock(mutex_);
        task_done_.wait(lock, [this] { return running_ == 0 && (paused_ || queue_.empty()); });
    }

    [[nodiscard]] TaskCountSnapshot task_counts() const
    {
        std::lock_guard lock(mutex_);
        return {queue_.size(), running_, queue_.size() + running_};
    }

    [[nodiscard]] std::size_t tasks_queued() const { return task_counts().queued; }
    [[nodiscard]] std::size_t tasks_running() const { return task_counts().running; }
    [[nodiscard]] std::size_t tasks_total() const { return task_counts().total; }

    void set_paused(bool value)
    {
        {
            std::lock_guard lock(mutex_);
            paused_ = value;
        }
        task_available_.notify_all();
        task_done_.notify_all();
    }

    [[nodiscard]] bool is_paused() const noexcept { return paused_.load(); }

    void set_error_handler(ErrorHandler handler)
    {
        std::lock_guard lock(mutex_);
        error_handler_ = std::move(handler);
    }

    /// True when called from one of this pool's workers.
    [[nodiscard]] bool is_worker_thread() const noexcept { return current_pool_ == this; }

private:
    // Caller holds mutex_.
    void start_workers(std::size_t count)
    {
        workers_.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            workers_.emplace_back([this] { worker_loop(); });
    }

    // Caller holds `lock` on entry and exit; it is released while joining.
    void stop_workers(std::unique_lock<std::mutex>& lock)
    {
        stopping_ = true;
        lock.unlock();
        task_available_.notify_all();
        // workers_ keeps its size while joining so thread_count() stays valid.
        for (auto& worker : workers_)
            worker.join();
        lock.lock();
        workers_.clear();
        stopping_ = false;
    }

    void worker_loop()
    {
        current_pool_ = this;
        std::unique_lock lock(mutex_);
        for (;;)
        {
            task_available_.wait(lock, [this] { return stopping_ || (!paused_ && !draining_ && !queue_.empty()); });
            if (stopping_)
                return;
            detail::UniqueTask task = std::move(queue_.front());
            queue_.pop_front();
            ++running_;
            lock.unlock();
            task();
            task = detail::UniqueTask();
            lock.lock();
            --running_;
            task_done_.notify_all();
        }
    }

    void enqueue(detail::UniqueTask task)
    {
        {
            std::lock_guard lock(mutex_);
            queue_.push_back(std::move(task));
        }
        task_available_.notify_one();
    }

    void report_error(std::exception_ptr error) noexcept
    {
        ErrorHandler handler;
        {
            std::lock_guard lock(mutex_);
            handler = error_handler_;
        }
        if (handler)
        {
            try
            {
                handler(std::move(error));
            }
            catch (...)
            {
            }
        }
    }

    void require_external_caller(const char* what) const
    {
        if (is_worker_thread())
            throw std::logic_error(std::string(what) + "() called from a worker of the same pool");
    }

    static inline thread_local const ThreadPool* current_pool_ = nullptr;

    mutable std::mutex mutex_;
    std::condition_variable task_available_;
    std::condition_variable task_done_;
    std::deque<detail::UniqueTask> queue_;
    std::vector<std::thread> workers_;
    std::size_t running_ = 0;
    std::atomic<bool> paused_{false};
    bool draining_ = false;
    bool stopping_ = false;
    ErrorHandler error_handler_;
};

} // namespace taskwell
