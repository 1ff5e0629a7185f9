#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <random>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "taskwell/harness/automated_tests.hpp"
#include "taskwell/thread_pool.hpp"
#include "taskwell/version.hpp"
#include "test_support.hpp"

namespace taskwell {
namespace {

using namespace std::chrono_literals;
using harness::count_unique_worker_ids;
using test::eventually;
using test::Gate;

TEST(ThreadPool, DefaultUsesHardwareConcurrency)
{
    ThreadPool pool;
    EXPECT_EQ(pool.thread_count(), hardware_concurrency());
    EXPECT_GE(pool.thread_count(), 1U);
}

TEST(ThreadPool, ExplicitThreadCount)
{
    ThreadPool twelve(12);
    EXPECT_EQ(twelve.thread_count(), 12U);
    EXPECT_EQ(count_unique_worker_ids(twelve), 12U);
    ThreadPool four(4);
    EXPECT_EQ(four.thread_count(), 4U);
}

TEST(ThreadPool, ZeroThreadsClampedToOne)
{
    ThreadPool pool(0);
    EXPECT_EQ(pool.thread_count(), 1U);
    EXPECT_EQ(pool.submit([] { return 1; }).get(), 1);
}

TEST(ThreadPool, FreshPoolIsIdleAndUnpaused)
{
    ThreadPool pool(3);
    EXPECT_FALSE(pool.is_paused());
    EXPECT_EQ(pool.task_counts(), (TaskCountSnapshot{0, 0, 0}));
}

TEST(ThreadPool, ResetChangesWorkerCount)
{
    ThreadPool pool(8);
    pool.reset(5);
    EXPECT_EQ(pool.thread_count(), 5U);
    EXPECT_EQ(count_unique_worker_ids(pool), 5U);
    pool.reset(5);
    EXPECT_EQ(pool.thread_count(), 5U);
    pool.reset(0);
    EXPECT_EQ(pool.thread_count(), 1U);
    pool.reset();
    EXPECT_EQ(pool.thread_count(), hardware_concurrency());
}

TEST(ThreadPool, ResetKeepsQueuedTasks)
{
    ThreadPool pool(1);
    Gate gate;
    std::atomic<int> counter{0};
    pool.push_task([&] { gate.wait(); });
    ASSERT_TRUE(eventually([&] { return pool.tasks_running() == 1; }));
    for (int i = 0; i < 10; ++i)
        pool.push_task([&] { ++counter; });
    std::thread opener([&] {
        std::this_thread::sleep_for(50ms);
        gate.open();
    });
    pool.reset(3);
    opener.join();
    pool.wait_for_tasks();
    EXPECT_EQ(counter.load(), 10);
    EXPECT_EQ(pool.thread_count(), 3U);
}

TEST(ThreadPool, ResetPreservesPauseState)
{
    ThreadPool pool(2);
    pool.set_paused(true);
    std::atomic<int> counter{0};
    for (int i = 0; i < 5; ++i)
        pool.push_task([&] { ++counter; });
    pool.reset(4);
    EXPECT_TRUE(pool.is_paused());
    std::this_thread::sleep_for(50ms);
    EXPECT_EQ(counter.load(), 0);
    EXPECT_EQ(pool.task_counts(), (TaskCountSnapshot{5, 0, 5}));
    pool.set_paused(false);
    pool.wait_for_tasks();
    EXPECT_EQ(counter.load(), 5);
}

TEST(ThreadPool, SubmissionsDuringResetSurvive)
{
    ThreadPool pool(2);
    std::atomic<int> counter{0};
    std::atomic<bool> stop{false};
    std::thread submitter([&] {
        for (int i = 0; i < 2000; ++i)
            pool.push_task([&] { ++counter; });
        stop = true;
    });
    while (!stop)
        pool.reset(3);
    submitter.join();
    pool.wait_for_tasks();
    EXPECT_EQ(counter.load(), 2000);
}

TEST(ThreadPool, WaitForTasksSquares)
{
    ThreadPool pool(5);
    int squares[100] = {};
    for (int i = 0; i < 100; ++i)
    {
        pool.push_task([&squares, i] {
            std::this_thread::sleep_for(1ms);
            squares[i] = i * i;
        });
    }
    pool.wait_for_tasks();
    EXPECT_EQ(squares[50], 2500);
    for (int i = 0; i < 100; ++i)
        EXPECT_EQ(squares[i], i * i);
}

TEST(ThreadPool, WaitOnIdlePoolReturnsImmediately)
{
    ThreadPool pool(2);
    const auto start = std::chrono::steady_clock::now();
    pool.wait_for_tasks();
    EXPECT_LT(std::chrono::steady_clock::now() - start, 100ms);
}

TEST(ThreadPool, PausedWaitOnlyWaitsForRunningTasks)
{
    ThreadPool pool(4);
    Gate gate;
    for (int i = 0; i < 4; ++i)
        pool.push_task([&] { gate.wait(); });
    ASSERT_TRUE(eventually([&] { return pool.tasks_running() == 4; }));
    pool.set_paused(true);
    for (int i = 0; i < 8; ++i)
        pool.push_task([] {});
    gate.open();
    pool.wait_for_tasks();
    EXPECT_EQ(pool.task_counts(), (TaskCountSnapshot{8, 0, 8}));
    pool.set_paused(false);
    pool.wait_for_tasks();
    EXPECT_EQ(pool.task_counts(), (TaskCountSnapshot{0, 0, 0}));
}

TEST(ThreadPool, MonitoringTimelineWithSleepingTasks)
{
    ThreadPool pool(4);
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 12; ++i)
        pool.push_task([] { std::this_thread::sleep_for(500ms); });
    const auto first = pool.task_counts();
    EXPECT_EQ(first.total, 12U);
    EXPECT_LE(first.running, 4U);
    EXPECT_GE(first.queued, 8U);
    std::this_thread::sleep_until(start + 750ms);
    EXPECT_EQ(pool.task_counts(), (TaskCountSnapshot{4, 4, 8}));
    std::this_thread::sleep_until(start + 1250ms);
    EXPECT_EQ(pool.task_counts(), (TaskCountSnapshot{0, 4, 4}));
    pool.wait_for_tasks();
    EXPECT_EQ(pool.task_counts(), (TaskCountSnapshot{0, 0, 0}));
}

TEST(ThreadPool, PauseLetsRunningTasksFinish)
{
    ThreadPool pool(4);
    Gate gate;
    std::atomic<int> completed{0};
    for (int i = 0; i < 8; ++i)
        pool.push_task([&] {
            gate.wait();
            ++completed;
        });
    ASSERT_TRUE(eventually([&] { return pool.tasks_running() == 4; }));
    pool.set_paused(true);
    EXPECT_TRUE(pool.is_paused());
    gate.open();
    pool.wait_for_tasks();
    std::this_thread::sleep_for(50ms);
    EXPECT_EQ(completed.load(), 4);
    EXPECT_EQ(pool.task_counts(), (TaskCountSnapshot{4, 0, 4}));

    for (int i = 0; i < 4; ++i)
        pool.push_task([&] { ++completed; });
    EXPECT_EQ(pool.task_counts(), (TaskCountSnapshot{8, 0, 8}));

    pool.set_paused(false);
    pool.wait_for_tasks();
    EXPECT_EQ(completed.load(), 12);
}

TEST(ThreadPool, PauseSafetyCountersMonotone)
{
    ThreadPool pool(3);
    Gate gate;
    for (int i = 0; i < 3; ++i)
        pool.push_task([&] { gate.wait(); });
    ASSERT_TRUE(eventually([&] { return pool.tasks_running() == 3; }));
    pool.set_paused(true);
    for (int i = 0; i < 20; ++i)
        pool.push_task([] {});
    std::thread opener([&] {
        std::this_thread::sleep_for(20ms);
        gate.open();
    });
    auto previous = pool.task_counts();
    for (int i = 0; i < 2000; ++i)
    {
        const auto now = pool.task_counts();
        EXPECT_LE(now.running, previous.running);
        EXPECT_GE(now.queued, previous.queued);
        previous = now;
    }
    opener.join();
    pool.set_paused(false);
    pool.wait_for_tasks();
}

TEST(ThreadPool, UnpauseRunsInFifoOrder)
{
    ThreadPool pool(1);
    pool.set_paused(true);
    std::vector<int> order;
    for (int i = 0; i < 50; ++i)
        pool.push_task([&order, i] { order.push_back(i); });
    pool.set_paused(false);
    pool.wait_for_tasks();
    ASSERT_EQ(order.size(), 50U);
    for (int i = 0; i < 50; ++i)
        EXPECT_EQ(order[static_cast<std::size_t>(i)], i);
}

TEST(ThreadPool, SingleWorkerStartsTasksInSubmissionOrder)
{
    std::mt19937 rng(3);
    for (int round = 0; round < 20; ++round)
    {
        ThreadPool pool(1);
        std::vector<int> started;
        std::vector<TaskFuture<int>> futures;
        const int n = std::uniform_int_distribution<int>(1, 200)(rng);
        for (int i = 0; i < n; ++i)
        {
            if (rng() % 2)
                pool.push_task([&started, i] { started.push_back(i); });
            else
                futures.push_back(pool.submit([&started, i] {
                    started.push_back(i);
                    return i;
                }));
        }
        pool.wait_for_tasks();
        ASSERT_EQ(started.size(), static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            ASSERT_EQ(started[static_cast<std::size_t>(i)], i);
    }
}

TEST(ThreadPool, DestructorRunsPendingTasks)
{
    std::atomic<int> counter{0};
    {
        ThreadPool pool(2);
        for (int i = 0; i < 10; ++i)
            pool.push_task([&] {
                std::this_thread::sleep_for(5ms);
                ++counter;
            });
    }
    EXPECT_EQ(counter.load(), 10);
}

TEST(ThreadPool, DestructorDiscardsQueuedTasksWhenPaused)
{
    std::atomic<int> ran{0};
    Gate gate;
    {
        ThreadPool pool(2);
        for (int i = 0; i < 2; ++i)
            pool.push_task([&] {
                gate.wait();
                ++ran;
            });
        ASSERT_TRUE(eventually([&] { return pool.tasks_running() == 2; }));
        pool.set_paused(true);
        for (int i = 0; i < 10; ++i)
            pool.push_task([&] { ++ran; });
        gate.open();
    }
    EXPECT_EQ(ran.load(), 2);
}

TEST(ThreadPool, DestroyingIdlePoolIsPrompt)
{
    const auto start = std::chrono::steady_clock::now();
    {
        ThreadPool pool(8);
    }
    EXPECT_LT(std::chrono::steady_clock::now() - start, 1s);
}

// Counts a task as discarded if it is destroyed without having run.
struct Tracker
{
    std::atomic<int>* ran;
    std::atomic<int>* discarded;
    std::shared_ptr<bool> did_run = std::make_shared<bool>(false);
    std::shared_ptr<int> owner = std::shared_ptr<int>(new int(0), [d = discarded, r = did_run](int* p) {
        if (!*r)
            ++*d;
        delete p;
    });

    void operator()()
    {
        *did_run = true;
        ++*ran;
    }
};

TEST(ThreadPool, ConservationAcrossPausedShutdown)
{
    std::mt19937 rng(5);
    for (int round = 0; round < 20; ++round)
    {
        std::atomic<int> ran{0};
        std::atomic<int> discarded{0};
        const int n = std::uniform_int_distribution<int>(1, 300)(rng);
        const int pause_at = std::uniform_int_distribution<int>(0, n)(rng);
        {
            ThreadPool pool(3);
            for (int i = 0; i < n; ++i)
            {
                if (i == pause_at)
                    pool.set_paused(true);
                pool.push_task(Tracker{&ran, &discarded});
            }
        }
        EXPECT_EQ(ran.load() + discarded.load(), n);
    }
}

TEST(ThreadPool, FailingPushTaskKeepsWorkerAlive)
{
    ThreadPool pool(1);
    std::atomic<int> errors{0};
    std::string message;
    pool.set_error_handler([&](std::exception_ptr e) {
        try
        {
            std::rethrow_exception(e);
        }
        catch (const std::exception& ex)
        {
            message = ex.what();
        }
        ++errors;
    });
    pool.push_task([] { throw std::runtime_error("boom"); });
    std::atomic<bool> later{false};
    pool.push_task([&] { later = true; });
    pool.wait_for_tasks();
    EXPECT_EQ(errors.load(), 1);
    EXPECT_EQ(message, "boom");
    EXPECT_TRUE(later.load());
    EXPECT_EQ(pool.thread_count(), 1U);
}

TEST(ThreadPool, FailingPushTaskWithoutHandlerIsSwallowed)
{
    ThreadPool pool(2);
    for (int i = 0; i < 10; ++i)
        pool.push_task([] { throw 1; });
    pool.wait_for_tasks();
    EXPECT_EQ(pool.submit([] { return 7; }).get(), 7);
}

TEST(ThreadPool, CallsFromWorkerAreRejected)
{
    ThreadPool pool(1);
    EXPECT_THROW(pool.submit([&] { pool.wait_for_tasks(); }).get(), std::logic_error);
    EXPECT_THROW(pool.submit([&] { pool.reset(2); }).get(), std::logic_error);
    EXPECT_TRUE(pool.submit([&] { return pool.is_worker_thread(); }).get());
    EXPECT_FALSE(pool.is_worker_thread());
}

TEST(ThreadPool, CounterIdentityUnderConcurrentSubmission)
{
    ThreadPool pool(4);
    std::atomic<bool> done{false};
    std::atomic<int> violations{0};
    std::thread sampler([&] {
        while (!done)
        {
            const auto c = pool.task_counts();
            if (c.total != c.queued + c.running || c.running > 4)
                ++violations;
        }
    });
    std::vector<std::thread> submitters;
    for (int t = 0; t < 3; ++t)
        submitters.emplace_back([&] {
            for (int i = 0; i < 1000; ++i)
                pool.push_task([] {});
        });
    for (auto& s : submitters)
        s.join();
    pool.wait_for_tasks();
    done = true;
    sampler.join();
    EXPECT_EQ(violations.load(), 0);
}

TEST(Version, HasNumberAndDate)
{
    EXPECT_TRUE(std::regex_match(std::string(version), std::regex(R"(v\d+\.\d+\.\d+ \(\d{4}-\d{2}-\d{2}\))")));
    EXPECT_EQ(version, TASKWELL_VERSION);
}

} // namespace
} // namespace taskwell
