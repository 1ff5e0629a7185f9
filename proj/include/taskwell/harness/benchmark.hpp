#pragma once

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "taskwell/harness/config.hpp"
#include "taskwell/harness/stats.hpp"
#include "taskwell/harness/workload.hpp"
#include "taskwell/stopwatch.hpp"
#include "taskwell/synced_stream.hpp"
#include "taskwell/thread_pool.hpp"

namespace taskwell::harness {

/// Timing of one configuration; task_count 0 is the single-threaded baseline.
struct TimingRecord
{
    std::size_t task_count = 0;
    double mean_ms = 0.0;
    double stddev_ms = 0.0;
};

struct BenchmarkReport
{
    std::size_t vector_count = 0;
    std::vector<TimingRecord> records;  // baseline first
    double best_speedup = 0.0;
    std::size_t best_task_count = 0;

    [[nodiscard]] const TimingRecord& baseline() const { return records.front(); }
};

/// {T/4, T/2, T, 2T, 4T}, each at least 1, duplicates dropped, ascending.
[[nodiscard]] inline std::vector<std::size_t> task_count_schedule(std::size_t threads)
{
    threads = std::max<std::size_t>(threads, 1);
    std::vector<std::size_t> counts;
    for (const std::size_t c : {threads / 4, threads / 2, threads, threads * 2, threads * 4})
    {
        const std::size_t n = std::max<std::size_t>(c, 1);
        if (std::find(counts.begin(), counts.end(), n) == counts.end())
            counts.push_back(n);
    }
    return counts;
}

/// Builds a report from a baseline followed by multithreaded records; the
/// best configuration is the one with the smallest mean.
[[nodiscard]] inline BenchmarkReport make_report(std::size_t vector_count, std::vector<TimingRecord> records)
{
    if (records.size() < 2 || records.front().task_count != 0)
        throw std::invalid_argument("make_report: need a baseline followed by at least one multithreaded record");
    BenchmarkReport report;
    report.vector_count = vector_count;
    report.records = std::move(records);
    const auto best = std::min_element(report.records.begin() + 1, report.records.end(),
                                       [](const TimingRecord& a, const TimingRecord& b) { return a.mean_ms < b.mean_ms; });
    report.best_task_count = best->task_count;
    report.best_speedup = report.baseline().mean_ms / best->mean_ms;
    return report;
}

namespace detail {

[[nodiscard]] inline std::string fixed(double value, int width, int precision)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << std::setw(width) << value;
    return s.str();
}

template <typename Run>
[[nodiscard]] SampleStats time_repeated(Run&& run, std::size_t repeats)
{
    run();  // warm-up, untimed
    std::vector<double> samples;
    samples.reserve(repeats);
    Stopwatch watch;
    for (std::size_t i = 0; i < repeats; ++i)
    {
        watch.start();
        run();
        watch.stop();
        samples.push_back(watch.ms());
    }
    return summarize(samples);
}

} // namespace detail

/// Calibrates the vector count, then times the single-threaded fill and a
/// parallelize_loop() fill for every task count in the schedule.
inline BenchmarkReport run_benchmark(ThreadPool& pool, const HarnessConfig& config, SyncedStream& out)
{
    const std::size_t threads = pool.thread_count();
    const std::string rule(22, '=');
    out.println();
    out.println(rule);
    out.println("Performing benchmarks:");
    out.println(rule);
    out.println("Using ", threads, " threads.");
    out.println("Each test will be repeated ", config.repeats, " times to collect reliable statistics.");
    out.println();

    const std::size_t count = calibrate_workload(config.target_ms, config.vector_len, config.seed);
    out.println("Generating ", count, " random vectors with ", config.vector_len, " elements each:");
    VectorSet vectors = make_vectors(count, config.vector_len);

    std::vector<TimingRecord> records;
    const SampleStats serial = detail::time_repeated(
        [&] { fill_vectors(vectors, config.seed, 0, vectors.size()); }, config.repeats);
    records.push_back({0, serial.mean, serial.stddev});
    out.println("Single-threaded, mean execution time was ", detail::fixed(serial.mean, 6, 1),
                " ms with standard deviation ", detail::fixed(serial.stddev, 4, 1), " ms.");

    for (const std::size_t tasks : task_count_schedule(threads))
    {
        const SampleStats stats = detail::time_repeated(
            [&] {
                pool.parallelize_loop(
                        std::size_t{0}, vectors.size(),
                        [&](std::size_t a, std::size_t b) { fill_vectors(vectors, config.seed, a, b); }, tasks)
                    .wait();
            },
            config.repeats);
        records.push_back({tasks, stats.mean, stats.stddev});
        out.println("With ", detail::fixed(static_cast<double>(tasks), 4, 0), " tasks, mean execution time was ",
                    detail::fixed(stats.mean, 6, 1), " ms with standard deviation ", detail::fixed(stats.stddev, 4, 1),
                    " ms.");
    }

    BenchmarkReport report = make_report(count, std::move(records));
    out.println("Maximum speedup obtained by multithreading vs. single-threading: ",
                detail::fixed(report.best_speedup, 0, 1), "x, using ", report.best_task_count, " tasks.");
    if (threads >= 24 && report.best_speedup < 8.0)
        out.println("Warning: speedup below 8x on a host with ", threads, " threads.");

    const std::string done = "Thread pool performance test completed!";
    out.println();
    out.println(std::string(done.size(), '+'));
    out.println(done);
    out.println(std::string(done.size(), '+'));
    return report;
}

} // namespace taskwell::harness
