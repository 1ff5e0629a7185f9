#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>

#include "taskwell/thread_pool.hpp"

namespace taskwell::harness {

struct HarnessConfig
{
    std::optional<std::size_t> threads;  // hardware concurrency when unset
    std::size_t repeats = 20;
    double target_ms = 50.0;
    std::size_t vector_len = 500;
    std::uint64_t seed = 42;
    std::filesystem::path log_dir = ".";
    bool skip_benchmark = false;
    bool only_benchmark = false;

    [[nodiscard]] std::size_t resolved_threads() const { return threads.value_or(hardware_concurrency()); }

    void validate() const
    {
        if (threads && *threads == 0)
            throw std::invalid_argument("threads must be positive");
        if (repeats < 2)
            throw std::invalid_argument("repeats must be at least 2");
        if (!(target_ms > 0.0))
            throw std::invalid_argument("target_ms must be positive");
        if (vector_len == 0)
            throw std::invalid_argument("vector_len must be positive");
        if (skip_benchmark && only_benchmark)
            throw std::invalid_argument("skip_benchmark and only_benchmark are mutually exclusive");
    }
};

} // namespace taskwell::harness
