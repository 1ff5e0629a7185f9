#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <streambuf>
#include <string>
#include <system_error>

namespace taskwell::harness {

/// Stream buffer that forwards every character to two targets.
class TeeBuffer : public std::streambuf
{
public:
    TeeBuffer(std::streambuf* first, std::streambuf* second) : first_(first), second_(second) {}

protected:
    int_type overflow(int_type ch) override
    {
        if (traits_type::eq_int_type(ch, traits_type::eof()))
            return traits_type::not_eof(ch);
        const auto c = traits_type::to_char_type(ch);
        const bool ok = put(first_, c) && put(second_, c);
        return ok ? ch : traits_type::eof();
    }

    std::streamsize xsputn(const char* s, std::streamsize n) override
    {
        const bool ok = (!first_ || first_->sputn(s, n) == n) && (!second_ || second_->sputn(s, n) == n);
        return ok ? n : 0;
    }

    int sync() override
    {
        const int a = first_ ? first_->pubsync() : 0;
        const int b = second_ ? second_->pubsync() : 0;
        return (a == 0 && b == 0) ? 0 : -1;
    }

private:
    static bool put(std::streambuf* buf, char c)
    {
        return !buf || !traits_type::eq_int_type(buf->sputc(c), traits_type::eof());
    }

    std::streambuf* first_;
    std::streambuf* second_;
};

/// "YYYY-MM-DD_HH.MM.SS" in local time.
[[nodiscard]] inline std::string log_timestamp(std::chrono::system_clock::time_point when)
{
    const std::time_t t = std::chrono::system_clock::to_time_t(when);
    std::tm local{};
    localtime_r(&t, &local);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%d_%H.%M.%S", &local);
    return buffer;
}

/// First free name of the form taskwell_test-<timestamp>[-N].log in `dir`.
[[nodiscard]] inline std::filesystem::path log_file_path(const std::filesystem::path& dir, const std::string& timestamp)
{
    const std::string stem = "taskwell_test-" + timestamp;
    std::filesystem::path candidate = dir / (stem + ".log");
    for (int suffix = 1; std::filesystem::exists(candidate); ++suffix)
        candidate = dir / (stem + "-" + std::to_string(suffix) + ".log");
    return candidate;
}

/// Console output mirrored byte-for-byte into a timestamped log file.
///
/// If the directory cannot be created or the file cannot be opened, a
/// warning goes to stderr and stream() writes to the console only.
class HarnessLog
{
public:
    HarnessLog(const std::filesystem::path& dir, std::chrono::system_clock::time_point started,
               std::ostream& console = std::cout)
        : tee_(console.rdbuf(), nullptr), out_(&tee_)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        std::filesystem::path candidate = log_file_path(dir, log_timestamp(started));
        file_.open(candidate, std::ios::out | std::ios::binary);
        if (file_)
        {
            path_ = std::move(candidate);
            tee_ = TeeBuffer(console.rdbuf(), file_.rdbuf());
        }
        else
        {
            std::cerr << "Warning: could not open a log file in " << dir << "; logging to the console only.\n";
        }
    }

    HarnessLog(const HarnessLog&) = delete;
    HarnessLog& operator=(const HarnessLog&) = delete;

    ~HarnessLog() { out_.flush(); }

    [[nodiscard]] std::ostream& stream() noexcept { return out_; }
    [[nodiscard]] const std::optional<std::filesystem::path>& path() const noexcept { return path_; }

private:
    std::ofstream file_;
    std::optional<std::filesystem::path> path_;
    TeeBuffer tee_;
    std::ostream out_;
};

} // namespace taskwell::harness
