#pragma once

#include <charconv>
#include <concepts>
#include <iostream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>

namespace taskwell {

namespace detail {

template <typename T>
void append_rendered(std::string& out, const T& value)
{
    if constexpr (std::is_same_v<T, char>)
    {
        out.push_back(value);
    }
    else if constexpr (std::is_same_v<T, bool>)
    {
        out.append(value ? "true" : "false");
    }
    else if constexpr (std::is_arithmetic_v<T>)
    {
        // Shortest round-trip form for reals, plain decimal for integers.
        char buffer[64];
        const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
        if (ec != std::errc())
            throw std::system_error(std::make_error_code(ec), "rendering number");
        out.append(buffer, end);
    }
    else if constexpr (std::is_convertible_v<const T&, std::string_view>)
    {
        out.append(std::string_view(value));
    }
    else
    {
        std::ostringstream stream;
        stream << value;
        out.append(stream.str());
    }
}

} // namespace detail

/// Renders its arguments in order into one string.
template <typename... Ts>
[[nodiscard]] std::string render(const Ts&... items)
{
    std::string text;
    (detail::append_rendered(text, items), ...);
    return text;
}

/// Serializes whole print calls from many threads onto one output stream.
///
/// Each print()/println() is rendered first and then written with a single
/// locked write, so lines from different threads never interleave. The
/// target stream must outlive any thread pool whose tasks print through it,
/// i.e. construct the SyncedStream before the pool.
class SyncedStream
{
public:
    explicit SyncedStream(std::ostream& out = std::cout) : out_(out) {}

    SyncedStream(const SyncedStream&) = delete;
    SyncedStream& operator=(const SyncedStream&) = delete;

    template <typename... Ts>
    void print(const Ts&... items)
    {
        write(render(items...));
    }

    template <typename... Ts>
    void println(const Ts&... items)
    {
        write(render(items..., '\n'));
    }

    void flush()
    {
        std::lock_guard lock(mutex_);
        out_.flush();
    }

private:
    void write(const std::string& text)
    {
        std::lock_guard lock(mutex_);
        out_.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out_)
            throw std::ios_base::failure("synced stream write failed");
    }

    std::ostream& out_;
    std::mutex mutex_;
};

} // namespace taskwell
