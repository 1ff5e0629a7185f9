#pragma once

#include <string_view>

#define TASKWELL_VERSION_MAJOR 1
#define TASKWELL_VERSION_MINOR 0
#define TASKWELL_VERSION_PATCH 0

// "vMAJOR.MINOR.PATCH (YYYY-MM-DD)"
#define TASKWELL_VERSION "v1.0.0 (2026-10-16)"

namespace taskwell {

inline constexpr std::string_view version = TASKWELL_VERSION;

} // namespace taskwell
