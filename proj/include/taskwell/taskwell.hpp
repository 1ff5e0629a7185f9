#pragma once

#include "taskwell/blocks.hpp"
#include "taskwell/stopwatch.hpp"
#include "taskwell/synced_stream.hpp"
#include "taskwell/task_future.hpp"
#include "taskwell/thread_pool.hpp"
#include "taskwell/version.hpp"
