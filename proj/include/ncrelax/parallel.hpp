// Copyright 2026 The ncrelax Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace ncr {

/// Worker count used by parallel loops. Defaults to NCRELAX_THREADS if set,
/// otherwise 1.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Run body(i) for i in [0, n) across the configured workers. Each index is
/// visited exactly once; callers write results by index so the outcome does
/// not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ncr
