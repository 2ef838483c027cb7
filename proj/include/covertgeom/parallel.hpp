/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <functional>

namespace covertgeom {

/// Worker count: explicit setting, else COVERTGEOM_THREADS, else hardware.
int thread_count();
/// 0 restores the default lookup.
void set_thread_count(int threads);

/// Calls body(i) for i in [0, count). Items are claimed dynamically, so the
/// body must write only to slot i of its output.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace covertgeom
