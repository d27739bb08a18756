// Copyright 2026 The gbsgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace gbsgraph::parallel {

/// Caps the worker threads used by library kernels. 0 restores the default
/// (hardware concurrency). Results never depend on this value.
void set_max_workers(std::size_t workers);
std::size_t max_workers();

/// Runs body(i) for every i in [0, count). Calls may run concurrently and in
/// any order; callers write results into per-index slots and reduce them in
/// index order afterwards. The exception thrown for the lowest index is
/// rethrown after all workers stop.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gbsgraph::parallel
