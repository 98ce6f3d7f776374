// Copyright 2026 The bandcodec Authors
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

#ifndef BANDCODEC_PARALLEL_HPP
#define BANDCODEC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace bandcodec {

/// Caps worker threads used by per-band loops. 0 means auto (hardware
/// concurrency). The CLI seeds this from BANDCODEC_THREADS.
void set_max_threads(int n);
int max_threads();

/// Runs fn(0..count-1) across at most max_threads() workers. Tasks write to
/// disjoint indexed slots, so results are deterministic regardless of the
/// worker count. The first exception thrown by a task is rethrown.
void parallel_for(size_t count, const std::function<void(size_t)>& fn);

}  // namespace bandcodec

#endif  // BANDCODEC_PARALLEL_HPP
