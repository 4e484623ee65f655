/*
 * Copyright 2026 The llflut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <functional>

namespace llflut {

// Worker count used by parallel_for. Defaults to the number of logical cores.
int thread_count();
// n <= 0 restores the default.
void set_thread_count(int n);

// Runs body(i) for every i in [begin, end), splitting the range into
// contiguous chunks across thread_count() workers. Each index is visited by
// exactly one worker, so bodies that only write to index-owned storage give
// results independent of the worker count.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace llflut
