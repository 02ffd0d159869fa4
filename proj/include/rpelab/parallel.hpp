// Copyright 2026 The rpelab Authors
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

#ifndef RPELAB_PARALLEL_HPP
#define RPELAB_PARALLEL_HPP

#include <functional>

namespace rpelab {

// Worker count: RPE_LAB_THREADS if set (minimum 1), else the hardware
// concurrency.
int worker_count();

// Runs fn(i) for i in [0, n); splits the range into contiguous blocks, one
// per worker. fn must be safe to call concurrently for distinct i.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace rpelab

#endif
