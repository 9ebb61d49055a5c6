// Copyright 2026 The svnkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace svnkit {

// Resolves a thread-count request: n > 0 is taken as-is, n <= 0 falls back to
// the SVNKIT_THREADS environment variable, then to the hardware count.
int resolve_threads(int requested);

// Runs fn over contiguous index chunks [chunk_begin, chunk_end) on up to
// `threads` workers. Callers write results into per-index slots, so the
// outcome is independent of the thread count.
void parallel_for(std::size_t begin, std::size_t end, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace svnkit
