// SPDX-License-Identifier: Apache-2.0
//
// agingmimo: spectral efficiency and pilot spacing for aging MIMO uplinks
// Copyright (C) 2026 The agingmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace agingmimo {

/// Environment variable naming the default worker count.
inline constexpr const char* kThreadsEnvVar = "AGINGMIMO_THREADS";

/// Explicit request, else $AGINGMIMO_THREADS, else hardware concurrency (min 1).
int resolve_thread_count(std::optional<int> requested = std::nullopt);

/// Runs body(i) for i in [0, n) on up to `threads` workers. Work items are
/// handed out in index order; the exception of the lowest failing index is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

} // namespace agingmimo
