// Copyright 2026 The mbdopt Authors
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

#ifndef MBD_PARALLEL_H_
#define MBD_PARALLEL_H_

#include <functional>

namespace mbd {

// 0 -> hardware concurrency, otherwise the requested count (at least 1)
int resolve_workers(int requested);

// Runs body(i) for i in [0, n) on up to n_workers threads. Each index is
// processed exactly once; bodies must write only to their own slots, which
// keeps results independent of the partition.
void parallel_for(int n, int n_workers, const std::function<void(int)>& body);

}  // namespace mbd

#endif  // MBD_PARALLEL_H_
