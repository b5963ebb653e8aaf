/*
 * Copyright 2026 pmdskit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace pmds {

inline unsigned resolve_threads(unsigned requested) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (requested == 0) return 1;
    return std::min(requested, hw);
}

/// Run fn(begin, end) over a contiguous index range split across `threads`
/// workers. Workers share no mutable state; callers merge results from
/// per-chunk slots, so the outcome is independent of the thread count.
template <class Fn>
void for_index_chunks(std::size_t count, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || count < 2 * threads) {
        fn(std::size_t{0}, count);
        return;
    }
    const std::size_t chunk = (count + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min<std::size_t>(count, t * chunk);
        const std::size_t end = std::min<std::size_t>(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace pmds
