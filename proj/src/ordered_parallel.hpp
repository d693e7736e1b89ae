// Copyright 2026 the hetnet-ase authors
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

// Index-parallel loop whose results are published strictly in index order.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "hetnet/error.hpp"

namespace hetnet::detail {

/// Rethrows `error` as the same library error type with `context` prepended.
[[noreturn]] inline void rethrow_with_context(const std::exception_ptr& error, const std::string& context)
{
    try {
        std::rethrow_exception(error);
    } catch (const DomainError& e) {
        throw DomainError(context + ": " + e.what());
    } catch (const NonConvergence& e) {
        throw NonConvergence(context + ": " + e.what());
    } catch (const BadBracket& e) {
        throw BadBracket(context + ": " + e.what());
    } catch (const EmptyWindow& e) {
        throw EmptyWindow(context + ": " + e.what());
    }
}

/// out[i] = compute(i) for i < out.size(). emit(i) runs under a lock, in
/// increasing i, once out[0..i] are all done. On failure the lowest failing
/// index is reported through describe(i); no later index is emitted.
template <class T, class Compute, class Emit, class Describe>
void ordered_parallel(std::vector<T>& out, unsigned threads, Compute compute, Emit emit, Describe describe)
{
    const std::size_t n = out.size();
    std::vector<char> done(n, 0);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex lock;
    std::size_t emitted = 0;
    std::size_t failed_at = n;
    std::exception_ptr failure;

    auto work = [&] {
        for (;;) {
            if (stop.load(std::memory_order_relaxed)) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[i] = compute(i);
            } catch (...) {
                std::lock_guard<std::mutex> guard(lock);
                if (i < failed_at) {
                    failed_at = i;
                    failure = std::current_exception();
                }
                stop.store(true);
                return;
            }
            std::lock_guard<std::mutex> guard(lock);
            done[i] = 1;
            while (emitted < n && emitted < failed_at && done[emitted]) emit(emitted++);
        }
    };

    const unsigned workers = std::max(1u, static_cast<unsigned>(std::min<std::size_t>(threads, n)));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) rethrow_with_context(failure, describe(failed_at));
}

} // namespace hetnet::detail
