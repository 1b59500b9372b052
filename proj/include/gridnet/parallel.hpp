#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gridnet {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs work(begin, end) over [0, n) split into fixed-size chunks handed out
// dynamically. Partial results must be merged by the caller in an
// order-insensitive way (integer sums, maxima, or writes to disjoint slots).
inline void parallel_chunks(std::int64_t n, int threads, std::int64_t chunk_size,
                            const std::function<void(std::int64_t, std::int64_t)>& work) {
    threads = resolve_threads(threads);
    if (n <= 0) return;
    if (threads == 1 || n <= chunk_size) {
        work(0, n);
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto runner = [&] {
        for (;;) {
            const std::int64_t begin = next.fetch_add(chunk_size);
            if (begin >= n) return;
            work(begin, std::min(begin + chunk_size, n));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(runner);
    for (auto& t : pool) t.join();
}

// Same chunking, but commit(chunk_result) runs strictly in chunk order, one
// at a time. Floating-point accumulation done inside commit is therefore
// identical for any thread count or schedule. Chunk size is fixed by the
// caller and must not depend on the thread count. Workers reuse their
// scratch object across chunks, so work() must reinitialize it each call.
template <typename Scratch>
void parallel_ordered_reduce(std::int64_t n, int threads, std::int64_t chunk_size,
                             const std::function<void(std::int64_t, std::int64_t, Scratch&)>& work,
                             const std::function<void(Scratch&)>& commit,
                             const std::function<Scratch()>& make_scratch) {
    threads = resolve_threads(threads);
    if (n <= 0) return;
    const std::int64_t num_chunks = (n + chunk_size - 1) / chunk_size;
    if (threads == 1 || num_chunks == 1) {
        Scratch scratch = make_scratch();
        for (std::int64_t c = 0; c < num_chunks; ++c) {
            work(c * chunk_size, std::min((c + 1) * chunk_size, n), scratch);
            commit(scratch);
        }
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::mutex commit_mutex;
    std::condition_variable commit_cv;
    std::int64_t next_commit = 0;

    auto runner = [&] {
        Scratch scratch = make_scratch();
        for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= num_chunks) return;
            work(c * chunk_size, std::min((c + 1) * chunk_size, n), scratch);
            std::unique_lock lock(commit_mutex);
            commit_cv.wait(lock, [&] { return next_commit == c; });
            commit(scratch);
            ++next_commit;
            commit_cv.notify_all();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(runner);
    for (auto& t : pool) t.join();
}

}  // namespace gridnet
