#include "regroup/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace regroup {

int resolve_thread_count(int requested)
{
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(size_t count, int threads, const std::function<void(size_t)> &fn)
{
    const int workers = static_cast<int>(
        std::min(static_cast<size_t>(resolve_thread_count(threads)), count));
    if (workers <= 1 || count < 2) {
        for (size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                fn(i);
        });
    }
    for (auto &t : pool)
        t.join();
}

} // namespace regroup
