#include "randq/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace randq {

int worker_count_from_env()
{
    const char* env = std::getenv("RANDQ_WORKERS");
    if (env == nullptr) return 1;
    try {
        const int n = std::stoi(env);
        return n >= 1 ? n : 1;
    } catch (const std::exception&) {
        return 1;
    }
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task)
{
    const std::size_t threads = std::min<std::size_t>(std::max(workers, 1), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace randq
