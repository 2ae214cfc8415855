#include "cavitysim/threading.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cavitysim {

namespace {
std::atomic<int> g_threads{1};
} // namespace

void set_worker_threads(int n) { g_threads.store(n < 1 ? 1 : n); }

int worker_threads() { return g_threads.load(); }

void parallel_for(int count, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_threads(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace cavitysim
