#include "trigprec/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace trigprec {

std::size_t worker_count()
{
    if (const char* env = std::getenv("TRIGPREC_WORKERS")) {
        try {
            const long value = std::stol(env);
            if (value >= 1) return static_cast<std::size_t>(value);
        } catch (const std::exception&) {
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, std::size_t workers)
{
    if (count == 0) return;
    if (workers == 0) workers = worker_count();
    workers = std::min(workers, count);

    std::vector<std::exception_ptr> errors(count);
    auto run = [&](std::size_t i) {
        try {
            body(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) run(i);
            });
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace trigprec
