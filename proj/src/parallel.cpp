#include "acmine/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace acmine {

int chunk_count(std::size_t count, int workers) {
    if (workers < 1) workers = 1;
    return static_cast<int>(std::min<std::size_t>(workers, count == 0 ? 1 : count));
}

void parallel_chunks(std::size_t count, int workers,
                     const std::function<void(int, std::size_t, std::size_t)>& fn) {
    int w = chunk_count(count, workers);
    if (w <= 1) {
        fn(0, 0, count);
        return;
    }
    std::size_t chunk = (count + w - 1) / w;
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (int i = 0; i < w; ++i) {
        std::size_t b = static_cast<std::size_t>(i) * chunk;
        std::size_t e = std::min(count, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, i, b, e);
    }
    for (auto& t : pool) t.join();
}

}  // namespace acmine
