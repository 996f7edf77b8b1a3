#include "hgr/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace hgr {

std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool, std::size_t count,
                                                    std::mt19937_64& gen) {
    if (count > pool.size()) throw std::invalid_argument("sample larger than pool");
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_below(gen, pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace hgr
