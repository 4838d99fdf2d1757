#include "corrlab/util.hpp"

namespace corrlab {

namespace detail {
std::atomic<int>& thread_budget() {
    static std::atomic<int> budget{1};
    return budget;
}
}  // namespace detail

void set_thread_count(int k) {
    if (k < 1) k = 1;
    detail::thread_budget().store(k, std::memory_order_relaxed);
}

int thread_count() { return detail::thread_budget().load(std::memory_order_relaxed); }

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace corrlab
