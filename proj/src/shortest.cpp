#include "formula_forge/shortest.hpp"

#include <algorithm>
#include <mutex>

#include "formula_forge/errors.hpp"

namespace ff {

namespace {

constexpr std::uint64_t kMaxShortestN = std::uint64_t{1} << 30;

std::uint64_t checked_n(std::int64_t n) {
    if (n <= 0) throw DomainError("n must be a positive integer, got " + std::to_string(n));
    if (static_cast<std::uint64_t>(n) > kMaxShortestN)
        throw SizeGuard("shortest-formula table is limited to n <= 2^30");
    return static_cast<std::uint64_t>(n);
}

}  // namespace

void ShortestTable::fill(std::uint64_t n) {
    {
        std::shared_lock lock(mutex_);
        if (n < size_.size()) return;
    }
    std::unique_lock lock(mutex_);
    size_.reserve(n + 1);
    choice_.reserve(n + 1);
    for (std::uint64_t m = size_.size(); m <= n; ++m) {
        if (m == 1) {
            size_.push_back(1);
            choice_.push_back({Gate::Add, 0, 0});
            continue;
        }
        auto split = kernels::additive_min(size_, m, exec_);
        auto best = split.size;
        Choice choice{Gate::Add, split.index, static_cast<std::uint32_t>(m - split.index)};
        // d and m/d cost the same; the smaller one comes first.
        for (std::uint64_t d = 2; d * d <= m; ++d) {
            if (m % d != 0) continue;
            auto cand = 1 + size_[d] + size_[m / d];
            if (cand < best) {
                best = cand;
                choice = {Gate::Mul, static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(m / d)};
            }
        }
        for (unsigned i = 2; i <= floor_log2(m); ++i) {
            auto b = exact_root(m, i);
            if (!b) continue;
            auto cand = 1 + size_[*b] + size_[i];
            if (cand < best) {
                best = cand;
                choice = {Gate::Pow, static_cast<std::uint32_t>(*b), i};
            }
        }
        size_.push_back(best);
        choice_.push_back(choice);
    }
}

Tree ShortestTable::witness_locked(std::uint64_t n) const {
    if (n == 1) return Tree::leaf();
    const auto& c = choice_[n];
    return Tree::node(c.gate, witness_locked(c.left), witness_locked(c.right));
}

ShortestEntry ShortestTable::get(std::int64_t n) {
    auto m = checked_n(n);
    fill(m);
    std::shared_lock lock(mutex_);
    return {m, size_[m], witness_locked(m)};
}

std::uint64_t ShortestTable::size_of(std::int64_t n) {
    auto m = checked_n(n);
    fill(m);
    std::shared_lock lock(mutex_);
    return size_[m];
}

std::vector<std::uint32_t> ShortestTable::sizes(std::uint64_t n) {
    fill(n);
    std::shared_lock lock(mutex_);
    return {size_.begin(), size_.begin() + static_cast<std::ptrdiff_t>(n + 1)};
}

ShortestEntry shortest(std::int64_t n) {
    static ShortestTable table;
    return table.get(n);
}

}  // namespace ff
