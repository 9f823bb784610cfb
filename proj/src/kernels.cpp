#include "formula_forge/kernels.hpp"

#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ff::kernels {

namespace {
// Below this the fork/join costs more than the loop.
constexpr std::uint64_t kParallelThreshold = 512;
}  // namespace

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

BigInt convolve_serial(std::span<const BigInt> totals, std::uint64_t n) {
    BigInt acc = 0;
    for (std::uint64_t i = 1; i < n; ++i) acc += totals[i] * totals[n - i];
    return acc;
}

BigInt convolve_parallel(std::span<const BigInt> totals, std::uint64_t n) {
    if (n < 2) return 0;
    // Pairs (i, n-i) and (n-i, i) contribute equally.
    const auto half = static_cast<std::int64_t>((n - 1) / 2);
    BigInt acc = 0;
#pragma omp parallel if (n >= kParallelThreshold)
    {
        BigInt local = 0;
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 1; i <= half; ++i) local += totals[i] * totals[n - i];
#pragma omp critical(ff_convolve)
        acc += local;
    }
    acc *= 2;
    if (n % 2 == 0) acc += totals[n / 2] * totals[n / 2];
    return acc;
}

BigInt convolve(std::span<const BigInt> totals, std::uint64_t n, Exec exec) {
    return exec == Exec::Parallel ? convolve_parallel(totals, n) : convolve_serial(totals, n);
}

Split additive_min_serial(std::span<const std::uint32_t> sizes, std::uint64_t n) {
    Split best{std::numeric_limits<std::uint32_t>::max(), 0};
    for (std::uint64_t i = 1; i < n; ++i) {
        auto s = 1 + sizes[i] + sizes[n - i];
        if (s < best.size) best = {s, static_cast<std::uint32_t>(i)};
    }
    return best;
}

Split additive_min_parallel(std::span<const std::uint32_t> sizes, std::uint64_t n) {
    // Packing (size, index) into one word makes the lexicographic minimum a
    // plain min-reduction. Only i <= n/2 is scanned: the split i and n-i have
    // equal cost and the smaller index wins.
    const auto half = static_cast<std::int64_t>(n / 2);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel for reduction(min : best) schedule(static) if (n >= kParallelThreshold)
    for (std::int64_t i = 1; i <= half; ++i) {
        std::uint64_t s = 1u + sizes[i] + sizes[n - i];
        std::uint64_t key = (s << 32) | static_cast<std::uint64_t>(i);
        if (key < best) best = key;
    }
    if (half < 1) return {std::numeric_limits<std::uint32_t>::max(), 0};
    return {static_cast<std::uint32_t>(best >> 32), static_cast<std::uint32_t>(best & 0xffffffffu)};
}

Split additive_min(std::span<const std::uint32_t> sizes, std::uint64_t n, Exec exec) {
    return exec == Exec::Parallel ? additive_min_parallel(sizes, n) : additive_min_serial(sizes, n);
}

}  // namespace ff::kernels
